//! Exact game values by full minimax over available-vertex sets.
//!
//! With the graph and spec fixed, a position is determined by the set of
//! vertices still available, so that set (one `u64`) is the memo key.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{GameSpec, GameState, Move, Player};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_SOLVE_CAP: usize = 22;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest vertex count accepted.
    pub cap: usize,
    /// Memoize on the available set. Disabling it is only useful for
    /// cross-checking on tiny graphs.
    pub memo: bool,
    /// Worker threads for the root split; 1 solves serially.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { cap: DEFAULT_SOLVE_CAP, memo: true, jobs: 1 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub states_expanded: u64,
    pub memo_hits: u64,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub value: usize,
    pub vertices_taken: usize,
    pub perfect: bool,
    #[serde(rename = "pv")]
    pub principal_variation: Vec<Move>,
    pub stats: SearchStats,
}

/// Memoized minimax for one (graph, spec) pair.
#[derive(Clone)]
pub struct Solver {
    graph: Arc<Graph>,
    spec: GameSpec,
    use_memo: bool,
    memo: HashMap<u64, u8>,
    stats: SearchStats,
}

impl Solver {
    pub fn new(graph: impl Into<Arc<Graph>>, spec: GameSpec) -> Self {
        Solver { graph: graph.into(), spec, use_memo: true, memo: HashMap::new(), stats: SearchStats::default() }
    }

    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    /// Number of further moves under optimal play from `avail`.
    pub fn value(&mut self, avail: VertexSet) -> usize {
        self.eval(avail) as usize
    }

    fn eval(&mut self, avail: VertexSet) -> u8 {
        if self.use_memo {
            if let Some(&v) = self.memo.get(&avail.0) {
                self.stats.memo_hits += 1;
                return v;
            }
        }
        self.stats.states_expanded += 1;
        let inits = self.spec.pattern.initiations(&self.graph, avail);
        let mut best: Option<u8> = None;
        for v in inits {
            let val = self.eval_initiation(avail, v);
            best = Some(match (best, self.spec.initiator) {
                (None, _) => val,
                (Some(b), Player::Max) => b.max(val),
                (Some(b), Player::Min) => b.min(val),
            });
        }
        let result = best.unwrap_or(0);
        if self.use_memo {
            self.memo.insert(avail.0, result);
        }
        result
    }

    /// Outcome of initiating at `v`, with the responder choosing optimally.
    fn eval_initiation(&mut self, avail: VertexSet, v: usize) -> u8 {
        let mut images = Vec::new();
        let graph = Arc::clone(&self.graph);
        self.spec.pattern.for_each_response(&graph, avail, v, |img| images.push(img));
        let responder = self.spec.responder();
        let outcomes = images.into_iter().map(|img| 1 + self.eval(avail - img));
        match responder {
            Player::Max => outcomes.max(),
            Player::Min => outcomes.min(),
        }
        .expect("initiation has a response")
    }

    /// Value of initiating at `v` from `avail`, counting the move itself.
    pub fn initiation_value(&mut self, avail: VertexSet, v: usize) -> Result<usize> {
        if !self.spec.pattern.can_initiate(&self.graph, avail, v) {
            return Err(Error::IllegalInitiation(v));
        }
        Ok(self.eval_initiation(avail, v) as usize)
    }

    /// `1 + V(avail \ image)`, the outcome of taking `image` now.
    pub fn value_after(&mut self, avail: VertexSet, image: VertexSet) -> usize {
        1 + self.value(avail - image)
    }

    /// Lowest initiation vertex realizing the value of `avail`.
    pub fn best_initiation(&mut self, avail: VertexSet) -> Option<usize> {
        let target = self.eval(avail);
        let inits = self.spec.pattern.initiations(&self.graph, avail);
        inits.iter().find(|&v| self.eval_initiation(avail, v) == target)
    }

    /// Lexicographically first response image that is optimal for the responder.
    pub fn best_response(&mut self, avail: VertexSet, v: usize) -> Option<VertexSet> {
        if !self.spec.pattern.can_initiate(&self.graph, avail, v) {
            return None;
        }
        let target = self.eval_initiation(avail, v);
        let images = self.spec.pattern.response_images(&self.graph, avail, v);
        images.into_iter().find(|&img| 1 + self.eval(avail - img) == target)
    }

    /// One optimal line from `avail` with the deterministic tie-breaking above.
    pub fn principal_variation(&mut self, mut avail: VertexSet) -> Vec<Move> {
        let mut pv = Vec::new();
        while let Some(v) = self.best_initiation(avail) {
            let img = self.best_response(avail, v).expect("legal initiation");
            pv.push(Move::new(v, img));
            avail = avail - img;
        }
        pv
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::CapExceeded { n: g.n(), cap })
    } else {
        Ok(())
    }
}

pub fn solve(g: &Graph, spec: &GameSpec) -> Result<SolveResult> {
    solve_with(g, spec, &SolveOptions::default())
}

pub fn solve_with(g: &Graph, spec: &GameSpec, opts: &SolveOptions) -> Result<SolveResult> {
    check_cap(g, opts.cap)?;
    let start = Instant::now();
    let graph = Arc::new(g.clone());
    let mut solver = Solver::new(Arc::clone(&graph), spec.clone());
    if !opts.memo {
        solver = solver.without_memo();
    }
    let full = g.vertices();
    let value = if opts.jobs > 1 {
        parallel_root_value(&solver, full, opts.jobs)?
    } else {
        solver.value(full)
    };
    let pv = solver.principal_variation(full);
    debug_assert_eq!(pv.len(), value);
    let mut stats = solver.stats.clone();
    stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let k = spec.pattern.order();
    Ok(SolveResult {
        value,
        vertices_taken: value * k,
        perfect: g.n() % k == 0 && value * k == g.n(),
        principal_variation: pv,
        stats,
    })
}

/// Splits the root initiations over `jobs` workers, each with its own memo.
fn parallel_root_value(template: &Solver, full: VertexSet, jobs: usize) -> Result<usize> {
    let inits = template.spec.pattern.initiations(&template.graph, full).to_vec();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::param(format!("thread pool: {e}")))?;
    let values: Vec<u8> = pool.install(|| {
        inits
            .par_iter()
            .map(|&v| {
                let mut worker = template.clone();
                worker.eval_initiation(full, v)
            })
            .collect()
    });
    let best = match template.spec.initiator {
        Player::Max => values.into_iter().max(),
        Player::Min => values.into_iter().min(),
    };
    Ok(best.unwrap_or(0) as usize)
}

pub fn is_perfect(g: &Graph, spec: &GameSpec) -> Result<bool> {
    Ok(solve(g, spec)?.perfect)
}

/// Total further moves if `candidate` is played now in `state`.
pub fn value_after(g: &Graph, spec: &GameSpec, state: &GameState, candidate: &Move) -> Result<usize> {
    check_cap(g, DEFAULT_SOLVE_CAP)?;
    if !state.is_legal(spec, candidate) {
        return Err(Error::IllegalMove(format!("{candidate:?}")));
    }
    let mut solver = Solver::new(g.clone(), spec.clone());
    Ok(solver.value_after(state.available(), candidate.image))
}
