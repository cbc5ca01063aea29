//! Strategies, a match runner, and guarantee checks.
//!
//! A [`Strategy`] picks initiations and/or responses from a [`GameState`].
//! Besides the exact [`OptimalStrategy`] there are scripted strategies for
//! paths, 2- and 3-row grids and two-row rooks graphs, a seeded random
//! player, and the greedy heuristic used above the exact-search cap.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::{GameSpec, GameState, Move, Pattern, Player, Role};
use crate::error::{Error, Result};
use crate::families::{FamilyInstance, FamilyTag, Label};
use crate::graph::{Graph, VertexSet};
use crate::solver::{Solver, DEFAULT_SOLVE_CAP};

pub trait Strategy {
    fn name(&self) -> &str;

    /// The role the strategy is written for, or `None` if it plays both.
    fn role(&self) -> Option<Role>;

    fn initiate(&mut self, state: &GameState) -> Option<usize>;

    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet>;

    /// True if choices depend only on the available set, not on history.
    fn memoryless(&self) -> bool {
        false
    }
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn role(&self) -> Option<Role> {
        (**self).role()
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        (**self).initiate(state)
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        (**self).respond(state, v)
    }
    fn memoryless(&self) -> bool {
        (**self).memoryless()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Playout {
    pub moves: Vec<Move>,
    pub value: usize,
}

/// Plays one game to the end. Fails if a strategy passes while a legal
/// choice exists or makes an illegal choice.
pub fn run_match(g: &Graph, spec: &GameSpec, init: &mut dyn Strategy, resp: &mut dyn Strategy) -> Result<Playout> {
    let mut state = GameState::new(g.clone());
    while !state.is_terminal(spec) {
        let v = init
            .initiate(&state)
            .ok_or_else(|| Error::IllegalMove(format!("{} passed with initiations available", init.name())))?;
        if !state.legal_initiations(spec).contains(v) {
            return Err(Error::IllegalMove(format!("{} initiated at {v}", init.name())));
        }
        let image = resp
            .respond(&state, v)
            .ok_or_else(|| Error::IllegalMove(format!("{} passed on initiation {v}", resp.name())))?;
        state = state.apply(spec, Move::new(v, image))?;
    }
    let moves = state.history().to_vec();
    Ok(Playout { value: moves.len(), moves })
}

/// Exact play from the memoized solver, with its deterministic tie-breaking.
pub struct OptimalStrategy {
    solver: Solver,
}

impl OptimalStrategy {
    pub fn new(g: impl Into<Arc<Graph>>, spec: &GameSpec) -> Result<Self> {
        Self::with_cap(g, spec, DEFAULT_SOLVE_CAP)
    }

    pub fn with_cap(g: impl Into<Arc<Graph>>, spec: &GameSpec, cap: usize) -> Result<Self> {
        let g = g.into();
        if g.n() > cap {
            return Err(Error::CapExceeded { n: g.n(), cap });
        }
        Ok(OptimalStrategy { solver: Solver::new(g, spec.clone()) })
    }

    pub fn solver(&mut self) -> &mut Solver {
        &mut self.solver
    }
}

impl Strategy for OptimalStrategy {
    fn name(&self) -> &str {
        "optimal"
    }
    fn role(&self) -> Option<Role> {
        None
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        self.solver.best_initiation(state.available())
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        self.solver.best_response(state.available(), v)
    }
    fn memoryless(&self) -> bool {
        true
    }
}

/// Uniformly random legal choices from a seeded generator.
pub struct RandomStrategy {
    spec: GameSpec,
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(spec: &GameSpec, seed: u64) -> Self {
        RandomStrategy { spec: spec.clone(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomStrategy {
    fn name(&self) -> &str {
        "random"
    }
    fn role(&self) -> Option<Role> {
        None
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        state.legal_initiations(&self.spec).to_vec().choose(&mut self.rng).copied()
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        let images = self.spec.pattern.response_images(state.graph(), state.available(), v);
        images.choose(&mut self.rng).copied()
    }
}

/// Non-optimal play for graphs above the exact cap. An option is scored by
/// the number of legal initiations it leaves (Maximizer wants more,
/// Minimizer fewer); an initiation is scored by the responder's best reply
/// under the same proxy. Ties go to the lowest vertex or image.
pub struct GreedyStrategy {
    spec: GameSpec,
    player: Player,
}

impl GreedyStrategy {
    pub fn new(spec: &GameSpec, player: Player) -> Self {
        GreedyStrategy { spec: spec.clone(), player }
    }

    fn score(&self, g: &Graph, avail: VertexSet) -> usize {
        self.spec.pattern.initiations(g, avail).len()
    }

    fn pick<T: Copy>(&self, wants_more: bool, options: impl Iterator<Item = (T, usize)>) -> Option<T> {
        let mut best: Option<(T, usize)> = None;
        for (opt, s) in options {
            let better = match best {
                None => true,
                Some((_, b)) => (wants_more && s > b) || (!wants_more && s < b),
            };
            if better {
                best = Some((opt, s));
            }
        }
        best.map(|(opt, _)| opt)
    }
}

impl Strategy for GreedyStrategy {
    fn name(&self) -> &str {
        "greedy"
    }
    fn role(&self) -> Option<Role> {
        None
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        let (g, avail) = (state.graph(), state.available());
        let me_max = self.player == Player::Max;
        let options = state.legal_initiations(&self.spec).iter().map(|v| {
            let replies = self.spec.pattern.response_images(g, avail, v).into_iter().map(|img| self.score(g, avail - img));
            let reply = if me_max { replies.min() } else { replies.max() };
            (v, reply.unwrap_or(0))
        });
        self.pick(me_max, options)
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        let (g, avail) = (state.graph(), state.available());
        let options = self.spec.pattern.response_images(g, avail, v).into_iter().map(|img| (img, self.score(g, avail - img)));
        self.pick(self.player == Player::Max, options)
    }
    fn memoryless(&self) -> bool {
        true
    }
}

fn legal_or_first(spec: &GameSpec, state: &GameState, v: usize, image: Option<VertexSet>) -> Option<VertexSet> {
    let images = spec.pattern.response_images(state.graph(), state.available(), v);
    match image {
        Some(img) if images.contains(&img) => Some(img),
        _ => images.first().copied(),
    }
}

fn target_or_lowest(spec: &GameSpec, state: &GameState, targets: impl IntoIterator<Item = usize>) -> Option<usize> {
    let legal = state.legal_initiations(spec);
    targets.into_iter().find(|&t| legal.contains(t)).or_else(|| legal.first())
}

/// Row/column coordinates of a grid instance, read from its `rows` label.
#[derive(Clone, Debug)]
struct GridCoords {
    ids: Vec<Vec<usize>>,
    coord: Vec<(usize, usize)>,
}

impl GridCoords {
    fn new(inst: &FamilyInstance, rows: usize) -> Result<Self> {
        if inst.tag != FamilyTag::Grid || inst.param("rows") != Some(rows) {
            return Err(Error::param(format!("strategy needs a {rows}-row grid, got {}", inst.key())));
        }
        let ids = match inst.labeled("rows") {
            Some(Label::Rows(r)) => r.clone(),
            _ => return Err(Error::param("grid instance has no row labels")),
        };
        let mut coord = vec![(0, 0); inst.graph.n()];
        for (r, row) in ids.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                coord[v] = (r, c);
            }
        }
        Ok(GridCoords { ids, coord })
    }

    fn cols(&self) -> usize {
        self.ids[0].len()
    }

    fn at(&self, r: usize, c: usize) -> usize {
        self.ids[r][c]
    }
}

fn require(spec: &GameSpec, pattern: &Pattern, initiator: Player, what: &str) -> Result<()> {
    if &spec.pattern == pattern && spec.initiator == initiator {
        Ok(())
    } else {
        Err(Error::param(format!("{what} does not apply to {spec}")))
    }
}

/// Stripe game on `P_n`, Minimizer initiating: initiate at 1-indexed
/// vertices 2, 6, 10, …; when the next one is not a legal start, finish at
/// `n` or `n - 2`.
pub struct PathStripeMinInitiator {
    spec: GameSpec,
    n: usize,
}

impl PathStripeMinInitiator {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Stripe, Player::Min, "path-stripe")?;
        match (inst.tag, inst.param("n")) {
            (FamilyTag::Path, Some(n)) => Ok(PathStripeMinInitiator { spec: spec.clone(), n }),
            _ => Err(Error::param("path-stripe needs a path")),
        }
    }
}

impl Strategy for PathStripeMinInitiator {
    fn name(&self) -> &str {
        "path-stripe"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Initiator)
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        let next = 4 * state.moves_made() + 1;
        let n = self.n;
        target_or_lowest(&self.spec, state, [Some(next), n.checked_sub(1), n.checked_sub(3)].into_iter().flatten())
    }
    fn respond(&mut self, _: &GameState, _: usize) -> Option<VertexSet> {
        None
    }
}

/// Star game on `P_n`, Maximizer initiating: initiate at 1-indexed vertices
/// 2, 5, 8, …, each of which has exactly two available neighbors.
pub struct PathStarMaxInitiator {
    spec: GameSpec,
}

impl PathStarMaxInitiator {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Star, Player::Max, "path-star")?;
        if inst.tag != FamilyTag::Path {
            return Err(Error::param("path-star needs a path"));
        }
        Ok(PathStarMaxInitiator { spec: spec.clone() })
    }
}

impl Strategy for PathStarMaxInitiator {
    fn name(&self) -> &str {
        "path-star"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Initiator)
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        target_or_lowest(&self.spec, state, [3 * state.moves_made() + 1])
    }
    fn respond(&mut self, _: &GameState, _: usize) -> Option<VertexSet> {
        None
    }
}

/// Star game on a `2 × m` grid, Maximizer initiating: top row at columns
/// 0, 2, 4, … and, for odd `m`, a last move at the bottom of the last
/// column. Every response is forced.
pub struct Grid2StarCorners {
    spec: GameSpec,
    grid: GridCoords,
}

impl Grid2StarCorners {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Star, Player::Max, "grid2-corners")?;
        Ok(Grid2StarCorners { spec: spec.clone(), grid: GridCoords::new(inst, 2)? })
    }

    fn targets(&self) -> Vec<usize> {
        let m = self.grid.cols();
        let mut t: Vec<usize> = (0..m).step_by(2).filter(|&c| c + 1 < m).map(|c| self.grid.at(0, c)).collect();
        if m % 2 == 1 {
            t.push(self.grid.at(1, m - 1));
        }
        t
    }
}

impl Strategy for Grid2StarCorners {
    fn name(&self) -> &str {
        "grid2-corners"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Initiator)
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        let t = self.targets().get(state.moves_made()).copied();
        target_or_lowest(&self.spec, state, t)
    }
    fn respond(&mut self, _: &GameState, _: usize) -> Option<VertexSet> {
        None
    }
}

/// Star game on a `2 × m` grid, Minimizer responding. The grid is split
/// into `2 × 2` blocks of columns `(0,1), (2,3), …`; every response uses
/// the vertical edge at the initiation plus the neighbor in the same block.
/// For odd `m` one column floats, starting at the last; an initiation in
/// the floating column is answered to the left and the column moves two
/// places left.
pub struct Grid2StarSubgrid {
    spec: GameSpec,
    grid: GridCoords,
}

impl Grid2StarSubgrid {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Star, Player::Max, "grid2-subgrid")?;
        Ok(Grid2StarSubgrid { spec: spec.clone(), grid: GridCoords::new(inst, 2)? })
    }

    /// Current floating column, replayed from the history.
    pub fn floating_column(&self, history: &[Move]) -> Option<usize> {
        let m = self.grid.cols();
        if m % 2 == 0 {
            return None;
        }
        let mut f = m - 1;
        for mv in history {
            let (_, c) = self.grid.coord[mv.init];
            let went_left = mv.image.iter().any(|u| f >= 1 && self.grid.coord[u].1 == f - 1);
            if c == f && went_left && f >= 2 {
                f -= 2;
            }
        }
        Some(f)
    }
}

impl Strategy for Grid2StarSubgrid {
    fn name(&self) -> &str {
        "grid2-subgrid"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Responder)
    }
    fn initiate(&mut self, _: &GameState) -> Option<usize> {
        None
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        let (r, c) = self.grid.coord[v];
        let m = self.grid.cols() as isize;
        let c_i = c as isize;
        let partners: Vec<isize> = match self.floating_column(state.history()) {
            Some(f) if c == f => vec![c_i - 1, c_i + 1],
            Some(f) if c > f => vec![if (c - f) % 2 == 1 { c_i + 1 } else { c_i - 1 }],
            _ => vec![(c ^ 1) as isize],
        };
        let avail = state.available();
        let choice = partners
            .into_iter()
            .filter(|&p| (0..m).contains(&p))
            .map(|p| VertexSet::from_vertices([v, self.grid.at(1 - r, c), self.grid.at(r, p as usize)]))
            .find(|img| img.is_subset(avail));
        legal_or_first(&self.spec, state, v, choice)
    }
}

/// Stripe game on a `2 × m` grid, either player responding: every response
/// empties one whole column of one parity class plus one vertex of a
/// neighboring column. The Minimizer empties 0-indexed odd columns, the
/// Maximizer even ones.
pub struct Grid2StripeParity {
    spec: GameSpec,
    grid: GridCoords,
    heavy_parity: usize,
}

impl Grid2StripeParity {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        if spec.pattern != Pattern::Stripe {
            return Err(Error::param(format!("grid2-parity does not apply to {spec}")));
        }
        let heavy_parity = match spec.responder() {
            Player::Min => 1,
            Player::Max => 0,
        };
        Ok(Grid2StripeParity { spec: spec.clone(), grid: GridCoords::new(inst, 2)?, heavy_parity })
    }
}

impl Strategy for Grid2StripeParity {
    fn name(&self) -> &str {
        "grid2-parity"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Responder)
    }
    fn initiate(&mut self, _: &GameState) -> Option<usize> {
        None
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        let images = self.spec.pattern.response_images(state.graph(), state.available(), v);
        let full_heavy_column = |img: &VertexSet| {
            let cols: Vec<usize> = img.iter().map(|u| self.grid.coord[u].1).filter(|c| c % 2 == self.heavy_parity).collect();
            cols.len() == 2 && cols[0] == cols[1]
        };
        images.iter().find(|img| full_heavy_column(img)).or(images.first()).copied()
    }
    fn memoryless(&self) -> bool {
        true
    }
}

/// Star game on a `3 × m` grid, Maximizer initiating, taking every vertex.
///
/// Even `m`: bottom row at columns 0, 2, …, m−2, then the top-right corner,
/// then the top row at columns m−3, m−5, …, 1. Odd `m`: open in the middle
/// of column 0. A response inside that column leaves the even case on
/// columns 1..m. A response toward the bottom corner continues along the top
/// row at columns 1, 3, …, m−2 and back along the bottom row at columns
/// m−1, m−3, …, 2; a response toward the top corner is the mirror image.
pub struct Grid3StarPerfect {
    spec: GameSpec,
    grid: GridCoords,
}

impl Grid3StarPerfect {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Star, Player::Max, "grid3-perfect")?;
        let grid = GridCoords::new(inst, 3)?;
        if grid.cols() < 2 {
            return Err(Error::param("grid3-perfect needs at least 2 columns"));
        }
        Ok(Grid3StarPerfect { spec: spec.clone(), grid })
    }

    fn even_plan(&self, first_col: usize) -> Vec<(usize, usize)> {
        let m = self.grid.cols();
        let mut plan: Vec<_> = (first_col..m - 1).step_by(2).map(|c| (2, c)).collect();
        plan.push((0, m - 1));
        plan.extend((first_col + 1..m - 2).rev().step_by(2).map(|c| (0, c)));
        plan
    }

    fn plan(&self, history: &[Move]) -> Vec<(usize, usize)> {
        let m = self.grid.cols();
        if m % 2 == 0 {
            return self.even_plan(0);
        }
        let Some(first) = history.first() else { return vec![(1, 0)] };
        let has = |r: usize, c: usize| first.image.contains(self.grid.at(r, c));
        let mut plan = vec![(1, 0)];
        if has(0, 0) && has(2, 0) {
            plan.extend(self.even_plan(1));
        } else {
            let (near, far) = if has(2, 0) { (0, 2) } else { (2, 0) };
            plan.extend((1..m - 1).step_by(2).map(|c| (near, c)));
            plan.extend((2..m).rev().step_by(2).map(|c| (far, c)));
        }
        plan
    }
}

impl Strategy for Grid3StarPerfect {
    fn name(&self) -> &str {
        "grid3-perfect"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Initiator)
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        let plan = self.plan(state.history());
        let t = plan.get(state.moves_made()).map(|&(r, c)| self.grid.at(r, c));
        target_or_lowest(&self.spec, state, t)
    }
    fn respond(&mut self, _: &GameState, _: usize) -> Option<VertexSet> {
        None
    }
}

/// Rows and cross-edge partners of a two-row rooks graph.
#[derive(Clone, Debug)]
struct RooksRows {
    top: VertexSet,
    bottom: VertexSet,
    partner: Vec<usize>,
}

impl RooksRows {
    fn new(inst: &FamilyInstance) -> Result<Self> {
        if inst.tag != FamilyTag::Rooks2 {
            return Err(Error::param(format!("strategy needs a two-row rooks graph, got {}", inst.key())));
        }
        let row = |name: &str| match inst.labeled(name) {
            Some(Label::Vertices(v)) => Ok(v.iter().copied().collect::<VertexSet>()),
            _ => Err(Error::param(format!("rooks instance has no {name} label"))),
        };
        let mut partner = vec![usize::MAX; inst.graph.n()];
        match inst.labeled("cross_edges") {
            Some(Label::Rows(pairs)) => {
                for p in pairs {
                    partner[p[0]] = p[1];
                    partner[p[1]] = p[0];
                }
            }
            _ => return Err(Error::param("rooks instance has no cross_edges label")),
        }
        Ok(RooksRows { top: row("top")?, bottom: row("bottom")?, partner })
    }

    fn row_of(&self, v: usize) -> VertexSet {
        if self.top.contains(v) {
            self.top
        } else {
            self.bottom
        }
    }

    /// Available vertices of `row` whose partner is gone.
    fn uncrossed(&self, row: VertexSet, avail: VertexSet) -> VertexSet {
        (row & avail).iter().filter(|&u| !avail.contains(self.partner[u])).collect()
    }
}

/// Row counts `(i, j)` with `i ≥ j` of the available part of a rooks graph.
pub fn rooks_row_counts(inst: &FamilyInstance, avail: VertexSet) -> Result<(usize, usize)> {
    let rows = RooksRows::new(inst)?;
    let (a, b) = ((rows.top & avail).len(), (rows.bottom & avail).len());
    Ok((a.max(b), a.min(b)))
}

/// Stripe game on `R_m`, Minimizer responding. Ends the game whenever a
/// response can; otherwise keeps every vertex of the smaller row crossed,
/// alternating row counts of the shapes `(x, x−1)` and `(x, x−2)`:
///
/// * from `(m, m)`: go across, `v-v'-u'`;
/// * initiation in the larger row: take three there, uncrossed ones first;
/// * initiation in the smaller row at difference 1: `v-s-s'`;
/// * initiation in the smaller row at difference 2: `v-v'-u` with `u`
///   uncrossed.
pub struct RooksStripeMinResponder {
    spec: GameSpec,
    rows: RooksRows,
}

impl RooksStripeMinResponder {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Stripe, Player::Max, "rooks-stripe")?;
        Ok(RooksStripeMinResponder { spec: spec.clone(), rows: RooksRows::new(inst)? })
    }

    fn scripted(&self, avail: VertexSet, v: usize) -> Option<VertexSet> {
        let rows = &self.rows;
        let own = rows.row_of(v) & avail;
        let other = (rows.top | rows.bottom) - rows.row_of(v);
        let other = other & avail;
        let vp = rows.partner[v];
        let fresh = own.len() == other.len() && rows.uncrossed(rows.top | rows.bottom, avail).is_empty();
        if fresh {
            let u = (other - VertexSet::singleton(vp)).first()?;
            return Some(VertexSet::from_vertices([v, vp, u]));
        }
        if own.len() > other.len() {
            let un = rows.uncrossed(own, avail).without(v);
            let pick: Vec<usize> = un.iter().chain((own - un).without(v).iter()).take(2).collect();
            return (pick.len() == 2).then(|| VertexSet::from_vertices([v, pick[0], pick[1]]));
        }
        match other.len() - own.len() {
            1 => {
                let s = own.without(v).iter().find(|&s| avail.contains(rows.partner[s]))?;
                Some(VertexSet::from_vertices([v, s, rows.partner[s]]))
            }
            2 => {
                let u = rows.uncrossed(other, avail).first()?;
                avail.contains(vp).then(|| VertexSet::from_vertices([v, vp, u]))
            }
            _ => None,
        }
    }
}

impl Strategy for RooksStripeMinResponder {
    fn name(&self) -> &str {
        "rooks-stripe"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Responder)
    }
    fn initiate(&mut self, _: &GameState) -> Option<usize> {
        None
    }
    fn respond(&mut self, state: &GameState, v: usize) -> Option<VertexSet> {
        let (g, avail) = (state.graph(), state.available());
        let images = self.spec.pattern.response_images(g, avail, v);
        if let Some(&end) = images.iter().find(|&&img| self.spec.pattern.is_terminal(g, avail - img)) {
            return Some(end);
        }
        legal_or_first(&self.spec, state, v, self.scripted(avail, v))
    }
    fn memoryless(&self) -> bool {
        true
    }
}

/// Star game on `R_m`, Maximizer initiating, taking every vertex. With both
/// row counts divisible by 3, initiate at a vertex without a cross-edge so
/// the response stays in its row. Otherwise work in the row whose count is
/// 2 mod 3: an uncrossed vertex if one is a legal start, else a crossed one,
/// until the response crosses over and both counts are divisible by 3.
pub struct RooksStarMaxInitiator {
    spec: GameSpec,
    rows: RooksRows,
}

impl RooksStarMaxInitiator {
    pub fn new(inst: &FamilyInstance, spec: &GameSpec) -> Result<Self> {
        require(spec, &Pattern::Star, Player::Max, "rooks-star")?;
        Ok(RooksStarMaxInitiator { spec: spec.clone(), rows: RooksRows::new(inst)? })
    }
}

impl Strategy for RooksStarMaxInitiator {
    fn name(&self) -> &str {
        "rooks-star"
    }
    fn role(&self) -> Option<Role> {
        Some(Role::Initiator)
    }
    fn initiate(&mut self, state: &GameState) -> Option<usize> {
        let avail = state.available();
        let legal = state.legal_initiations(&self.spec);
        let rows = &self.rows;
        let (t, b) = ((rows.top & avail).len(), (rows.bottom & avail).len());
        let target = if t % 3 == 0 && b % 3 == 0 {
            rows.top | rows.bottom
        } else if t % 3 == 2 || b % 3 == 0 {
            rows.top
        } else {
            rows.bottom
        };
        let un = rows.uncrossed(target, avail) & legal;
        un.first().or_else(|| (target & legal).first()).or_else(|| legal.first())
    }
    fn respond(&mut self, _: &GameState, _: usize) -> Option<VertexSet> {
        None
    }
    fn memoryless(&self) -> bool {
        true
    }
}

/// Names accepted by [`scripted`].
pub const SCRIPTED_STRATEGIES: &[&str] = &[
    "path-stripe",
    "path-star",
    "grid2-corners",
    "grid2-subgrid",
    "grid2-parity",
    "grid3-perfect",
    "rooks-stripe",
    "rooks-star",
];

/// Builds a scripted strategy by name for an instance and game.
pub fn scripted(name: &str, inst: &FamilyInstance, spec: &GameSpec) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "path-stripe" => Box::new(PathStripeMinInitiator::new(inst, spec)?),
        "path-star" => Box::new(PathStarMaxInitiator::new(inst, spec)?),
        "grid2-corners" => Box::new(Grid2StarCorners::new(inst, spec)?),
        "grid2-subgrid" => Box::new(Grid2StarSubgrid::new(inst, spec)?),
        "grid2-parity" => Box::new(Grid2StripeParity::new(inst, spec)?),
        "grid3-perfect" => Box::new(Grid3StarPerfect::new(inst, spec)?),
        "rooks-stripe" => Box::new(RooksStripeMinResponder::new(inst, spec)?),
        "rooks-star" => Box::new(RooksStarMaxInitiator::new(inst, spec)?),
        _ => return Err(Error::param(format!("unknown strategy {name:?}; known: {}", SCRIPTED_STRATEGIES.join(", ")))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn holds(self, value: usize) -> bool {
        match self {
            Bound::AtMost(b) => value <= b,
            Bound::AtLeast(b) => value >= b,
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::AtMost(b) => write!(f, "<= {b}"),
            Bound::AtLeast(b) => write!(f, ">= {b}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GuaranteeOutcome {
    pub strategy: String,
    pub bound: Bound,
    /// Worst playout length over every opponent line.
    pub worst: usize,
    pub worst_playout: Vec<Move>,
    /// The game against the optimal opponent.
    pub optimal_playout: Playout,
    pub lines_explored: u64,
    pub holds: bool,
}

struct Adversary<'a> {
    spec: &'a GameSpec,
    strategy: &'a mut dyn Strategy,
    role: Role,
    opponent_maximizes: bool,
    memo: Option<HashMap<u64, (usize, Vec<Move>)>>,
    lines: u64,
}

impl Adversary<'_> {
    fn better(&self, a: usize, b: usize) -> bool {
        if self.opponent_maximizes {
            a > b
        } else {
            a < b
        }
    }

    fn explore(&mut self, state: &GameState) -> Result<(usize, Vec<Move>)> {
        if state.is_terminal(self.spec) {
            self.lines += 1;
            return Ok((0, Vec::new()));
        }
        let key = state.available().0;
        if let Some(hit) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            return Ok(hit.clone());
        }
        let name = self.strategy.name().to_string();
        let mut candidates = Vec::new();
        match self.role {
            Role::Initiator => {
                let v = self
                    .strategy
                    .initiate(state)
                    .ok_or_else(|| Error::IllegalMove(format!("{name} passed with initiations available")))?;
                for mv in state.responses(self.spec, v).map_err(|_| Error::IllegalMove(format!("{name} initiated at {v}")))? {
                    candidates.push(mv);
                }
            }
            Role::Responder => {
                for v in state.legal_initiations(self.spec) {
                    let img = self
                        .strategy
                        .respond(state, v)
                        .ok_or_else(|| Error::IllegalMove(format!("{name} passed on initiation {v}")))?;
                    candidates.push(Move::new(v, img));
                }
            }
        }
        let mut best: Option<(usize, Vec<Move>)> = None;
        for mv in candidates {
            let next = state.apply(self.spec, mv.clone()).map_err(|e| Error::IllegalMove(format!("{name}: {e}")))?;
            let (len, mut line) = self.explore(&next)?;
            if best.as_ref().map_or(true, |(b, _)| self.better(len + 1, *b)) {
                line.insert(0, mv);
                best = Some((len + 1, line));
            }
        }
        let best = best.expect("non-terminal state has a move");
        if let Some(memo) = self.memo.as_mut() {
            memo.insert(key, best.clone());
        }
        Ok(best)
    }
}

/// Plays `strategy` in `role` against every possible opponent line and
/// reports the worst outcome against `bound`, together with the game
/// against the optimal opponent. An illegal or missing choice by the
/// strategy is an error.
pub fn check_guarantee(
    g: &Graph,
    spec: &GameSpec,
    strategy: &mut dyn Strategy,
    role: Role,
    bound: Bound,
) -> Result<GuaranteeOutcome> {
    if strategy.role().is_some_and(|r| r != role) {
        return Err(Error::param(format!("{} cannot play the {role:?} role", strategy.name())));
    }
    let mut optimal = OptimalStrategy::new(g.clone(), spec)?;
    let optimal_playout = match role {
        Role::Initiator => run_match(g, spec, strategy, &mut optimal)?,
        Role::Responder => run_match(g, spec, &mut optimal, strategy)?,
    };
    let memo = strategy.memoryless().then(HashMap::new);
    let mut adv = Adversary {
        spec,
        role,
        opponent_maximizes: spec.player(role) == Player::Min,
        strategy,
        memo,
        lines: 0,
    };
    let (worst, worst_playout) = adv.explore(&GameState::new(g.clone()))?;
    let lines_explored = adv.lines;
    let name = adv.strategy.name().to_string();
    Ok(GuaranteeOutcome {
        strategy: name,
        bound,
        worst,
        worst_playout,
        optimal_playout,
        lines_explored,
        holds: bound.holds(worst),
    })
}
