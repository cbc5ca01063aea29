//! Exact packing parameters by memoized recursion over available-vertex sets.

use std::collections::HashMap;

use serde::Serialize;

use crate::engine::Pattern;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_PACKING_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingResult {
    pub size: usize,
    #[serde(serialize_with = "serialize_sets")]
    pub witness: Vec<VertexSet>,
}

pub(crate) fn serialize_sets<S: serde::Serializer>(sets: &[VertexSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(sets.len()))?;
    for set in sets {
        seq.serialize_element(&set.to_vec())?;
    }
    seq.end()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Objective {
    /// Largest packing.
    Maximum,
    /// Smallest packing that cannot be extended.
    MinimumMaximal,
}

/// Packing ignores roots, so every pattern is searched in its unrooted form.
fn unrooted(p: &Pattern) -> Pattern {
    match p {
        Pattern::Generic(gp) => Pattern::generic(gp.graph().clone(), None).expect("already validated"),
        _ => Pattern::UnrootedP3,
    }
}

struct Packer<'a> {
    g: &'a Graph,
    pattern: Pattern,
    objective: Objective,
    memo: HashMap<u64, u8>,
}

impl<'a> Packer<'a> {
    fn new(g: &'a Graph, pattern: &Pattern, objective: Objective) -> Self {
        Packer { g, pattern: unrooted(pattern), objective, memo: HashMap::new() }
    }

    /// Copies to branch on at `s`, and whether skipping the lowest vertex is
    /// also a branch (maximum packing only).
    fn branches(&self, s: VertexSet) -> (Vec<VertexSet>, Option<VertexSet>) {
        match self.objective {
            Objective::Maximum => {
                let Some(u) = s.first() else { return (Vec::new(), None) };
                (self.pattern.response_images(self.g, s, u), Some(s.without(u)))
            }
            Objective::MinimumMaximal => (self.pattern.copies(self.g, s), None),
        }
    }

    fn value(&mut self, s: VertexSet) -> u8 {
        if let Some(&v) = self.memo.get(&s.0) {
            return v;
        }
        let (copies, skip) = self.branches(s);
        let v = match self.objective {
            Objective::Maximum => {
                let mut best = skip.map_or(0, |rest| self.value(rest));
                for c in copies {
                    best = best.max(1 + self.value(s - c));
                }
                best
            }
            Objective::MinimumMaximal => copies.into_iter().map(|c| 1 + self.value(s - c)).min().unwrap_or(0),
        };
        self.memo.insert(s.0, v);
        v
    }

    fn witness(&mut self, mut s: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        loop {
            let target = self.value(s);
            if target == 0 {
                return out;
            }
            let (copies, skip) = self.branches(s);
            if let Some(c) = copies.into_iter().find(|&c| 1 + self.value(s - c) == target) {
                out.push(c);
                s = s - c;
            } else {
                s = skip.expect("value is realized by some branch");
            }
        }
    }
}

fn run(g: &Graph, pattern: &Pattern, objective: Objective, cap: usize) -> Result<PackingResult> {
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    let mut p = Packer::new(g, pattern, objective);
    let size = p.value(g.vertices()) as usize;
    let witness = p.witness(g.vertices());
    debug_assert_eq!(witness.len(), size);
    Ok(PackingResult { size, witness })
}

/// Maximum number of vertex-disjoint copies of the pattern (`μ` for P3).
pub fn mu(g: &Graph, pattern: &Pattern) -> Result<PackingResult> {
    mu_with_cap(g, pattern, DEFAULT_PACKING_CAP)
}

pub fn mu_with_cap(g: &Graph, pattern: &Pattern, cap: usize) -> Result<PackingResult> {
    run(g, pattern, Objective::Maximum, cap)
}

/// Minimum size of a maximal packing.
pub fn min_maximal(g: &Graph, pattern: &Pattern) -> Result<PackingResult> {
    min_maximal_with_cap(g, pattern, DEFAULT_PACKING_CAP)
}

pub fn min_maximal_with_cap(g: &Graph, pattern: &Pattern, cap: usize) -> Result<PackingResult> {
    run(g, pattern, Objective::MinimumMaximal, cap)
}

/// Whether the vertex set splits into vertex-disjoint triangles.
pub fn has_k3_partition(g: &Graph) -> bool {
    fn go(g: &Graph, s: VertexSet, memo: &mut HashMap<u64, bool>) -> bool {
        let Some(u) = s.first() else { return true };
        if let Some(&r) = memo.get(&s.0) {
            return r;
        }
        let nb = g.adj(u) & s;
        let mut found = false;
        'outer: for x in nb {
            for y in (g.adj(x) & nb).iter().filter(|&y| y > x) {
                if go(g, s - VertexSet::from_vertices([u, x, y]), memo) {
                    found = true;
                    break 'outer;
                }
            }
        }
        memo.insert(s.0, found);
        found
    }
    g.n() % 3 == 0 && go(g, g.vertices(), &mut HashMap::new())
}
