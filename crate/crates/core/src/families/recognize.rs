//! Recognizers for the forest families 𝒟, 𝒠 and ℱ.
//!
//! 𝒠 and ℱ are recognized by peeling off the last P3 of a construction.
//! Their "at most one edge into each existing component" clause needs no
//! check: inside a forest, two edges from the new P3 into one component
//! would close a cycle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

fn require_forest(g: &Graph) -> Result<()> {
    if g.is_forest() {
        Ok(())
    } else {
        Err(Error::NotAForest)
    }
}

/// Double coronas of trees: every component has order at least 3 and every
/// non-leaf vertex has exactly two leaf neighbors.
pub fn in_family_d(g: &Graph) -> Result<bool> {
    require_forest(g)?;
    let all = g.vertices();
    if g.components_in(all).iter().any(|c| c.len() < 3) {
        return Ok(false);
    }
    let leaves: VertexSet = all.iter().filter(|&v| g.degree(v) == 1).collect();
    Ok((all - leaves).iter().all(|v| (g.adj(v) & leaves).len() == 2))
}

/// True iff the forest is empty or has a degree-2 vertex whose closed
/// neighborhood can be removed leaving a member of 𝒠.
pub fn in_family_e(g: &Graph) -> Result<bool> {
    require_forest(g)?;
    fn go(g: &Graph, s: VertexSet, memo: &mut HashMap<u64, bool>) -> bool {
        if s.is_empty() {
            return true;
        }
        if s.len() % 3 != 0 {
            return false;
        }
        if let Some(&r) = memo.get(&s.0) {
            return r;
        }
        let r = s.iter().any(|v| {
            let nb = g.adj(v) & s;
            nb.len() == 2 && go(g, s - nb.with(v), memo)
        });
        memo.insert(s.0, r);
        r
    }
    Ok(go(g, g.vertices(), &mut HashMap::new()))
}

/// True iff the forest is empty or has a path `a - b - v` with `deg a = 1`,
/// `deg b = 2` whose removal leaves a member of ℱ.
pub fn in_family_f(g: &Graph) -> Result<bool> {
    require_forest(g)?;
    fn go(g: &Graph, s: VertexSet, memo: &mut HashMap<u64, bool>) -> bool {
        if s.is_empty() {
            return true;
        }
        if s.len() % 3 != 0 {
            return false;
        }
        if let Some(&r) = memo.get(&s.0) {
            return r;
        }
        let r = s.iter().any(|a| {
            let na = g.adj(a) & s;
            if na.len() != 1 {
                return false;
            }
            let b = na.first().expect("one neighbor");
            let nb = g.adj(b) & s;
            nb.len() == 2 && go(g, s - nb.with(b), memo)
        });
        memo.insert(s.0, r);
        r
    }
    Ok(go(g, g.vertices(), &mut HashMap::new()))
}
