//! Canonical codes for free trees and enumeration of trees up to isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ENUMERATION_ORDER: usize = 13;

/// Canonical form of a free tree: the AHU parenthesis string of the tree
/// rooted at its centroid (the smaller string when there are two centroids).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct TreeCode(Vec<u8>);

impl TreeCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for TreeCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

pub fn tree_code(g: &Graph) -> Result<TreeCode> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let code = centroids(g)
        .into_iter()
        .map(|c| rooted_code(g, c, usize::MAX))
        .min()
        .expect("a tree has a centroid");
    Ok(TreeCode(code))
}

fn rooted_code(g: &Graph, v: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = g
        .adj(v)
        .iter()
        .filter(|&c| c != parent)
        .map(|c| rooted_code(g, c, v))
        .collect();
    children.sort_unstable();
    let mut out = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
    out.push(b'(');
    for c in children {
        out.extend(c);
    }
    out.push(b')');
    out
}

/// Vertices whose removal leaves no component larger than `n / 2`.
fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let all = g.vertices();
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for v in 0..n {
        let rest = all.without(v);
        let largest = g
            .adj(v)
            .iter()
            .map(|u| g.reach(u, rest).len())
            .max()
            .unwrap_or(0);
        if largest < best {
            best = largest;
            out.clear();
        }
        if largest == best {
            out.push(v);
        }
    }
    out
}

/// One representative per isomorphism class of trees on `n` vertices,
/// ordered by canonical code.
///
/// Trees of order `k + 1` are produced by hanging a leaf on every vertex of
/// every order-`k` representative; since each tree has a leaf whose removal
/// leaves a smaller tree, every class is reached.
pub fn enumerate_free_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::param(format!(
            "free-tree order must be in 1..={MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let mut level: BTreeMap<TreeCode, Graph> = BTreeMap::new();
    let k1 = Graph::empty(1)?;
    level.insert(tree_code(&k1)?, k1);
    for k in 1..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            let mut edges = t.edges();
            for v in 0..k {
                edges.push((v, k));
                let grown = Graph::new(k + 1, &edges)?;
                edges.pop();
                next.entry(tree_code(&grown)?).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_path_has_same_code() {
        let a = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::new(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(tree_code(&a).unwrap(), tree_code(&b).unwrap());
    }

    #[test]
    fn path_and_claw_differ() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let claw = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(tree_code(&p4).unwrap(), tree_code(&claw).unwrap());
    }

    #[test]
    fn all_labelings_of_p3_share_one_code() {
        let base = [(0usize, 1usize), (1, 2)];
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let codes: std::collections::BTreeSet<_> = perms
            .iter()
            .map(|p| {
                let edges: Vec<_> = base.iter().map(|&(u, v)| (p[u], p[v])).collect();
                tree_code(&Graph::new(3, &edges).unwrap()).unwrap()
            })
            .collect();
        assert_eq!(codes.len(), 1);
    }

    #[test]
    fn not_a_tree_is_rejected() {
        let c3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tree_code(&c3), Err(Error::NotATree));
        let forest = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(tree_code(&forest), Err(Error::NotATree));
        assert_eq!(tree_code(&Graph::empty(0).unwrap()), Err(Error::NotATree));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<_> = (1..=8).map(|n| enumerate_free_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        assert!(enumerate_free_trees(0).is_err());
        assert!(enumerate_free_trees(14).is_err());
    }
}
