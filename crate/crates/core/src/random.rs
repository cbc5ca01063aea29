//! Seeded random graphs for property suites and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Erdős–Rényi `G(n, p)`; each pair is included independently with
/// probability `p`, drawn in lexicographic pair order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Uniform random labeled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::param(format!("tree order {n} is outside 1..=64")));
    }
    if n <= 2 {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        return Graph::new(n, &edges);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::new(n, &prufer_edges(n, &seq))
}

/// Decodes a Prüfer sequence of length `n - 2` into tree edges.
pub fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    if let [a, b] = rest[..] {
        edges.push((a, b));
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_is_deterministic() {
        let a = gnp(12, 0.3, 7).unwrap();
        assert_eq!(a, gnp(12, 0.3, 7).unwrap());
        assert_eq!(gnp(10, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(gnp(10, 1.0, 1).unwrap().edge_count(), 45);
        assert!(gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..50 {
            for n in [1, 2, 3, 7, 12] {
                assert!(random_tree(n, seed).unwrap().is_tree());
            }
        }
    }
}
