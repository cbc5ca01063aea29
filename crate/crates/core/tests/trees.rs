use std::collections::BTreeSet;

use matchgame::random::{prufer_edges, random_tree};
use matchgame::{enumerate_free_trees, tree_code, Graph, TreeCode};

fn codes(trees: &[Graph]) -> BTreeSet<TreeCode> {
    trees.iter().map(|t| tree_code(t).unwrap()).collect()
}

/// Every labeled tree on `n` vertices, one per Prüfer sequence.
fn all_labeled(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1).unwrap()];
    }
    let len = n - 2;
    (0..n.pow(len as u32))
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            Graph::new(n, &prufer_edges(n, &seq)).unwrap()
        })
        .collect()
}

#[test]
fn enumeration_matches_prufer_dedupe_up_to_eight() {
    for n in 1..=8 {
        let enumerated = enumerate_free_trees(n).unwrap();
        let set = codes(&enumerated);
        assert_eq!(set.len(), enumerated.len(), "duplicates at n={n}");
        assert_eq!(set, codes(&all_labeled(n)), "n={n}");
    }
}

#[test]
fn random_trees_of_order_twelve_are_enumerated() {
    let set = codes(&enumerate_free_trees(12).unwrap());
    for seed in 0..300 {
        let t = random_tree(12, seed).unwrap();
        assert!(t.is_tree());
        assert!(set.contains(&tree_code(&t).unwrap()), "seed {seed}");
    }
}

#[test]
fn known_counts() {
    let counts: Vec<usize> = (1..=12).map(|n| enumerate_free_trees(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
}

#[test]
fn code_ignores_labels() {
    let a = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
    let b = a.relabel(&[4, 3, 2, 1, 0]).unwrap();
    assert_eq!(tree_code(&a).unwrap(), tree_code(&b).unwrap());
    let p5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    assert_ne!(tree_code(&a).unwrap(), tree_code(&p5).unwrap());
}

#[test]
fn non_trees_have_no_code() {
    let c3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(tree_code(&c3).is_err());
    assert!(enumerate_free_trees(0).is_err() || enumerate_free_trees(0).unwrap().is_empty());
    assert!(enumerate_free_trees(64).is_err());
}
