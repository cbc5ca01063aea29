//! Immutable simple graphs on at most 64 vertices.
//!
//! Every vertex keeps its neighborhood as a single `u64` mask, so the
//! "remaining vertices" of a game are one machine word and set operations
//! are single instructions.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids packed into one word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A simple undirected graph with vertex ids `0..n`, `n <= 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph; duplicate edges collapse, endpoint order is irrelevant.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, &[])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Neighbors of `v` inside `s`; empty when `v` itself is not in `s`.
    #[inline]
    pub fn neighbors_in(&self, v: usize, s: VertexSet) -> VertexSet {
        if !s.contains(v) {
            return VertexSet::EMPTY;
        }
        self.adj[v] & s
    }

    #[inline]
    pub fn degree_in(&self, v: usize, s: VertexSet) -> usize {
        self.neighbors_in(v, s).len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Connected components of the subgraph induced by `s`, ordered by lowest vertex.
    pub fn components_in(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut comps = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.reach(start, s);
            rest = rest - comp;
            comps.push(comp);
        }
        comps
    }

    /// Vertices reachable from `start` inside `s`.
    pub fn reach(&self, start: usize, s: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start) & s;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.adj[v];
            }
            frontier = next & s - seen;
            seen = seen | frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertices()) == self.vertices()
    }

    /// Acyclic: every component with `k` vertices has `k - 1` edges.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components_in(self.vertices()).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() + 1 == self.n && self.is_connected()
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| (self.adj[v] & s).len()).sum::<usize>() / 2
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::param("permutation length differs from vertex count"));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges)
    }

    /// Subgraph induced by `s`, relabeled to `0..|s|` in ascending order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let order = s.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| s.contains(u) && s.contains(v))
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(order.len(), &edges).expect("induced subgraph is valid")
    }

    /// Serializes as `{"n":..,"edges":[[u,v],..]}` with sorted edges.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph json")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column(), format!("line {}: {e}", e.line())))?;
        raw.try_into()
    }

    /// Plain-text form: `n m` then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .scan(0usize, |offset, line| {
                let start = *offset;
                *offset += line.len() + 1;
                Some((start, line.trim()))
            })
            .filter(|(_, l)| !l.is_empty());
        let (pos, header) = lines.next().ok_or_else(|| Error::parse(0, "missing header line"))?;
        let (n, m) = parse_pair(header, pos)?;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut edges = Vec::with_capacity(m.min(MAX_VERTICES * MAX_VERTICES));
        for _ in 0..m {
            let (pos, line) = lines
                .next()
                .ok_or_else(|| Error::parse(text.len(), format!("expected {m} edge lines")))?;
            edges.push(parse_pair(line, pos)?);
        }
        if let Some((pos, _)) = lines.next() {
            return Err(Error::parse(pos, "trailing data after edge list"));
        }
        Graph::new(n, &edges)
    }

    /// Reads either the JSON or the edge-list form, chosen by the first character.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_edge_list(text)
        }
    }
}

fn parse_pair(line: &str, pos: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut field = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::parse(pos, format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| Error::parse(pos, format!("bad integer {tok:?}")))
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if it.next().is_some() {
        return Err(Error::parse(pos, "expected exactly two integers"));
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(raw: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(raw.n, &edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let p3 = path(3);
        assert_eq!(p3.degree_sequence(), vec![1, 2, 1]);
        let empty = Graph::new(0, &[]).unwrap();
        assert_eq!(empty.n(), 0);
        assert!(empty.edges().is_empty());
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.degree_sequence().iter().all(|&d| d == 2));
    }

    #[test]
    fn make_graph_errors() {
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { u: 0, v: 2, n: 2 }));
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::new(65, &[]), Err(Error::TooManyVertices(65)));
        assert!(Graph::new(64, &[(0, 63)]).is_ok());
    }

    #[test]
    fn neighbors_restricted_to_available() {
        let p4 = path(4);
        assert_eq!(p4.neighbors_in(1, VertexSet::full(4)).to_vec(), vec![0, 2]);
        assert_eq!(p4.neighbors_in(1, VertexSet::from_vertices([0, 1, 3])).to_vec(), vec![0]);
        assert!(p4.neighbors_in(1, VertexSet::EMPTY).is_empty());
    }

    #[test]
    fn full_set_at_word_boundary() {
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(0).len(), 0);
        let g = Graph::new(64, &[(62, 63)]).unwrap();
        assert_eq!(g.adj(63).to_vec(), vec![62]);
    }

    #[test]
    fn forest_and_tree_checks() {
        assert!(path(5).is_tree());
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!c4.is_forest());
        let two = Graph::new(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(two.is_forest() && !two.is_tree());
        assert_eq!(two.components_in(two.vertices()).len(), 2);
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let g = Graph::new(4, &[(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":4,"edges":[[0,1],[0,2],[2,3]]}"#);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert!(matches!(Graph::from_json(r#"{"n":2,"edges":[[0,0]]}"#), Err(Error::SelfLoop(0))));
        assert!(matches!(Graph::from_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn edge_list_format() {
        let g = path(3);
        assert_eq!(g.to_edge_list(), "3 2\n0 1\n1 2\n");
        assert_eq!(Graph::from_edge_list("3 2\n1 2\n0 1\n").unwrap(), g);
        assert!(matches!(Graph::from_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::from_edge_list("3 1\n0 x\n"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(Graph::from_edge_list("3 1\n0 1\n1 2\n"), Err(Error::Parse { .. })));
        assert_eq!(Graph::parse_any(" {\"n\":3,\"edges\":[[0,1],[1,2]]}").unwrap(), g);
    }
}
