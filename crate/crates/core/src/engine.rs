//! Rules of the game: legal initiations, responses, move application and
//! terminal detection for the star, stripe and unrooted P3 variants and for
//! small generic patterns.
//!
//! Roles are fixed for the whole game: one player initiates every move and
//! the other answers every initiation with a copy of the pattern. A move is
//! identified by the vertex set it removes, so responses are deduplicated by
//! image.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson, VertexSet};

pub const MAX_PATTERN_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Max => "max",
            Player::Min => "min",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Initiator,
    Responder,
}

/// A connected pattern graph with an optional root, with precomputed
/// backtracking plans for embedding it into a host graph.
#[derive(Clone)]
pub struct GenericPattern {
    f: Graph,
    root: Option<usize>,
    plans: Vec<EmbedPlan>,
}

/// Placement order for one anchor vertex of the pattern: `order[0]` is the
/// anchor and each later vertex lists its already-placed pattern neighbors.
#[derive(Clone, Debug)]
struct EmbedPlan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
}

impl EmbedPlan {
    fn new(f: &Graph, anchor: usize) -> Self {
        let mut order = vec![anchor];
        let mut placed = VertexSet::singleton(anchor);
        while order.len() < f.n() {
            let next = (0..f.n())
                .find(|&x| !placed.contains(x) && !(f.adj(x) & placed).is_empty())
                .expect("pattern is connected");
            order.push(next);
            placed.insert(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &x)| (0..i).filter(|&j| f.has_edge(x, order[j])).collect())
            .collect();
        EmbedPlan { order, back }
    }
}

impl GenericPattern {
    pub fn new(f: Graph, root: Option<usize>) -> Result<Self> {
        if f.n() < 2 || f.n() > MAX_PATTERN_ORDER {
            return Err(Error::param(format!(
                "pattern order must be in 2..={MAX_PATTERN_ORDER}, got {}",
                f.n()
            )));
        }
        if !f.is_connected() {
            return Err(Error::param("pattern graph must be connected"));
        }
        if let Some(r) = root {
            if r >= f.n() {
                return Err(Error::param(format!("root {r} is not a pattern vertex")));
            }
        }
        let plans = match root {
            Some(r) => vec![EmbedPlan::new(&f, r)],
            None => (0..f.n()).map(|x| EmbedPlan::new(&f, x)).collect(),
        };
        Ok(GenericPattern { f, root, plans })
    }

    pub fn graph(&self) -> &Graph {
        &self.f
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// Calls `visit` with the image of every embedding whose anchor maps to
    /// `v` (repeats possible); stops early when `visit` returns `false`.
    fn visit(&self, g: &Graph, avail: VertexSet, v: usize, visit: &mut dyn FnMut(VertexSet) -> bool) {
        if !avail.contains(v) {
            return;
        }
        let mut assign = [0usize; MAX_PATTERN_ORDER];
        for plan in &self.plans {
            assign[0] = v;
            if !extend(plan, g, avail, &mut assign, 1, VertexSet::singleton(v), visit) {
                return;
            }
        }
    }
}

fn extend(
    plan: &EmbedPlan,
    g: &Graph,
    avail: VertexSet,
    assign: &mut [usize; MAX_PATTERN_ORDER],
    depth: usize,
    used: VertexSet,
    visit: &mut dyn FnMut(VertexSet) -> bool,
) -> bool {
    if depth == plan.order.len() {
        return visit(used);
    }
    let mut cands = avail - used;
    for &j in &plan.back[depth] {
        cands = cands & g.adj(assign[j]);
    }
    for c in cands {
        assign[depth] = c;
        if !extend(plan, g, avail, assign, depth + 1, used.with(c), visit) {
            return false;
        }
    }
    true
}

impl fmt::Debug for GenericPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generic({:?}, root={:?})", self.f, self.root)
    }
}

impl PartialEq for GenericPattern {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.root == other.root
    }
}

impl Eq for GenericPattern {}

/// The copy of F the responder must produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// P3 rooted at its center.
    Star,
    /// P3 rooted at an end-vertex.
    Stripe,
    /// P3 with no root: any copy containing the initiated vertex.
    UnrootedP3,
    Generic(GenericPattern),
}

impl Pattern {
    pub fn generic(f: Graph, root: Option<usize>) -> Result<Pattern> {
        Ok(Pattern::Generic(GenericPattern::new(f, root)?))
    }

    /// P3 as a generic pattern, vertices `0-1-2`.
    pub fn p3_generic(root: Option<usize>) -> Pattern {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).expect("P3");
        Pattern::generic(p3, root).expect("P3 pattern")
    }

    /// `|V(F)|`.
    pub fn order(&self) -> usize {
        match self {
            Pattern::Generic(p) => p.f.n(),
            _ => 3,
        }
    }

    pub fn is_p3(&self) -> bool {
        !matches!(self, Pattern::Generic(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pattern::Star => "star",
            Pattern::Stripe => "stripe",
            Pattern::UnrootedP3 => "unrooted",
            Pattern::Generic(_) => "generic",
        }
    }

    /// Whether some response exists at `v`.
    pub fn can_initiate(&self, g: &Graph, avail: VertexSet, v: usize) -> bool {
        if !avail.contains(v) {
            return false;
        }
        let nb = g.adj(v) & avail;
        match self {
            Pattern::Star => nb.len() >= 2,
            Pattern::Stripe => stripe_start(g, avail, v, nb),
            Pattern::UnrootedP3 => nb.len() >= 2 || stripe_start(g, avail, v, nb),
            Pattern::Generic(p) => {
                let mut found = false;
                p.visit(g, avail, v, &mut |_| {
                    found = true;
                    false
                });
                found
            }
        }
    }

    /// All legal initiation vertices.
    pub fn initiations(&self, g: &Graph, avail: VertexSet) -> VertexSet {
        match self {
            Pattern::Star => avail.iter().filter(|&v| (g.adj(v) & avail).len() >= 2).collect(),
            _ => avail.iter().filter(|&v| self.can_initiate(g, avail, v)).collect(),
        }
    }

    /// True when no copy of the pattern remains among `avail`.
    pub fn is_terminal(&self, g: &Graph, avail: VertexSet) -> bool {
        match self {
            // Every P3 has a center with two available neighbors.
            Pattern::Star | Pattern::Stripe | Pattern::UnrootedP3 => {
                !avail.iter().any(|v| (g.adj(v) & avail).len() >= 2)
            }
            Pattern::Generic(_) => !avail.iter().any(|v| self.can_initiate(g, avail, v)),
        }
    }

    /// Visits response images at `v`, possibly with repeats. Used by search
    /// code where duplicates are harmless.
    pub fn for_each_response(&self, g: &Graph, avail: VertexSet, v: usize, mut f: impl FnMut(VertexSet)) {
        if !avail.contains(v) {
            return;
        }
        let nb = g.adj(v) & avail;
        let star = |f: &mut dyn FnMut(VertexSet)| {
            let mut rest = nb;
            while let Some(x) = rest.first() {
                rest.remove(x);
                for y in rest {
                    f(VertexSet::from_vertices([v, x, y]));
                }
            }
        };
        let stripe = |f: &mut dyn FnMut(VertexSet)| {
            for b in nb {
                for c in (g.adj(b) & avail).without(v) {
                    f(VertexSet::from_vertices([v, b, c]));
                }
            }
        };
        match self {
            Pattern::Star => star(&mut f),
            Pattern::Stripe => stripe(&mut f),
            Pattern::UnrootedP3 => {
                star(&mut f);
                stripe(&mut f);
            }
            Pattern::Generic(p) => p.visit(g, avail, v, &mut |img| {
                f(img);
                true
            }),
        }
    }

    /// Distinct response images at `v`, in lexicographic order of their
    /// sorted vertex lists.
    pub fn response_images(&self, g: &Graph, avail: VertexSet, v: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.for_each_response(g, avail, v, |img| out.push(img));
        sort_images(&mut out);
        out
    }

    /// Every copy of the pattern among `avail` (as distinct vertex sets).
    pub fn copies(&self, g: &Graph, avail: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        match self {
            Pattern::Star | Pattern::Stripe | Pattern::UnrootedP3 => {
                for v in avail {
                    Pattern::Star.for_each_response(g, avail, v, |img| out.push(img));
                }
            }
            Pattern::Generic(p) => {
                let anchor = p.root.unwrap_or(0);
                let plan = EmbedPlan::new(&p.f, anchor);
                let mut assign = [0usize; MAX_PATTERN_ORDER];
                for v in avail {
                    assign[0] = v;
                    extend(&plan, g, avail, &mut assign, 1, VertexSet::singleton(v), &mut |img| {
                        out.push(img);
                        true
                    });
                }
            }
        }
        sort_images(&mut out);
        out
    }
}

fn stripe_start(g: &Graph, avail: VertexSet, v: usize, nb: VertexSet) -> bool {
    nb.iter().any(|b| !(g.adj(b) & avail).without(v).is_empty())
}

/// Sorts images by their ascending vertex lists and removes duplicates.
pub fn sort_images(images: &mut Vec<VertexSet>) {
    images.sort_unstable_by_key(|s| s.to_vec());
    images.dedup();
}

/// All distinct images of `F` (rooted at `root` when given) among `avail`
/// that map the root to `v`, or merely contain `v` when unrooted.
pub fn embeddings(f: &Graph, root: Option<usize>, g: &Graph, avail: VertexSet, v: usize) -> Result<Vec<VertexSet>> {
    let p = Pattern::generic(f.clone(), root)?;
    Ok(p.response_images(g, avail, v))
}

/// Pattern variant plus the player who initiates every move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub pattern: Pattern,
    pub initiator: Player,
}

impl GameSpec {
    pub fn new(pattern: Pattern, initiator: Player) -> Self {
        GameSpec { pattern, initiator }
    }

    pub fn responder(&self) -> Player {
        self.initiator.other()
    }

    pub fn player(&self, role: Role) -> Player {
        match role {
            Role::Initiator => self.initiator,
            Role::Responder => self.responder(),
        }
    }

    pub fn role_of(&self, player: Player) -> Role {
        if player == self.initiator {
            Role::Initiator
        } else {
            Role::Responder
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec json")
    }

    pub fn from_json(text: &str) -> Result<GameSpec> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.column(), format!("line {}: {e}", e.line())))
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}-init", self.pattern.name(), self.initiator)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    pattern: String,
    initiator: Player,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    f: Option<GraphJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<usize>,
}

impl Serialize for GameSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (f, root) = match &self.pattern {
            Pattern::Generic(p) => (Some(GraphJson::from(&p.f)), p.root),
            _ => (None, None),
        };
        SpecJson { pattern: self.pattern.name().to_string(), initiator: self.initiator, f, root }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GameSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SpecJson::deserialize(d)?;
        let simple = |p: Pattern| {
            if raw.f.is_some() || raw.root.is_some() {
                Err(D::Error::custom("\"F\" and \"root\" are only allowed for generic patterns"))
            } else {
                Ok(p)
            }
        };
        let pattern = match raw.pattern.as_str() {
            "star" => simple(Pattern::Star)?,
            "stripe" => simple(Pattern::Stripe)?,
            "unrooted" => simple(Pattern::UnrootedP3)?,
            "generic" => {
                let f = raw.f.ok_or_else(|| D::Error::custom("generic pattern needs \"F\""))?;
                let f = Graph::try_from(f).map_err(D::Error::custom)?;
                Pattern::generic(f, raw.root).map_err(D::Error::custom)?
            }
            other => return Err(D::Error::custom(format!("unknown pattern {other:?}"))),
        };
        Ok(GameSpec { pattern, initiator: raw.initiator })
    }
}

/// An initiation vertex and the copy taken in response.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub init: usize,
    pub image: VertexSet,
}

impl Move {
    pub fn new(init: usize, image: VertexSet) -> Self {
        Move { init, image }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("move json")
    }

    pub fn from_json(text: &str) -> Result<Move> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.column(), format!("line {}: {e}", e.line())))
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.init, self.image)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveJson {
    init: usize,
    image: Vec<usize>,
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MoveJson { init: self.init, image: self.image.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MoveJson::deserialize(d)?;
        if raw.init >= 64 || raw.image.iter().any(|&v| v >= 64) {
            return Err(D::Error::custom("vertex id out of range"));
        }
        let image = VertexSet::from_vertices(raw.image.iter().copied());
        if image.len() != raw.image.len() {
            return Err(D::Error::custom("image lists a vertex twice"));
        }
        if !image.contains(raw.init) {
            return Err(D::Error::custom("image must contain the initiation vertex"));
        }
        Ok(Move { init: raw.init, image })
    }
}

/// A position: the graph, the vertices still available and the moves so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    graph: Arc<Graph>,
    available: VertexSet,
    history: Vec<Move>,
}

impl GameState {
    pub fn new(graph: impl Into<Arc<Graph>>) -> Self {
        let graph = graph.into();
        let available = graph.vertices();
        GameState { graph, available, history: Vec::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    pub fn available(&self) -> VertexSet {
        self.available
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn moves_made(&self) -> usize {
        self.history.len()
    }

    pub fn legal_initiations(&self, spec: &GameSpec) -> VertexSet {
        spec.pattern.initiations(&self.graph, self.available)
    }

    pub fn responses(&self, spec: &GameSpec, v: usize) -> Result<Vec<Move>> {
        if !spec.pattern.can_initiate(&self.graph, self.available, v) {
            return Err(Error::IllegalInitiation(v));
        }
        Ok(spec
            .pattern
            .response_images(&self.graph, self.available, v)
            .into_iter()
            .map(|img| Move::new(v, img))
            .collect())
    }

    pub fn is_terminal(&self, spec: &GameSpec) -> bool {
        spec.pattern.is_terminal(&self.graph, self.available)
    }

    /// Whether `mv` is one of the responses to its initiation vertex.
    pub fn is_legal(&self, spec: &GameSpec, mv: &Move) -> bool {
        if !mv.image.contains(mv.init) || !mv.image.is_subset(self.available) {
            return false;
        }
        let mut ok = false;
        spec.pattern.for_each_response(&self.graph, self.available, mv.init, |img| ok |= img == mv.image);
        ok
    }

    pub fn apply(&self, spec: &GameSpec, mv: Move) -> Result<GameState> {
        if !self.is_legal(spec, &mv) {
            return Err(Error::IllegalMove(format!(
                "{:?} at {} is not a {} copy among the available vertices",
                mv.image.to_vec(),
                mv.init,
                spec.pattern.name()
            )));
        }
        let mut next = self.clone();
        next.available = self.available - mv.image;
        next.history.push(mv);
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn claw() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn spec(p: Pattern) -> GameSpec {
        GameSpec::new(p, Player::Min)
    }

    #[test]
    fn initiations_on_p4() {
        let s = GameState::new(path(4));
        assert_eq!(s.legal_initiations(&spec(Pattern::Star)).to_vec(), vec![1, 2]);
        assert_eq!(s.legal_initiations(&spec(Pattern::Stripe)).to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn initiations_on_claw() {
        let s = GameState::new(claw());
        assert_eq!(s.legal_initiations(&spec(Pattern::UnrootedP3)).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(s.legal_initiations(&spec(Pattern::Stripe)).to_vec(), vec![1, 2, 3]);
        assert_eq!(s.legal_initiations(&spec(Pattern::Star)).to_vec(), vec![0]);
    }

    #[test]
    fn response_examples() {
        let p5 = GameState::new(path(5));
        let r = p5.responses(&spec(Pattern::Star), 2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].image.to_vec(), vec![1, 2, 3]);

        let c = GameState::new(claw());
        assert_eq!(c.responses(&spec(Pattern::Star), 0).unwrap().len(), 3);

        let c4 = GameState::new(Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        let r: Vec<_> = c4.responses(&spec(Pattern::Stripe), 0).unwrap().iter().map(|m| m.image.to_vec()).collect();
        assert_eq!(r, vec![vec![0, 1, 2], vec![0, 2, 3]]);

        assert_eq!(p5.responses(&spec(Pattern::Star), 0), Err(Error::IllegalInitiation(0)));
    }

    #[test]
    fn apply_and_terminal() {
        let sp = spec(Pattern::Star);
        let p3 = GameState::new(path(3));
        let after = p3.apply(&sp, Move::new(1, VertexSet::from_vertices([0, 1, 2]))).unwrap();
        assert!(after.is_terminal(&sp));

        let p4 = GameState::new(path(4));
        let after = p4.apply(&sp, Move::new(2, VertexSet::from_vertices([1, 2, 3]))).unwrap();
        assert_eq!(after.available().to_vec(), vec![0]);
        assert!(after.is_terminal(&sp));

        let grid = GameState::new(Graph::new(4, &[(0, 1), (2, 3), (0, 2), (1, 3)]).unwrap());
        for v in grid.legal_initiations(&sp) {
            for m in grid.responses(&sp, v).unwrap() {
                let next = grid.apply(&sp, m).unwrap();
                assert_eq!(next.available().len(), 1);
                assert!(next.is_terminal(&sp));
            }
        }

        let bad = Move::new(0, VertexSet::from_vertices([0, 1, 2]));
        assert!(matches!(p4.apply(&sp, bad), Err(Error::IllegalMove(_))));
    }

    #[test]
    fn generic_embedding_examples() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let p3 = path(3);
        let imgs = embeddings(&k2, Some(0), &p3, p3.vertices(), 1).unwrap();
        assert_eq!(imgs.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 2]]);

        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let imgs = embeddings(&path(3), Some(1), &k3, k3.vertices(), 0).unwrap();
        assert_eq!(imgs.len(), 1);
        assert_eq!(imgs[0].to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn generic_pattern_validation() {
        let disconnected = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(Pattern::generic(disconnected, None).is_err());
        assert!(Pattern::generic(path(9), None).is_err());
        assert!(Pattern::generic(path(3), Some(3)).is_err());
        assert!(Pattern::generic(Graph::empty(1).unwrap(), None).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let s = GameSpec::new(Pattern::Stripe, Player::Min);
        assert_eq!(s.to_json(), r#"{"pattern":"stripe","initiator":"min"}"#);
        assert_eq!(GameSpec::from_json(&s.to_json()).unwrap(), s);
        let g = GameSpec::new(Pattern::generic(claw(), Some(0)).unwrap(), Player::Max);
        assert_eq!(GameSpec::from_json(&g.to_json()).unwrap(), g);
        assert!(GameSpec::from_json(r#"{"pattern":"star","initiator":"max","root":0}"#).is_err());
        assert!(GameSpec::from_json(r#"{"pattern":"kite","initiator":"max"}"#).is_err());
    }

    #[test]
    fn move_json() {
        let m = Move::new(2, VertexSet::from_vertices([2, 3, 4]));
        assert_eq!(m.to_json(), r#"{"init":2,"image":[2,3,4]}"#);
        assert_eq!(Move::from_json(&m.to_json()).unwrap(), m);
        assert!(Move::from_json(r#"{"init":1,"image":[2,3,4]}"#).is_err());
        assert!(Move::from_json(r#"{"init":2,"image":[2,2,4]}"#).is_err());
        assert!(Move::from_json(r#"{"init":2,"image":[2,3,99]}"#).is_err());
    }
}
