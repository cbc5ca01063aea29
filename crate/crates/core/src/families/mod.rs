//! Generators for the graph families studied in the game, recognizers for
//! the perfect-tree families, and closed-form values.

mod closed_form;
mod recognize;
mod specifier;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson};

pub use closed_form::{closed_form, recurrence_f, Prediction};
pub use recognize::{in_family_d, in_family_e, in_family_f};
pub use specifier::parse_family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Path,
    Cycle,
    CompleteBipartite,
    Grid,
    Comb,
    DoubleCoronaComplete,
    Caterpillar,
    FamilyD,
    FamilyE,
    FamilyF,
    MopFan6,
    MopSnake6,
    MopSun6,
    MopCustom,
    Rooks2,
    ClawGadget,
}

/// A named vertex role: either a plain vertex list or a list of rows
/// (grid rows, P3 copies, edge pairs).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Label {
    Vertices(Vec<usize>),
    Rows(Vec<Vec<usize>>),
}

impl Label {
    pub fn vertices(&self) -> &[usize] {
        match self {
            Label::Vertices(v) => v,
            Label::Rows(_) => &[],
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        match self {
            Label::Rows(r) => r,
            Label::Vertices(_) => &[],
        }
    }
}

/// One step of a randomized construction: the P3 added (in role order) and
/// the edges joining it to earlier components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub p3: [usize; 3],
    pub attachments: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub tag: FamilyTag,
    pub params: BTreeMap<String, usize>,
    pub seed: Option<u64>,
    pub graph: Graph,
    pub labels: BTreeMap<String, Label>,
    pub trace: Vec<TraceStep>,
}

impl FamilyInstance {
    fn new(tag: FamilyTag, params: &[(&str, usize)], graph: Graph) -> Self {
        FamilyInstance {
            tag,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            seed: None,
            graph,
            labels: BTreeMap::new(),
            trace: Vec::new(),
        }
    }

    fn label(mut self, name: &str, label: Label) -> Self {
        self.labels.insert(name.to_string(), label);
        self
    }

    pub fn param(&self, name: &str) -> Option<usize> {
        self.params.get(name).copied()
    }

    pub fn labeled(&self, name: &str) -> Option<&Label> {
        self.labels.get(name)
    }

    /// Short human-readable name such as `grid:2x9`.
    pub fn key(&self) -> String {
        let p = |k: &str| self.param(k).unwrap_or(0);
        match self.tag {
            FamilyTag::Path => format!("path:{}", p("n")),
            FamilyTag::Cycle => format!("cycle:{}", p("n")),
            FamilyTag::CompleteBipartite => format!("kbip:{}x{}", p("r"), p("s")),
            FamilyTag::Grid => format!("grid:{}x{}", p("rows"), p("cols")),
            FamilyTag::Comb => format!("comb:{}", p("m")),
            FamilyTag::DoubleCoronaComplete => format!("corona:{}", p("m")),
            FamilyTag::Caterpillar => format!("caterpillar:{}", p("m")),
            FamilyTag::FamilyD => format!("familyD:seed={},m={}", self.seed.unwrap_or(0), p("m")),
            FamilyTag::FamilyE => format!("familyE:seed={},k={}", self.seed.unwrap_or(0), p("k")),
            FamilyTag::FamilyF => format!("familyF:seed={},k={}", self.seed.unwrap_or(0), p("k")),
            FamilyTag::MopFan6 => "mop:fan6".into(),
            FamilyTag::MopSnake6 => "mop:snake6".into(),
            FamilyTag::MopSun6 => "mop:sun6".into(),
            FamilyTag::MopCustom => format!("mop:n={}", p("n")),
            FamilyTag::Rooks2 => format!("rooks2:{}", p("m")),
            FamilyTag::ClawGadget => "claw".into(),
        }
    }

    /// Graph JSON plus a `"labels"` object.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            graph: GraphJson,
            labels: &'a BTreeMap<String, Label>,
        }
        serde_json::to_string(&Out { graph: GraphJson::from(&self.graph), labels: &self.labels }).expect("family json")
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn at_least(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::param(format!("{name} must be at least {min}, got {value}")))
    } else {
        Ok(())
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges)
}

fn pairs(edges: &[(usize, usize)]) -> Label {
    Label::Rows(edges.iter().map(|&(a, b)| vec![a, b]).collect())
}

/// `m` disjoint P3 copies numbered `(3i, 3i+1, 3i+2)` as paths.
fn p3_copies(m: usize) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let mut edges = Vec::with_capacity(2 * m);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        edges.push((3 * i, 3 * i + 1));
        edges.push((3 * i + 1, 3 * i + 2));
        rows.push(vec![3 * i, 3 * i + 1, 3 * i + 2]);
    }
    (edges, rows)
}

pub fn gen_path(n: usize) -> Result<FamilyInstance> {
    at_least("n", n, 1)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(FamilyInstance::new(FamilyTag::Path, &[("n", n)], build(n, &edges)?)
        .label("path", Label::Vertices((0..n).collect())))
}

pub fn gen_cycle(n: usize) -> Result<FamilyInstance> {
    at_least("n", n, 3)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(FamilyInstance::new(FamilyTag::Cycle, &[("n", n)], build(n, &edges)?)
        .label("cycle", Label::Vertices((0..n).collect())))
}

/// Side `a` is `0..r`, side `b` is `r..r+s`.
pub fn gen_complete_bipartite(r: usize, s: usize) -> Result<FamilyInstance> {
    at_least("r", r, 1)?;
    at_least("s", s, 1)?;
    let edges: Vec<_> = (0..r).flat_map(|a| (r..r + s).map(move |b| (a, b))).collect();
    Ok(FamilyInstance::new(FamilyTag::CompleteBipartite, &[("r", r), ("s", s)], build(r + s, &edges)?)
        .label("side_a", Label::Vertices((0..r).collect()))
        .label("side_b", Label::Vertices((r..r + s).collect())))
}

/// `m` P3 teeth `(3i, 3i+1, 3i+2)` whose first ends `3i` form a path (the spine).
pub fn gen_comb(m: usize) -> Result<FamilyInstance> {
    at_least("m", m, 1)?;
    let (mut edges, rows) = p3_copies(m);
    edges.extend((1..m).map(|i| (3 * (i - 1), 3 * i)));
    Ok(FamilyInstance::new(FamilyTag::Comb, &[("m", m)], build(3 * m, &edges)?)
        .label("spine", Label::Vertices((0..m).map(|i| 3 * i).collect()))
        .label("teeth", Label::Rows(rows)))
}

/// `m` P3 copies with centers `3i+1` joined into a clique.
pub fn gen_double_corona_complete(m: usize) -> Result<FamilyInstance> {
    at_least("m", m, 1)?;
    let (mut edges, rows) = p3_copies(m);
    for i in 0..m {
        for j in i + 1..m {
            edges.push((3 * i + 1, 3 * j + 1));
        }
    }
    Ok(FamilyInstance::new(FamilyTag::DoubleCoronaComplete, &[("m", m)], build(3 * m, &edges)?)
        .label("centers", Label::Vertices((0..m).map(|i| 3 * i + 1).collect()))
        .label("copies", Label::Rows(rows)))
}

/// `m` 2-stars with centers `3i+1` joined into a path.
pub fn gen_caterpillar(m: usize) -> Result<FamilyInstance> {
    at_least("m", m, 1)?;
    let (mut edges, rows) = p3_copies(m);
    edges.extend((1..m).map(|i| (3 * i - 2, 3 * i + 1)));
    Ok(FamilyInstance::new(FamilyTag::Caterpillar, &[("m", m)], build(3 * m, &edges)?)
        .label("spine", Label::Vertices((0..m).map(|i| 3 * i + 1).collect()))
        .label("copies", Label::Rows(rows)))
}

/// Random member of 𝒟: `m` 2-stars, then acyclic edges between centers.
/// Each center after the first joins a uniformly chosen earlier center with
/// probability 3/4.
pub fn gen_family_d(seed: u64, m: usize) -> Result<FamilyInstance> {
    at_least("m", m, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut edges, rows) = p3_copies(m);
    let mut trace = vec![TraceStep { p3: [0, 1, 2], attachments: vec![] }];
    for i in 1..m {
        let mut attachments = Vec::new();
        if rng.gen_bool(0.75) {
            let j = rng.gen_range(0..i);
            attachments.push((3 * j + 1, 3 * i + 1));
        }
        edges.extend(&attachments);
        trace.push(TraceStep { p3: [3 * i, 3 * i + 1, 3 * i + 2], attachments });
    }
    let mut inst = FamilyInstance::new(FamilyTag::FamilyD, &[("m", m)], build(3 * m, &edges)?)
        .label("centers", Label::Vertices((0..m).map(|i| 3 * i + 1).collect()))
        .label("copies", Label::Rows(rows));
    inst.seed = Some(seed);
    inst.trace = trace;
    Ok(inst)
}

/// Shared P3-attachment construction for 𝒠 and ℱ. Step `t` adds the path
/// `3t - 3t+1 - 3t+2`; `ports` lists which of its vertices may take edges.
/// For every existing component, with probability 1/2, one edge joins a
/// random port to a random vertex of that component.
fn attach_p3s(seed: u64, k: usize, ports: &[usize]) -> (Vec<(usize, usize)>, Vec<TraceStep>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut trace = Vec::with_capacity(k);
    let mut components: Vec<Vec<usize>> = Vec::new();
    for t in 0..k {
        let p3 = [3 * t, 3 * t + 1, 3 * t + 2];
        edges.push((p3[0], p3[1]));
        edges.push((p3[1], p3[2]));
        let mut merged = p3.to_vec();
        let mut attachments = Vec::new();
        let mut kept = Vec::new();
        for comp in components.drain(..) {
            if rng.gen_bool(0.5) {
                let port = p3[ports[rng.gen_range(0..ports.len())]];
                let other = comp[rng.gen_range(0..comp.len())];
                attachments.push((other, port));
                merged.extend(comp);
            } else {
                kept.push(comp);
            }
        }
        kept.push(merged);
        components = kept;
        edges.extend(&attachments);
        trace.push(TraceStep { p3, attachments });
    }
    (edges, trace)
}

/// Random member of 𝒠: P3s added one at a time, attached through their ends only.
pub fn gen_family_e(seed: u64, k: usize) -> Result<FamilyInstance> {
    at_least("k", k, 1)?;
    let (edges, trace) = attach_p3s(seed, k, &[0, 2]);
    let rows = trace.iter().map(|s| s.p3.to_vec()).collect();
    let mut inst = FamilyInstance::new(FamilyTag::FamilyE, &[("k", k)], build(3 * k, &edges)?)
        .label("copies", Label::Rows(rows));
    inst.seed = Some(seed);
    inst.trace = trace;
    Ok(inst)
}

/// Random member of ℱ: P3s added one at a time, attached through the
/// designated end `3t` only.
pub fn gen_family_f(seed: u64, k: usize) -> Result<FamilyInstance> {
    at_least("k", k, 1)?;
    let (edges, trace) = attach_p3s(seed, k, &[0]);
    let rows = trace.iter().map(|s| s.p3.to_vec()).collect();
    let mut inst = FamilyInstance::new(FamilyTag::FamilyF, &[("k", k)], build(3 * k, &edges)?)
        .label("copies", Label::Rows(rows))
        .label("designated", Label::Vertices((0..k).map(|t| 3 * t).collect()));
    inst.seed = Some(seed);
    inst.trace = trace;
    Ok(inst)
}

/// `rows × cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<FamilyInstance> {
    at_least("rows", rows, 1)?;
    at_least("cols", cols, 1)?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let layout = (0..rows).map(|r| (0..cols).map(|c| id(r, c)).collect()).collect();
    Ok(FamilyInstance::new(FamilyTag::Grid, &[("rows", rows), ("cols", cols)], build(rows * cols, &edges)?)
        .label("rows", Label::Rows(layout)))
}

/// Two `K_m`s (top `0..m`, bottom `m..2m`) plus the cross-edges `i-m+i`.
pub fn gen_rooks2(m: usize) -> Result<FamilyInstance> {
    at_least("m", m, 1)?;
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            edges.push((i, j));
            edges.push((m + i, m + j));
        }
    }
    let cross: Vec<_> = (0..m).map(|i| (i, m + i)).collect();
    edges.extend(&cross);
    Ok(FamilyInstance::new(FamilyTag::Rooks2, &[("m", m)], build(2 * m, &edges)?)
        .label("top", Label::Vertices((0..m).collect()))
        .label("bottom", Label::Vertices((m..2 * m).collect()))
        .label("cross_edges", pairs(&cross)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MopKind {
    Fan6,
    Snake6,
    Sun6,
}

impl MopKind {
    pub fn chords(self) -> &'static [(usize, usize)] {
        match self {
            MopKind::Fan6 => &[(0, 2), (0, 3), (0, 4)],
            MopKind::Snake6 => &[(0, 2), (0, 3), (3, 5)],
            MopKind::Sun6 => &[(0, 2), (2, 4), (0, 4)],
        }
    }
}

pub fn gen_mop(kind: MopKind) -> Result<FamilyInstance> {
    let mut inst = gen_mop_custom(6, kind.chords())?;
    inst.tag = match kind {
        MopKind::Fan6 => FamilyTag::MopFan6,
        MopKind::Snake6 => FamilyTag::MopSnake6,
        MopKind::Sun6 => FamilyTag::MopSun6,
    };
    Ok(inst)
}

/// Maximal outerplanar graph: cycle `0..n` plus `n - 3` noncrossing chords.
pub fn gen_mop_custom(n: usize, chords: &[(usize, usize)]) -> Result<FamilyInstance> {
    at_least("n", n, 3)?;
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    if chords.len() != n - 3 {
        return Err(Error::param(format!("a MOP on {n} vertices needs {} chords, got {}", n - 3, chords.len())));
    }
    let norm: Vec<(usize, usize)> = chords.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for &(a, b) in &norm {
        if b >= n {
            return Err(Error::VertexOutOfRange { u: a, v: b, n });
        }
        if b - a < 2 || (a == 0 && b == n - 1) {
            return Err(Error::param(format!("({a}, {b}) is not a chord of the outer cycle")));
        }
    }
    for (i, &(a, b)) in norm.iter().enumerate() {
        for &(c, d) in &norm[i + 1..] {
            if (a, b) == (c, d) {
                return Err(Error::param(format!("chord ({a}, {b}) repeated")));
            }
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(Error::param(format!("chords ({a}, {b}) and ({c}, {d}) cross")));
            }
        }
    }
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend(&norm);
    Ok(FamilyInstance::new(FamilyTag::MopCustom, &[("n", n)], build(n, &edges)?)
        .label("outer_cycle", Label::Vertices((0..n).collect()))
        .label("chords", pairs(&norm)))
}

/// Three claws (center `4i`, leaves `4i+1..4i+3`) plus apex 12 joined to leaf `4i+1` of each.
pub fn gen_claw_gadget() -> Result<FamilyInstance> {
    let mut edges = Vec::new();
    let mut claws = Vec::new();
    for i in 0..3 {
        let c = 4 * i;
        edges.extend([(c, c + 1), (c, c + 2), (c, c + 3)]);
        edges.push((c + 1, 12));
        claws.push(vec![c, c + 1, c + 2, c + 3]);
    }
    Ok(FamilyInstance::new(FamilyTag::ClawGadget, &[], build(13, &edges)?)
        .label("apex", Label::Vertices(vec![12]))
        .label("centers", Label::Vertices(vec![0, 4, 8]))
        .label("claws", Label::Rows(claws)))
}
