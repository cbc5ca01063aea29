//! Verification suites: solver values checked against closed forms,
//! recognizers, packing bounds and scripted-strategy guarantees.
//!
//! Every suite produces a [`VerificationReport`] of rows
//! `(instance, game, predicted, computed, pass)` with text and JSON
//! renderings.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{GameSpec, GameState, Pattern, Player, Role};
use crate::error::{Error, Result};
use crate::families::*;
use crate::graph::{Graph, VertexSet};
use crate::packing::{has_k3_partition, min_maximal, mu};
use crate::random::gnp;
use crate::solver::{solve, solve_with, SolveOptions};
use crate::strategies::{check_guarantee, rooks_row_counts, scripted, Bound, OptimalStrategy, run_match};
use crate::tree::enumerate_free_trees;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub game: String,
    pub predicted: String,
    pub computed: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ReportRow {
    pub fn equal(instance: impl Into<String>, game: impl ToString, predicted: usize, computed: usize) -> Self {
        ReportRow {
            instance: instance.into(),
            game: game.to_string(),
            predicted: predicted.to_string(),
            computed: computed.to_string(),
            pass: predicted == computed,
            detail: None,
        }
    }

    pub fn check(
        instance: impl Into<String>,
        game: impl ToString,
        predicted: impl ToString,
        computed: impl ToString,
        pass: bool,
    ) -> Self {
        ReportRow {
            instance: instance.into(),
            game: game.to_string(),
            predicted: predicted.to_string(),
            computed: computed.to_string(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: Option<String>) -> Self {
        self.detail = detail;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub claim: String,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Builds a report, sorting rows by instance key (numbers compared by
    /// value) and then by game.
    pub fn new(suite: impl Into<String>, claim: impl Into<String>, mut rows: Vec<ReportRow>) -> Self {
        rows.sort_by(|a, b| natural_cmp(&a.instance, &b.instance).then_with(|| a.game.cmp(&b.game)));
        let passed = rows.iter().filter(|r| r.pass).count();
        let summary = Summary { total: rows.len(), passed, failed: rows.len() - passed };
        VerificationReport { suite: suite.into(), claim: claim.into(), rows, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report json")
    }

    pub fn to_text(&self) -> String {
        let headers = ["instance", "game", "predicted", "computed", "verdict"];
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                let verdict = if r.pass { "pass" } else { "FAIL" };
                [r.instance.clone(), r.game.clone(), r.predicted.clone(), r.computed.clone(), verdict.to_string()]
            })
            .collect();
        let mut width = headers.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "== {}: {}", self.suite, self.claim);
        let line = |out: &mut String, cols: &[String]| {
            let parts: Vec<String> = cols.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "  {}", parts.join("  ").trim_end());
        };
        line(&mut out, &headers.map(String::from));
        for (row, r) in cells.iter().zip(&self.rows) {
            line(&mut out, row);
            if let (false, Some(d)) = (r.pass, &r.detail) {
                let _ = writeln!(out, "    {d}");
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "  {} rows, {} passed, {} failed", s.total, s.passed, s.failed);
        out
    }
}

/// Several reports with an overall verdict.
#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub passed: bool,
    pub suites: Vec<VerificationReport>,
}

impl AggregateReport {
    pub fn new(suites: Vec<VerificationReport>) -> Self {
        AggregateReport { passed: suites.iter().all(|s| s.passed()), suites }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report json")
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.suites.iter().map(|s| s.to_text() + "\n").collect();
        for s in &self.suites {
            let _ = writeln!(out, "{:<5} {}", if s.passed() { "pass" } else { "FAIL" }, s.suite);
        }
        out
    }
}

/// Compares strings chunk by chunk, digit runs by numeric value.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

fn spec(pattern: Pattern, initiator: Player) -> GameSpec {
    GameSpec::new(pattern, initiator)
}

fn value(g: &Graph, pattern: &Pattern, initiator: Player) -> Result<usize> {
    Ok(solve(g, &spec(pattern.clone(), initiator))?.value)
}

const P3_PATTERNS: [Pattern; 2] = [Pattern::Star, Pattern::Stripe];

/// Rows comparing the solver with [`closed_form`] for each instance and
/// game. Unresolved cells show the solver value and pass.
pub fn table(instances: &[FamilyInstance], games: &[GameSpec], opts: &SolveOptions) -> Result<VerificationReport> {
    let cells: Vec<(&FamilyInstance, &GameSpec)> =
        instances.iter().flat_map(|i| games.iter().map(move |g| (i, g))).collect();
    let rows = cells
        .par_iter()
        .map(|&(inst, game)| {
            let computed = solve_with(&inst.graph, game, opts)?.value;
            Ok(match closed_form(inst, game) {
                Prediction::Value(p) => ReportRow::equal(inst.key(), game, p, computed),
                Prediction::Unresolved => ReportRow::check(inst.key(), game, "unresolved", computed, true),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("table", "solver value against the closed form of each family", rows))
}

/// Expands one `{a..b}` range in a family specifier, e.g.
/// `grid:2x{2..7}`. Specifiers without a range expand to themselves.
pub fn expand_range(template: &str) -> Result<Vec<String>> {
    let Some(open) = template.find('{') else { return Ok(vec![template.to_string()]) };
    let close = template[open..]
        .find('}')
        .map(|i| open + i)
        .ok_or_else(|| Error::parse(open, "unclosed '{'"))?;
    let inner = &template[open + 1..close];
    let (a, b) = inner.split_once("..").ok_or_else(|| Error::parse(open + 1, "expected a range like {2..7}"))?;
    let num = |s: &str, at: usize| s.trim().parse::<usize>().map_err(|_| Error::parse(at, "expected an integer"));
    let (a, b) = (num(a, open + 1)?, num(b, open + 3 + a.len())?);
    if a > b || b - a > 1000 {
        return Err(Error::parse(open, format!("empty or oversized range {a}..{b}")));
    }
    Ok((a..=b).map(|k| format!("{}{k}{}", &template[..open], &template[close + 1..])).collect())
}

/// Which recognizer characterizes perfect trees for a rooted P3 game.
fn tree_recognizer(game: &GameSpec) -> Result<(&'static str, fn(&Graph) -> bool)> {
    fn d(g: &Graph) -> bool {
        in_family_d(g).unwrap_or(false)
    }
    fn e(g: &Graph) -> bool {
        in_family_e(g).unwrap_or(false)
    }
    fn f(g: &Graph) -> bool {
        in_family_f(g).unwrap_or(false)
    }
    fn only_p3(g: &Graph) -> bool {
        g.n() == 3 && g.is_tree()
    }
    match (&game.pattern, game.initiator) {
        (Pattern::Star, Player::Min) => Ok(("family D", d)),
        (Pattern::Stripe, Player::Min) => Ok(("only P3", only_p3)),
        (Pattern::Star, Player::Max) => Ok(("family E", e)),
        (Pattern::Stripe, Player::Max) => Ok(("family F", f)),
        _ => Err(Error::param(format!("no tree characterization for {game}"))),
    }
}

/// For every free tree of each order in `ns`, compares the solver's
/// perfection flag with the recognizer for `game`.
pub fn tree_scan(ns: &[usize], game: &GameSpec) -> Result<VerificationReport> {
    let (name, recognizer) = tree_recognizer(game)?;
    let mut rows = Vec::new();
    for &n in ns {
        let trees = enumerate_free_trees(n)?;
        let flags = trees
            .par_iter()
            .map(|t| Ok((solve(t, game)?.perfect, recognizer(t))))
            .collect::<Result<Vec<_>>>()?;
        let perfect = flags.iter().filter(|f| f.0).count();
        let members = flags.iter().filter(|f| f.1).count();
        let mismatches: Vec<String> = trees
            .iter()
            .zip(&flags)
            .filter(|(_, f)| f.0 != f.1)
            .map(|(t, f)| format!("perfect={} recognized={} edges={:?}", f.0, f.1, t.edges()))
            .collect();
        let detail = (!mismatches.is_empty()).then(|| mismatches.join("; "));
        rows.push(
            ReportRow::check(
                format!("trees n={n} ({})", trees.len()),
                game,
                format!("{members} in {name}"),
                format!("{perfect} perfect"),
                mismatches.is_empty(),
            )
            .with_detail(detail),
        );
    }
    Ok(VerificationReport::new("tree-scan", format!("perfect trees are exactly {name}"), rows))
}

/// Paths, stripe game, Minimizer initiating.
pub fn suite_paths_stripe() -> Result<VerificationReport> {
    let game = spec(Pattern::Stripe, Player::Min);
    let insts: Vec<_> = (3..=16).map(gen_path).collect::<Result<_>>()?;
    let mut report = table(&insts, &[game], &SolveOptions::default())?;
    report.suite = "paths-stripe".into();
    report.claim = "stripe game on P_n with Minimizer initiating has value floor((n+1)/4), n = 3..16".into();
    Ok(report)
}

/// Paths, star game, both initiators, plus the minimum maximal packing.
pub fn suite_paths_star() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for n in 3..=16 {
        let inst = gen_path(n)?;
        let min_game = spec(Pattern::Star, Player::Min);
        let max_game = spec(Pattern::Star, Player::Max);
        let v_min = solve(&inst.graph, &min_game)?.value;
        let v_max = solve(&inst.graph, &max_game)?.value;
        rows.push(ReportRow::equal(inst.key(), &min_game, (n + 2) / 5, v_min));
        rows.push(ReportRow::equal(inst.key(), "min maximal packing", (n + 2) / 5, min_maximal(&inst.graph, &Pattern::Star)?.size));
        rows.push(ReportRow::equal(inst.key(), &max_game, n / 3, v_max));
        let mut hand = scripted("path-star", &inst, &max_game)?;
        let mut opt = OptimalStrategy::new(inst.graph.clone(), &max_game)?;
        let forced = run_match(&inst.graph, &max_game, &mut hand, &mut opt)?.value;
        rows.push(ReportRow::equal(inst.key(), "path-star script vs optimal", n / 3, forced));
    }
    Ok(VerificationReport::new(
        "paths-star",
        "star game on P_n: floor((n+2)/5) with Minimizer initiating (the minimum maximal packing), floor(n/3) with Maximizer initiating",
        rows,
    ))
}

/// The path recurrence against its closed form and the solver.
pub fn suite_recurrence() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for n in 3..=40 {
        rows.push(ReportRow::equal(format!("f({n})"), "closed form", (n + 1) / 4, recurrence_f(n)));
        if n <= 16 {
            rows.push(ReportRow::equal(format!("f({n})"), "path solver", value(&gen_path(n)?.graph, &Pattern::Stripe, Player::Min)?, recurrence_f(n)));
        }
    }
    Ok(VerificationReport::new("recurrence", "the path recurrence with the +1 term solves to floor((n+1)/4)", rows))
}

/// Complete bipartite graphs for both rooted games and initiators.
pub fn suite_complete_bipartite() -> Result<VerificationReport> {
    let mut insts = Vec::new();
    for r in 1..=3 {
        for s in r.max(2)..=5 {
            insts.push(gen_complete_bipartite(r, s)?);
        }
    }
    let games: Vec<GameSpec> =
        P3_PATTERNS.iter().flat_map(|p| [Player::Max, Player::Min].map(|w| spec(p.clone(), w))).collect();
    let mut report = table(&insts, &games, &SolveOptions::default())?;
    report.suite = "complete-bipartite".into();
    report.claim = "K_{r,s}: min(r, floor((r+s)/3)) with Maximizer initiating, ceil(r/2) with Minimizer initiating".into();
    Ok(report)
}

/// Comb, double corona and caterpillar constructions.
pub fn suite_sharpness() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for m in 2..=4 {
        let comb = gen_comb(m)?;
        let cat = gen_caterpillar(m)?;
        for p in &P3_PATTERNS {
            let g = spec(p.clone(), Player::Min);
            rows.push(ReportRow::equal(comb.key(), &g, m.div_ceil(2), solve(&comb.graph, &g)?.value));
            let g = spec(p.clone(), Player::Max);
            rows.push(ReportRow::equal(cat.key(), &g, m.div_ceil(2), solve(&cat.graph, &g)?.value));
        }
    }
    for m in [3, 6] {
        let corona = gen_double_corona_complete(m)?;
        let g = spec(Pattern::Star, Player::Max);
        rows.push(ReportRow::equal(corona.key(), &g, m.div_ceil(3), solve(&corona.graph, &g)?.value));
    }
    Ok(VerificationReport::new(
        "sharpness",
        "combs reach ceil(m/2) with Maximizer responding; double coronas reach ceil(m/3) and caterpillars ceil(m/2) with Minimizer responding",
        rows,
    ))
}

/// Perfect trees of orders 3, 6, 9 and 12 in all four rooted games.
pub fn suite_trees() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for p in &P3_PATTERNS {
        for w in [Player::Max, Player::Min] {
            rows.extend(tree_scan(&[3, 6, 9, 12], &spec(p.clone(), w))?.rows);
        }
    }
    Ok(VerificationReport::new(
        "trees",
        "perfect trees: family D (star, Maximizer responds), only P3 (stripe, Maximizer responds), family E (star, Minimizer responds), family F (stripe, Minimizer responds)",
        rows,
    ))
}

/// The three MOPs on six vertices and the triangle.
pub fn suite_mops() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    let mut insts: Vec<FamilyInstance> = [MopKind::Fan6, MopKind::Snake6, MopKind::Sun6].into_iter().map(gen_mop).collect::<Result<_>>()?;
    insts.push(gen_mop_custom(3, &[])?);
    for inst in &insts {
        for p in &P3_PATTERNS {
            for w in [Player::Max, Player::Min] {
                let g = spec(p.clone(), w);
                let r = solve(&inst.graph, &g)?;
                let stripe_min_resp = *p == Pattern::Stripe && w == Player::Max;
                if inst.graph.n() == 6 && stripe_min_resp {
                    rows.push(ReportRow::equal(inst.key(), &g, 1, r.value));
                } else {
                    rows.push(ReportRow::check(inst.key(), &g, "perfect", if r.perfect { "perfect" } else { "imperfect" }, r.perfect));
                }
            }
        }
    }
    Ok(VerificationReport::new(
        "mops",
        "fan, snake and sun: value 1 in the stripe game with Minimizer responding, perfect otherwise; the triangle is perfect",
        rows,
    ))
}

/// Two- and three-row grids.
pub fn suite_grids() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for m in 2..=7 {
        let grid = gen_grid(2, m)?;
        for w in [Player::Max, Player::Min] {
            let g = spec(Pattern::Star, w);
            rows.push(ReportRow::equal(grid.key(), &g, m.div_ceil(2), solve(&grid.graph, &g)?.value));
        }
        let g = spec(Pattern::Stripe, Player::Min);
        rows.push(ReportRow::equal(grid.key(), &g, m.div_ceil(2), solve(&grid.graph, &g)?.value));
        let g = spec(Pattern::Stripe, Player::Max);
        rows.push(ReportRow::equal(grid.key(), &g, m / 2, solve(&grid.graph, &g)?.value));
    }
    for m in 2..=5 {
        let grid = gen_grid(3, m)?;
        let g = spec(Pattern::Star, Player::Max);
        let r = solve(&grid.graph, &g)?;
        rows.push(ReportRow::check(grid.key(), &g, "perfect", if r.perfect { "perfect" } else { "imperfect" }, r.perfect));
        let g = spec(Pattern::Stripe, Player::Max);
        let predicted = if m == 3 { m } else { m - 1 };
        rows.push(ReportRow::equal(grid.key(), &g, predicted, solve(&grid.graph, &g)?.value));
    }
    Ok(VerificationReport::new(
        "grids",
        "2 x m: star ceil(m/2) for both role splits, stripe ceil(m/2) or floor(m/2) as Maximizer or Minimizer responds; 3 x m: star perfect with Minimizer responding, stripe 3 at m = 3 and m-1 otherwise with Maximizer initiating",
        rows,
    ))
}

/// Two-row rooks graphs.
pub fn suite_rooks() -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for m in [3, 6] {
        let inst = gen_rooks2(m)?;
        for p in &P3_PATTERNS {
            for w in [Player::Min, Player::Max] {
                let g = spec(p.clone(), w);
                let r = solve(&inst.graph, &g)?;
                let expect = !(m >= 6 && *p == Pattern::Stripe && w == Player::Max);
                let word = |b: bool| if b { "perfect" } else { "imperfect" };
                rows.push(ReportRow::check(inst.key(), &g, word(expect), word(r.perfect), expect == r.perfect));
            }
        }
    }
    Ok(VerificationReport::new(
        "rooks",
        "R_3 and R_6 are perfect in every rooted game except the stripe game with Minimizer responding, where only R_3 is",
        rows,
    ))
}

const NINE_VERTEX_TREE: &str = "spider(0;1-3-{5,7};2-4-{6,8})";

/// Center 0 with two legs of length two, each ending at a vertex with two
/// pendant leaves. It lies in family E, so the star game with Minimizer
/// responding is perfect; the unrooted game is not.
pub fn nine_vertex_tree() -> Graph {
    Graph::new(9, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 7), (4, 6), (4, 8)]).expect("valid tree")
}

/// Seeded `G(n, p)` corpus: 200 graphs, `n` in 3..=12, `p` alternating 0.2 and 0.4.
pub fn unrooted_corpus() -> Result<Vec<(String, Graph)>> {
    (0..200u64)
        .map(|seed| {
            let n = 3 + (seed % 10) as usize;
            let p = if seed % 2 == 0 { 0.2 } else { 0.4 };
            Ok((format!("gnp(n={n},p={p},seed={seed})"), gnp(n, p, seed)?))
        })
        .collect()
}

/// Trees of every order up to `max_n`.
fn all_trees(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_free_trees(n)?);
    }
    Ok(out)
}

/// Counts failures of `check` over a corpus; the first failure becomes the
/// row detail.
fn corpus_row<T: Sync>(
    instance: &str,
    game: &str,
    items: &[T],
    check: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<ReportRow> {
    let failures = items.par_iter().map(&check).collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> = failures.into_iter().flatten().collect();
    Ok(ReportRow::check(
        format!("{instance} ({})", items.len()),
        game,
        "0 violations",
        format!("{} violations", bad.len()),
        bad.is_empty(),
    )
    .with_detail(bad.into_iter().next()))
}

/// Unrooted P3 game.
pub fn suite_unrooted() -> Result<VerificationReport> {
    let corpus = unrooted_corpus()?;
    let trees = all_trees(10)?;
    let mut rows = Vec::new();
    rows.push(corpus_row("gnp corpus", "unrooted/min-init = mu", &corpus, |(name, g)| {
        let v = value(g, &Pattern::UnrootedP3, Player::Min)?;
        let m = mu(g, &Pattern::Star)?.size;
        Ok((v != m).then(|| format!("{name}: value {v}, mu {m}")))
    })?);
    let unrooted_le_stripe = |name: &str, g: &Graph| -> Result<Option<String>> {
        let u = value(g, &Pattern::UnrootedP3, Player::Max)?;
        let s = value(g, &Pattern::Stripe, Player::Max)?;
        Ok((u > s).then(|| format!("{name}: unrooted {u} > stripe {s}")))
    };
    rows.push(corpus_row("gnp corpus", "unrooted/max-init <= stripe/max-init", &corpus, |(name, g)| unrooted_le_stripe(name, g))?);
    rows.push(corpus_row("trees n<=10", "unrooted/max-init <= stripe/max-init", &trees, |g| {
        unrooted_le_stripe(&format!("{:?}", g.edges()), g)
    })?);

    let claw = gen_claw_gadget()?;
    let k13 = Pattern::generic(Graph::new(4, &[(0, 1), (0, 2), (0, 3)])?, None)?;
    let g = spec(k13.clone(), Player::Min);
    rows.push(ReportRow::equal(claw.key(), &g, 1, solve(&claw.graph, &g)?.value));
    rows.push(ReportRow::equal(claw.key(), "K13 packing number", 3, mu(&claw.graph, &k13)?.size));

    let corona = gen_double_corona_complete(6)?;
    let unrooted = value(&corona.graph, &Pattern::UnrootedP3, Player::Max)?;
    let star = value(&corona.graph, &Pattern::Star, Player::Max)?;
    rows.push(ReportRow::check(corona.key(), spec(Pattern::UnrootedP3, Player::Max), ">= 3", unrooted, unrooted >= 3));
    rows.push(ReportRow::equal(corona.key(), spec(Pattern::Star, Player::Max), 2, star));

    let nine = nine_vertex_tree();
    let star = solve(&nine, &spec(Pattern::Star, Player::Max))?.perfect;
    let unrooted = solve(&nine, &spec(Pattern::UnrootedP3, Player::Max))?.perfect;
    let word = |b: bool| if b { "perfect" } else { "imperfect" };
    rows.push(ReportRow::check(NINE_VERTEX_TREE, spec(Pattern::Star, Player::Max), "perfect", word(star), star));
    rows.push(ReportRow::check(NINE_VERTEX_TREE, spec(Pattern::UnrootedP3, Player::Max), "imperfect", word(unrooted), !unrooted));
    Ok(VerificationReport::new(
        "unrooted",
        "unrooted game: value mu(G) with Maximizer responding, at most the stripe value with Minimizer responding; claw gadget and incomparability witnesses",
        rows,
    ))
}

/// Random graphs for the invariant suite: 200 graphs with `n` in 3..=13.
pub fn property_corpus() -> Result<Vec<(String, Graph)>> {
    (0..200u64)
        .map(|seed| {
            let n = 3 + (seed % 11) as usize;
            let p = [0.2, 0.3, 0.5][(seed % 3) as usize];
            Ok((format!("gnp(n={n},p={p},seed={seed})"), gnp(n, p, 1000 + seed)?))
        })
        .collect()
}

/// Graphs with a planted triangle partition plus random extra edges.
pub fn planted_k3_corpus() -> Result<Vec<(String, Graph)>> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    (0..60u64)
        .map(|seed| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 3 * (1 + (seed % 4) as usize);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut edges = Vec::new();
            for t in order.chunks(3) {
                edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.15) {
                        edges.push((u, v));
                    }
                }
            }
            edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
            edges.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
            Ok((format!("planted(n={n},seed={seed})"), Graph::new(n, &edges)?))
        })
        .collect()
}

/// Invariants that hold on every graph.
pub fn suite_properties() -> Result<VerificationReport> {
    let corpus = property_corpus()?;
    let trees = all_trees(12)?;
    let all_games: Vec<GameSpec> = [Pattern::Star, Pattern::Stripe, Pattern::UnrootedP3]
        .into_iter()
        .flat_map(|p| [Player::Max, Player::Min].map(|w| spec(p.clone(), w)))
        .collect();
    let mut rows = Vec::new();
    rows.push(corpus_row("gnp corpus", "value <= mu, value >= 1 unless terminal", &corpus, |(name, g)| {
        let m = mu(g, &Pattern::Star)?.size;
        for game in &all_games {
            let v = solve(g, game)?.value;
            let open = !game.pattern.is_terminal(g, g.vertices());
            if v > m || (open && v == 0) {
                return Ok(Some(format!("{name} {game}: value {v}, mu {m}")));
            }
        }
        Ok(None)
    })?);
    rows.push(corpus_row("gnp corpus", "Maximizer responding: value >= ceil(mu/2)", &corpus, |(name, g)| {
        let m = mu(g, &Pattern::Star)?.size;
        for p in &P3_PATTERNS {
            let v = value(g, p, Player::Min)?;
            if v < m.div_ceil(2) {
                return Ok(Some(format!("{name} {}: value {v}, mu {m}", p.name())));
            }
        }
        Ok(None)
    })?);
    rows.push(corpus_row("gnp corpus", "star, Minimizer responding: value >= ceil(mu/3)", &corpus, |(name, g)| {
        let m = mu(g, &Pattern::Star)?.size;
        let v = value(g, &Pattern::Star, Player::Max)?;
        Ok((v < m.div_ceil(3)).then(|| format!("{name}: value {v}, mu {m}")))
    })?);
    rows.push(corpus_row("trees n<=12", "Minimizer responding: value >= ceil(mu/2)", &trees, |g| {
        let m = mu(g, &Pattern::Star)?.size;
        for p in &P3_PATTERNS {
            let v = value(g, p, Player::Max)?;
            if v < m.div_ceil(2) {
                return Ok(Some(format!("{:?} {}: value {v}, mu {m}", g.edges(), p.name())));
            }
        }
        Ok(None)
    })?);
    rows.push(corpus_row("gnp corpus", "ceil(mu/3) <= min maximal <= mu", &corpus, |(name, g)| {
        let m = mu(g, &Pattern::Star)?.size;
        let mm = min_maximal(g, &Pattern::Star)?.size;
        Ok((mm < m.div_ceil(3) || mm > m).then(|| format!("{name}: min maximal {mm}, mu {m}")))
    })?);
    let planted = planted_k3_corpus()?;
    rows.push(corpus_row("planted K3 corpus", "K3 partition => perfect with Maximizer responding", &planted, |(name, g)| {
        if !has_k3_partition(g) {
            return Ok(Some(format!("{name}: planted partition not found")));
        }
        for p in &P3_PATTERNS {
            if !solve(g, &spec(p.clone(), Player::Min))?.perfect {
                return Ok(Some(format!("{name} {}: not perfect", p.name())));
            }
        }
        Ok(None)
    })?);
    let small: Vec<_> = corpus.iter().filter(|(_, g)| g.n() <= 10).cloned().collect();
    rows.push(corpus_row("gnp corpus n<=10", "memo on = memo off", &small, |(name, g)| {
        for game in &all_games {
            let on = solve(g, game)?.value;
            let off = solve_with(g, game, &SolveOptions { memo: false, ..Default::default() })?.value;
            if on != off {
                return Ok(Some(format!("{name} {game}: memo {on}, plain {off}")));
            }
        }
        Ok(None)
    })?);
    rows.push(corpus_row("gnp corpus", "principal variation replays to a terminal state", &corpus, |(name, g)| {
        for game in &all_games {
            let r = solve(g, game)?;
            let mut state = GameState::new(g.clone());
            for mv in &r.principal_variation {
                state = match state.apply(game, mv.clone()) {
                    Ok(s) => s,
                    Err(e) => return Ok(Some(format!("{name} {game}: {e}"))),
                };
            }
            if r.principal_variation.len() != r.value || !state.is_terminal(game) {
                return Ok(Some(format!("{name} {game}: pv of length {} for value {}", r.principal_variation.len(), r.value)));
            }
        }
        Ok(None)
    })?);
    let states = random_states(500)?;
    rows.push(corpus_row("random states", "specialized P3 moves = generic P3 moves", &states, |(name, g, avail)| {
        Ok(generic_mismatch(g, *avail).map(|m| format!("{name}: {m}")))
    })?);
    Ok(VerificationReport::new(
        "properties",
        "invariants: packing bounds on the value, K3 partitions, memo soundness, principal variations and move generation",
        rows,
    ))
}

/// Random `(graph, available set)` pairs reached by random legal play.
pub fn random_states(count: u64) -> Result<Vec<(String, Graph, VertexSet)>> {
    use rand::{Rng, SeedableRng};
    (0..count)
        .map(|seed| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(3..=12);
            let p = rng.gen_range(0.15..0.6);
            let g = gnp(n, p, seed)?;
            let game = spec(Pattern::UnrootedP3, Player::Max);
            let mut avail = g.vertices();
            let steps = rng.gen_range(0..=2);
            for _ in 0..steps {
                let copies = game.pattern.copies(&g, avail);
                if copies.is_empty() {
                    break;
                }
                avail = avail - copies[rng.gen_range(0..copies.len())];
            }
            Ok((format!("gnp(n={n},seed={seed}) avail={:?}", avail.to_vec()), g, avail))
        })
        .collect()
}

/// Compares each P3 fast path with the generic pattern it stands for.
pub fn generic_mismatch(g: &Graph, avail: VertexSet) -> Option<String> {
    let pairs = [
        (Pattern::Star, Pattern::p3_generic(Some(1))),
        (Pattern::Stripe, Pattern::p3_generic(Some(0))),
        (Pattern::UnrootedP3, Pattern::p3_generic(None)),
    ];
    for (fast, generic) in pairs {
        let (a, b) = (fast.initiations(g, avail), generic.initiations(g, avail));
        if a != b {
            return Some(format!("{} initiations {:?} vs generic {:?}", fast.name(), a.to_vec(), b.to_vec()));
        }
        for v in a {
            let (ra, rb) = (fast.response_images(g, avail, v), generic.response_images(g, avail, v));
            if ra != rb {
                return Some(format!("{} responses at {v} differ", fast.name()));
            }
        }
        if fast.is_terminal(g, avail) != generic.is_terminal(g, avail) {
            return Some(format!("{} terminal flags differ", fast.name()));
        }
    }
    None
}

/// One guarantee to check: strategy, instance, game, role and bound.
pub struct GuaranteeCase {
    pub strategy: &'static str,
    pub instance: FamilyInstance,
    pub game: GameSpec,
    pub role: Role,
    pub bound: Bound,
}

/// Every scripted strategy over its declared range.
pub fn guarantee_cases() -> Result<Vec<GuaranteeCase>> {
    use Player::{Max, Min};
    let mut cases = Vec::new();
    let mut add = |strategy, instance, game, role, bound| cases.push(GuaranteeCase { strategy, instance, game, role, bound });
    for n in 3..=16 {
        add("path-stripe", gen_path(n)?, spec(Pattern::Stripe, Min), Role::Initiator, Bound::AtMost((n + 1) / 4));
        add("path-star", gen_path(n)?, spec(Pattern::Star, Max), Role::Initiator, Bound::AtLeast(n / 3));
    }
    for m in 2..=7 {
        let half_up = (m as usize).div_ceil(2);
        add("grid2-corners", gen_grid(2, m)?, spec(Pattern::Star, Max), Role::Initiator, Bound::AtLeast(half_up));
        add("grid2-subgrid", gen_grid(2, m)?, spec(Pattern::Star, Max), Role::Responder, Bound::AtMost(half_up));
        add("grid2-parity", gen_grid(2, m)?, spec(Pattern::Stripe, Max), Role::Responder, Bound::AtMost(m / 2));
        add("grid2-parity", gen_grid(2, m)?, spec(Pattern::Stripe, Min), Role::Responder, Bound::AtLeast(half_up));
    }
    for m in 2..=5 {
        add("grid3-perfect", gen_grid(3, m)?, spec(Pattern::Star, Max), Role::Initiator, Bound::AtLeast(m));
    }
    for m in [3, 6] {
        add("rooks-star", gen_rooks2(m)?, spec(Pattern::Star, Max), Role::Initiator, Bound::AtLeast(2 * m / 3));
    }
    add("rooks-stripe", gen_rooks2(3)?, spec(Pattern::Stripe, Max), Role::Responder, Bound::AtMost(2));
    for m in [6, 9] {
        add("rooks-stripe", gen_rooks2(m)?, spec(Pattern::Stripe, Max), Role::Responder, Bound::AtMost(2 * m / 3 - 1));
    }
    Ok(cases)
}

/// Scripted strategies against an exhaustive adversary, the rooks endgame
/// shape, and optimal play against the solver on small trees.
pub fn suite_strategies() -> Result<VerificationReport> {
    let cases = guarantee_cases()?;
    let mut rows = cases
        .par_iter()
        .map(|c| {
            let mut s = scripted(c.strategy, &c.instance, &c.game)?;
            let out = check_guarantee(&c.instance.graph, &c.game, &mut s, c.role, c.bound)?;
            let detail = (!out.holds).then(|| format!("worst line: {:?}", out.worst_playout));
            Ok(ReportRow::check(c.instance.key(), format!("{} {}", c.strategy, c.game), c.bound, out.worst, out.holds).with_detail(detail))
        })
        .collect::<Result<Vec<_>>>()?;

    let rooks = gen_rooks2(6)?;
    let game = spec(Pattern::Stripe, Player::Max);
    let mut min = scripted("rooks-stripe", &rooks, &game)?;
    let mut opt = OptimalStrategy::new(rooks.graph.clone(), &game)?;
    let playout = run_match(&rooks.graph, &game, &mut opt, &mut min)?;
    let mut avail = rooks.graph.vertices();
    let mut shapes = vec![rooks_row_counts(&rooks, avail)?];
    for mv in &playout.moves {
        avail = avail - mv.image;
        shapes.push(rooks_row_counts(&rooks, avail)?);
    }
    let reached = shapes.contains(&(4, 2)) && playout.value < 4;
    let shown: Vec<String> = shapes.iter().map(|(i, j)| format!("({i},{j})")).collect();
    rows.push(ReportRow::check(
        rooks.key(),
        "rooks-stripe vs optimal: row shapes",
        "passes (4,2), fewer than 4 moves",
        format!("{} in {} moves", shown.join(" "), playout.value),
        reached,
    ));

    let trees = all_trees(9)?;
    let rooted: Vec<GameSpec> = P3_PATTERNS.iter().flat_map(|p| [Player::Max, Player::Min].map(|w| spec(p.clone(), w))).collect();
    rows.push(corpus_row("trees n<=9", "optimal vs optimal = solver value", &trees, |g| {
        for game in &rooted {
            let mut a = OptimalStrategy::new(g.clone(), game)?;
            let mut b = OptimalStrategy::new(g.clone(), game)?;
            let played = run_match(g, game, &mut a, &mut b)?.value;
            let v = solve(g, game)?.value;
            if played != v {
                return Ok(Some(format!("{:?} {game}: played {played}, value {v}", g.edges())));
            }
        }
        Ok(None)
    })?);
    Ok(VerificationReport::new(
        "strategies",
        "every scripted strategy meets its bound against every opponent line",
        rows,
    ))
}

/// Non-isomorphic free trees of orders 3, 6, 9, 12.
pub fn suite_free_tree_counts() -> Result<VerificationReport> {
    let rows = [(3, 1), (6, 6), (9, 47), (12, 551)]
        .into_iter()
        .map(|(n, count)| Ok(ReportRow::equal(format!("n={n}"), "free trees", count, enumerate_free_trees(n)?.len())))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("free-trees", "number of non-isomorphic free trees", rows))
}

/// Names and builders of every suite, in run order.
pub fn suites() -> Vec<(&'static str, fn() -> Result<VerificationReport>)> {
    vec![
        ("paths-stripe", suite_paths_stripe),
        ("paths-star", suite_paths_star),
        ("recurrence", suite_recurrence),
        ("complete-bipartite", suite_complete_bipartite),
        ("sharpness", suite_sharpness),
        ("trees", suite_trees),
        ("mops", suite_mops),
        ("grids", suite_grids),
        ("rooks", suite_rooks),
        ("unrooted", suite_unrooted),
        ("properties", suite_properties),
        ("strategies", suite_strategies),
        ("free-trees", suite_free_tree_counts),
    ]
}

pub fn verify_all() -> Result<AggregateReport> {
    let reports = suites().into_iter().map(|(_, run)| run()).collect::<Result<Vec<_>>>()?;
    Ok(AggregateReport::new(reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut v = vec!["path:10", "path:3", "grid:2x10", "grid:2x9", "path:16"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["grid:2x9", "grid:2x10", "path:3", "path:10", "path:16"]);
    }

    #[test]
    fn ranges_expand() {
        assert_eq!(expand_range("grid:2x{2..4}").unwrap(), ["grid:2x2", "grid:2x3", "grid:2x4"]);
        assert_eq!(expand_range("path:7").unwrap(), ["path:7"]);
        assert!(matches!(expand_range("path:{3..}"), Err(Error::Parse { .. })));
        assert!(matches!(expand_range("path:{3..5"), Err(Error::Parse { pos: 5, .. })));
    }

    #[test]
    fn text_and_json_agree() {
        let rows = vec![ReportRow::equal("a", "g", 1, 1), ReportRow::equal("b", "g", 1, 2)];
        let r = VerificationReport::new("demo", "claim", rows);
        assert!(!r.passed());
        let text = r.to_text();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for row in json["rows"].as_array().unwrap() {
            let verdict = if row["pass"].as_bool().unwrap() { "pass" } else { "FAIL" };
            let inst = row["instance"].as_str().unwrap();
            assert!(text.lines().any(|l| l.trim_start().starts_with(inst) && l.trim_end().ends_with(verdict)));
        }
    }

    #[test]
    fn table_marks_unresolved_cells() {
        let insts = vec![gen_cycle(6).unwrap(), gen_path(7).unwrap()];
        let r = table(&insts, &[spec(Pattern::Stripe, Player::Min)], &SolveOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.rows[0].predicted, "unresolved");
        assert_eq!(r.rows[1].predicted, "2");
    }

    #[test]
    fn tree_scan_rejects_unrooted() {
        assert!(tree_scan(&[6], &spec(Pattern::UnrootedP3, Player::Max)).is_err());
        let r = tree_scan(&[6], &spec(Pattern::Stripe, Player::Max)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
