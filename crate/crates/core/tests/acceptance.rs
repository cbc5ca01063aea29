//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Expected values come from formulas and brute-force oracles
//! written here, not from the library's closed-form table.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;

use matchgame::families::*;
use matchgame::random::gnp;
use matchgame::strategies::{check_guarantee, scripted};
use matchgame::verify;
use matchgame::*;

type Check = std::result::Result<(), String>;

struct Run {
    failed: usize,
    total: usize,
}

impl Run {
    fn criterion(&mut self, name: &str, f: impl FnOnce() -> Check) {
        self.total += 1;
        let start = std::time::Instant::now();
        match f() {
            Ok(()) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Err(why) => {
                self.failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
}

fn game(p: Pattern, w: Player) -> GameSpec {
    GameSpec::new(p, w)
}

fn val(g: &Graph, p: Pattern, w: Player) -> usize {
    solve(g, &game(p, w)).expect("solve").value
}

fn perfect(g: &Graph, p: Pattern, w: Player) -> bool {
    solve(g, &game(p, w)).expect("solve").perfect
}

/// Collects every mismatch into one message.
fn expect_all(items: impl IntoIterator<Item = (String, usize, usize)>) -> Check {
    let bad: Vec<String> = items
        .into_iter()
        .filter(|(_, want, got)| want != got)
        .map(|(what, want, got)| format!("{what}: expected {want}, got {got}"))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).unwrap()
}

/// Smallest set of disjoint windows {i, i+1, i+2} leaving no three
/// consecutive free positions on a path of `n` vertices.
fn path_min_maximal(n: usize) -> usize {
    fn go(n: usize, used: u32, from: usize, k: usize, best: &mut usize) {
        let maximal = (0..n.saturating_sub(2)).all(|i| (used >> i) & 0b111 != 0);
        if maximal {
            *best = (*best).min(k);
            return;
        }
        if k + 1 >= *best {
            return;
        }
        for i in from..n.saturating_sub(2) {
            if (used >> i) & 0b111 == 0 {
                go(n, used | (0b111 << i), i + 3, k + 1, best);
            }
        }
    }
    let mut best = usize::MAX;
    go(n, 0, 0, 0, &mut best);
    best
}

/// Maximum number of vertex-disjoint connected triples.
fn brute_mu(g: &Graph) -> usize {
    fn go(g: &Graph, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if avail.count_ones() < 3 {
            return 0;
        }
        if let Some(&m) = memo.get(&avail) {
            return m;
        }
        let v = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << v);
        let mut best = go(g, rest, memo);
        let others: Vec<usize> = (0..g.n()).filter(|&u| rest >> u & 1 == 1).collect();
        for (i, &a) in others.iter().enumerate() {
            for &b in &others[i + 1..] {
                let edges = [g.has_edge(v, a), g.has_edge(v, b), g.has_edge(a, b)].iter().filter(|&&e| e).count();
                if edges >= 2 {
                    best = best.max(1 + go(g, rest & !(1 << a) & !(1 << b), memo));
                }
            }
        }
        memo.insert(avail, best);
        best
    }
    go(g, if g.n() == 64 { u64::MAX } else { (1 << g.n()) - 1 }, &mut HashMap::new())
}

/// Canonical string of a tree: the smaller AHU encoding over its centers.
fn canon(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn enc(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| enc(adj, u, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| enc(&adj, r, usize::MAX)).min().unwrap_or_default()
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let r = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == r)
}

/// Trees of order `3k` produced by the P3-addition construction. The new
/// P3 is `a - b - c`; `attach` lists the vertices of the new P3 allowed to
/// receive the (at most one) edge into each existing component.
fn constructed_trees(k: usize, attach: &[usize]) -> BTreeSet<String> {
    fn go(k: usize, attach: &[usize], comps: &[Vec<usize>], edges: &mut Vec<(usize, usize)>, out: &mut BTreeSet<String>) {
        let n: usize = comps.iter().map(Vec::len).sum();
        if n == 3 * k {
            if is_connected(n, edges) {
                out.insert(canon(n, edges));
            }
            return;
        }
        let (a, b, c) = (n, n + 1, n + 2);
        edges.push((a, b));
        edges.push((b, c));
        // Each existing component gets no edge or one edge from an allowed
        // vertex of the new P3.
        fn choose(
            i: usize,
            k: usize,
            attach: &[usize],
            comps: &[Vec<usize>],
            merged: Vec<usize>,
            kept: Vec<Vec<usize>>,
            edges: &mut Vec<(usize, usize)>,
            out: &mut BTreeSet<String>,
        ) {
            if i == comps.len() {
                let mut next = kept;
                next.push(merged);
                go(k, attach, &next, edges, out);
                return;
            }
            let mut kept_here = kept.clone();
            kept_here.push(comps[i].clone());
            choose(i + 1, k, attach, comps, merged.clone(), kept_here, edges, out);
            let base = merged[0];
            for &off in attach {
                for &u in &comps[i] {
                    edges.push((base + off, u));
                    let mut m = merged.clone();
                    m.extend(&comps[i]);
                    choose(i + 1, k, attach, comps, m, kept.clone(), edges, out);
                    edges.pop();
                }
            }
        }
        choose(0, k, attach, comps, vec![a, b, c], Vec::new(), edges, out);
        edges.pop();
        edges.pop();
    }
    let mut out = BTreeSet::new();
    go(k, attach, &[], &mut Vec::new(), &mut out);
    out
}

/// Double coronas of trees on `k` centers, built from Prüfer sequences.
fn double_coronas(k: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let seqs = if k >= 2 { k.pow(k as u32 - 2) } else { 1 };
    for code in 0..seqs {
        let mut seq = Vec::new();
        let mut c = code;
        for _ in 0..k.saturating_sub(2) {
            seq.push(c % k);
            c /= k;
        }
        let mut edges = if k == 1 { Vec::new() } else { matchgame::random::prufer_edges(k, &seq) };
        for center in 0..k {
            edges.push((center, k + 2 * center));
            edges.push((center, k + 2 * center + 1));
        }
        out.insert(canon(3 * k, &edges));
    }
    out
}

/// Otter's count of unlabeled free trees.
fn otter(n: usize) -> u64 {
    let mut r = vec![0u64; n + 1];
    r[1] = 1;
    for m in 1..n {
        let mut s = 0u64;
        for k in 1..=m {
            let d_sum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += d_sum * r[m - k + 1];
        }
        r[m + 1] = s / m as u64;
    }
    let pairs: u64 = (1..n).map(|i| r[i] * r[n - i]).sum();
    let sym = if n % 2 == 0 { r[n / 2] } else { 0 };
    r[n] - (pairs - sym) / 2
}

fn rooted_specs() -> Vec<GameSpec> {
    let mut v = Vec::new();
    for p in [Pattern::Star, Pattern::Stripe] {
        for w in [Player::Max, Player::Min] {
            v.push(game(p.clone(), w));
        }
    }
    v
}

fn word(b: bool) -> &'static str {
    if b { "perfect" } else { "imperfect" }
}

fn nine_vertex_tree() -> Graph {
    Graph::new(9, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 7), (4, 6), (4, 8)]).unwrap()
}

fn main() -> ExitCode {
    use Pattern::{Star, Stripe, UnrootedP3};
    use Player::{Max, Min};
    let mut run = Run { failed: 0, total: 0 };

    run.criterion("paths: stripe, Minimizer initiates, floor((n+1)/4), n = 3..16", || {
        expect_all((3..=16).map(|n| (format!("P{n}"), (n + 1) / 4, val(&path(n), Stripe, Min))))
    });

    run.criterion("paths: star, Minimizer initiates, floor((n+3)/5) = min maximal, n = 3..16 (as specified)", || {
        expect_all((3..=16).flat_map(|n| {
            let g = path(n);
            [
                (format!("P{n} value"), (n + 3) / 5, val(&g, Star, Min)),
                (format!("P{n} min maximal"), (n + 3) / 5, min_maximal(&g, &Star).unwrap().size),
            ]
        }))
    });
    run.criterion("paths: star, Minimizer initiates, equals brute-force min maximal packing = floor((n+2)/5), n = 3..16", || {
        expect_all((3..=16).flat_map(|n| {
            let g = path(n);
            let brute = path_min_maximal(n);
            [
                (format!("P{n} brute"), (n + 2) / 5, brute),
                (format!("P{n} value"), brute, val(&g, Star, Min)),
                (format!("P{n} min maximal"), brute, min_maximal(&g, &Star).unwrap().size),
            ]
        }))
    });
    run.criterion("paths: star, Maximizer initiates, floor(n/3), and the path-star script forces it", || {
        expect_all((3..=16).flat_map(|n| {
            let inst = gen_path(n).unwrap();
            let spec = game(Star, Max);
            let mut s = scripted("path-star", &inst, &spec).unwrap();
            let forced = check_guarantee(&inst.graph, &spec, &mut s, Role::Initiator, matchgame::strategies::Bound::AtLeast(n / 3)).unwrap();
            [(format!("P{n} value"), n / 3, val(&inst.graph, Star, Max)), (format!("P{n} script worst"), n / 3, forced.worst)]
        }))
    });

    run.criterion("recurrence: f(n) = floor((n+1)/4) for n = 3..40 and = path solver for n <= 16", || {
        expect_all((3..=40).flat_map(|n| {
            let mut v = vec![(format!("f({n})"), (n + 1) / 4, recurrence_f(n))];
            if n <= 16 {
                v.push((format!("f({n}) vs solver"), val(&path(n), Stripe, Min), recurrence_f(n)));
            }
            v
        }))
    });

    run.criterion("K_{r,s}: min(r, floor((r+s)/3)) with Maximizer initiating, ceil(r/2) with Minimizer initiating", || {
        let mut cases = Vec::new();
        for r in 1..=3usize {
            for s in r.max(2)..=5 {
                let mut edges = Vec::new();
                for a in 0..r {
                    for b in 0..s {
                        edges.push((a, r + b));
                    }
                }
                let g = Graph::new(r + s, &edges).unwrap();
                for p in [Star, Stripe] {
                    cases.push((format!("K{r},{s} {} max", p.name()), r.min((r + s) / 3), val(&g, p.clone(), Max)));
                    cases.push((format!("K{r},{s} {} min", p.name()), r.div_ceil(2), val(&g, p, Min)));
                }
            }
        }
        expect_all(cases)
    });

    run.criterion("sharpness: comb ceil(m/2), double corona ceil(m/3), caterpillar ceil(m/2)", || {
        let mut cases = Vec::new();
        for m in 2..=4 {
            let comb = gen_comb(m).unwrap().graph;
            let cat = gen_caterpillar(m).unwrap().graph;
            for p in [Star, Stripe] {
                cases.push((format!("comb({m}) {}", p.name()), m.div_ceil(2), val(&comb, p.clone(), Min)));
                cases.push((format!("caterpillar({m}) {}", p.name()), m.div_ceil(2), val(&cat, p, Max)));
            }
        }
        for m in [3, 6] {
            let corona = gen_double_corona_complete(m).unwrap().graph;
            cases.push((format!("corona({m})"), m.div_ceil(3), val(&corona, Star, Max)));
        }
        expect_all(cases)
    });

    run.criterion("trees n in {3,6,9,12}: perfect sets equal the constructed families D, {P3}, E, F", || {
        let mut bad = Vec::new();
        for k in 1..=4 {
            let n = 3 * k;
            let trees = enumerate_free_trees(n).unwrap();
            let oracles = [
                (game(Star, Min), double_coronas(k)),
                (game(Stripe, Min), if k == 1 { double_coronas(1) } else { BTreeSet::new() }),
                (game(Star, Max), constructed_trees(k, &[0, 2])),
                (game(Stripe, Max), constructed_trees(k, &[2])),
            ];
            for (spec, family) in &oracles {
                let perfect_set: BTreeSet<String> = trees
                    .iter()
                    .filter(|t| solve(t, spec).unwrap().perfect)
                    .map(|t| canon(n, &t.edges()))
                    .collect();
                if &perfect_set != family {
                    bad.push(format!("n={n} {spec}: {} perfect vs {} constructed", perfect_set.len(), family.len()));
                }
            }
        }
        if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) }
    });

    run.criterion("MOPs: fan/snake/sun stripe with Minimizer responding = 1, perfect otherwise; K3 perfect", || {
        let ring: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let mops = [
            ("fan6", vec![(0, 2), (0, 3), (0, 4)]),
            ("snake6", vec![(0, 2), (0, 3), (3, 5)]),
            ("sun6", vec![(0, 2), (2, 4), (0, 4)]),
        ];
        let mut cases = Vec::new();
        for (name, chords) in mops {
            let edges: Vec<_> = ring.iter().copied().chain(chords).collect();
            let g = Graph::new(6, &edges).unwrap();
            for spec in rooted_specs() {
                let expect = if spec.pattern == Stripe && spec.initiator == Max { 1 } else { 2 };
                cases.push((format!("{name} {spec}"), expect, solve(&g, &spec).unwrap().value));
            }
        }
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for spec in rooted_specs() {
            cases.push((format!("K3 {spec}"), 1, solve(&k3, &spec).unwrap().value));
        }
        expect_all(cases)
    });

    let grid = |r: usize, m: usize| gen_grid(r, m).unwrap().graph;
    let grid_common = |cases: &mut Vec<(String, usize, usize)>| {
        for m in 2..=7 {
            let g = grid(2, m);
            cases.push((format!("2x{m} star max"), m.div_ceil(2), val(&g, Star, Max)));
            cases.push((format!("2x{m} star min"), m.div_ceil(2), val(&g, Star, Min)));
            cases.push((format!("2x{m} stripe min-init"), m.div_ceil(2), val(&g, Stripe, Min)));
            cases.push((format!("2x{m} stripe max-init"), m / 2, val(&g, Stripe, Max)));
        }
        for m in 2..=5 {
            let g = grid(3, m);
            cases.push((format!("3x{m} star max-init"), m, val(&g, Star, Max)));
        }
    };
    run.criterion("grids: 2 x m values, 3 x m star perfect, 3 x m stripe = m for m <= 3, m-1 beyond (as specified)", || {
        let mut cases = Vec::new();
        grid_common(&mut cases);
        for m in 2..=5 {
            cases.push((format!("3x{m} stripe max-init"), if m <= 3 { m } else { m - 1 }, val(&grid(3, m), Stripe, Max)));
        }
        expect_all(cases)
    });
    run.criterion("grids: 3 x m stripe with Maximizer initiating = 3 at m = 3 and m-1 for m in {2,4,5}", || {
        let mut cases = Vec::new();
        grid_common(&mut cases);
        for m in 2..=5 {
            cases.push((format!("3x{m} stripe max-init"), if m == 3 { 3 } else { m - 1 }, val(&grid(3, m), Stripe, Max)));
        }
        expect_all(cases)
    });

    run.criterion("rooks: R3, R6 perfect except R6 in the stripe game with Minimizer responding", || {
        let mut bad = Vec::new();
        for m in [3, 6] {
            let g = gen_rooks2(m).unwrap().graph;
            for spec in rooted_specs() {
                let expect = !(m == 6 && spec.pattern == Stripe && spec.initiator == Max);
                let got = solve(&g, &spec).unwrap().perfect;
                if got != expect {
                    bad.push(format!("R{m} {spec}: expected {}, got {}", word(expect), word(got)));
                }
            }
        }
        if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) }
    });

    let corpus: Vec<Graph> = (0..200u64)
        .map(|s| gnp(3 + (s % 10) as usize, if s % 2 == 0 { 0.2 } else { 0.4 }, s).unwrap())
        .collect();
    let unrooted_common = |corpus: &[Graph]| -> Check {
        let mut cases = Vec::new();
        for (i, g) in corpus.iter().enumerate() {
            cases.push((format!("corpus {i} unrooted min-init vs mu"), brute_mu(g), val(g, UnrootedP3, Min)));
            let (u, s) = (val(g, UnrootedP3, Max), val(g, Stripe, Max));
            cases.push((format!("corpus {i} unrooted <= stripe"), 1, usize::from(u <= s)));
        }
        for n in 1..=10 {
            for t in enumerate_free_trees(n).unwrap() {
                let (u, s) = (val(&t, UnrootedP3, Max), val(&t, Stripe, Max));
                cases.push((format!("tree {:?} unrooted <= stripe", t.edges()), 1, usize::from(u <= s)));
            }
        }
        let claw = gen_claw_gadget().unwrap().graph;
        let k13 = Pattern::generic(Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), None).unwrap();
        cases.push(("claw gadget value".into(), 1, solve(&claw, &game(k13.clone(), Min)).unwrap().value));
        cases.push(("claw gadget K13 packing".into(), 3, mu(&claw, &k13).unwrap().size));
        let corona = gen_double_corona_complete(6).unwrap().graph;
        cases.push(("corona(6) unrooted max-init >= 3".into(), 1, usize::from(val(&corona, UnrootedP3, Max) >= 3)));
        cases.push(("corona(6) star max-init".into(), 2, val(&corona, Star, Max)));
        expect_all(cases)
    };
    run.criterion("unrooted: mu, stripe bound, claw gadget, corona(6), P6 star-perfect but unrooted-imperfect (as specified)", || {
        unrooted_common(&corpus)?;
        let g = path(6);
        let (s, u) = (perfect(&g, Star, Max), perfect(&g, UnrootedP3, Max));
        if s && !u {
            Ok(())
        } else {
            Err(format!("P6: star {}, unrooted {}", word(s), word(u)))
        }
    });
    run.criterion("unrooted: mu, stripe bound, claw gadget, corona(6), and the nine-vertex tree in E star-perfect but unrooted-imperfect", || {
        unrooted_common(&corpus)?;
        let g = nine_vertex_tree();
        if !constructed_trees(3, &[0, 2]).contains(&canon(9, &g.edges())) {
            return Err("witness is not in E".into());
        }
        let (s, u) = (perfect(&g, Star, Max), perfect(&g, UnrootedP3, Max));
        if s && !u { Ok(()) } else { Err(format!("star {}, unrooted {}", word(s), word(u))) }
    });

    run.criterion("properties: packing bounds, K3 partitions, memo, principal variations, move generation", || {
        let mut cases = Vec::new();
        let all_specs: Vec<GameSpec> = rooted_specs().into_iter().chain([game(UnrootedP3, Max), game(UnrootedP3, Min)]).collect();
        for (name, g) in verify::property_corpus().unwrap() {
            let m = brute_mu(&g);
            for spec in &all_specs {
                let r = solve(&g, spec).unwrap();
                cases.push((format!("{name} {spec} value <= mu"), 1, usize::from(r.value <= m)));
                let mut state = GameState::new(g.clone());
                for mv in &r.principal_variation {
                    state = state.apply(spec, mv.clone()).unwrap();
                }
                cases.push((format!("{name} {spec} pv"), r.value, r.principal_variation.len()));
                cases.push((format!("{name} {spec} pv terminal"), 1, usize::from(state.is_terminal(spec))));
                if g.n() <= 10 {
                    let off = solve_with(&g, spec, &SolveOptions { memo: false, ..Default::default() }).unwrap();
                    cases.push((format!("{name} {spec} memo off"), r.value, off.value));
                }
            }
            for p in [Star, Stripe] {
                cases.push((format!("{name} {} max-resp >= ceil(mu/2)", p.name()), 1, usize::from(val(&g, p, Min) >= m.div_ceil(2))));
            }
            cases.push((format!("{name} star min-resp >= ceil(mu/3)"), 1, usize::from(val(&g, Star, Max) >= m.div_ceil(3))));
            let mm = min_maximal(&g, &Star).unwrap().size;
            cases.push((format!("{name} min maximal bounds"), 1, usize::from(m.div_ceil(3) <= mm && mm <= m)));
        }
        for n in 1..=12 {
            for t in enumerate_free_trees(n).unwrap() {
                let m = brute_mu(&t);
                for p in [Star, Stripe] {
                    cases.push((format!("tree {:?} {}", t.edges(), p.name()), 1, usize::from(val(&t, p, Max) >= m.div_ceil(2))));
                }
            }
        }
        for (name, g) in verify::planted_k3_corpus().unwrap() {
            cases.push((format!("{name} partition found"), 1, usize::from(has_k3_partition(&g))));
            for p in [Star, Stripe] {
                cases.push((format!("{name} {} perfect", p.name()), 1, usize::from(perfect(&g, p, Min))));
            }
        }
        for (name, g, avail) in verify::random_states(500).unwrap() {
            cases.push((format!("{name} generic"), 0, usize::from(verify::generic_mismatch(&g, avail).is_some())));
        }
        expect_all(cases)
    });

    run.criterion("strategies: every scripted strategy meets its bound against every opponent line", || {
        let mut bad = Vec::new();
        for c in verify::guarantee_cases().unwrap() {
            let mut s = scripted(c.strategy, &c.instance, &c.game).unwrap();
            let out = check_guarantee(&c.instance.graph, &c.game, &mut s, c.role, c.bound).unwrap();
            if !out.holds {
                bad.push(format!("{} on {}: worst {} vs {}", c.strategy, c.instance.key(), out.worst, c.bound));
            }
        }
        if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) }
    });

    run.criterion("free trees: 1, 6, 47, 551 for n = 3, 6, 9, 12 (Otter's formula)", || {
        expect_all([3, 6, 9, 12].map(|n| {
            let otter_n = otter(n) as usize;
            (format!("n={n}"), otter_n, enumerate_free_trees(n).unwrap().len())
        }))
        .and_then(|_| expect_all([(3, 1), (6, 6), (9, 47), (12, 551)].map(|(n, c)| (format!("otter({n})"), c, otter(n) as usize))))
    });

    run.criterion("verify-all: every library suite passes", || {
        let report = verify::verify_all().unwrap();
        let failed: Vec<String> = report.suites.iter().filter(|s| !s.passed()).map(|s| s.suite.clone()).collect();
        if failed.is_empty() { Ok(()) } else { Err(format!("failing suites: {}", failed.join(", "))) }
    });

    println!("{} criteria, {} passed, {} failed", run.total, run.total - run.failed, run.failed);
    if run.failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
