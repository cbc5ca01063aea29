use proptest::prelude::*;

use matchgame::families::*;
use matchgame::random::gnp;
use matchgame::strategies::{run_match, RandomStrategy};
use matchgame::verify::generic_mismatch;
use matchgame::*;

fn all_specs() -> Vec<GameSpec> {
    let mut v = Vec::new();
    for p in [Pattern::Star, Pattern::Stripe, Pattern::UnrootedP3] {
        for w in [Player::Max, Player::Min] {
            v.push(GameSpec::new(p.clone(), w));
        }
    }
    v
}

fn graph() -> impl Strategy<Value = Graph> {
    (3usize..=10, 0.1f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn values_ignore_vertex_labels(g in graph(), perm_seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let h = g.relabel(&perm).unwrap();
        for spec in all_specs() {
            prop_assert_eq!(solve(&g, &spec).unwrap().value, solve(&h, &spec).unwrap().value, "{}", spec);
        }
    }

    #[test]
    fn memo_does_not_change_values(g in graph()) {
        for spec in all_specs() {
            let on = solve(&g, &spec).unwrap();
            let off = solve_with(&g, &spec, &SolveOptions { memo: false, ..Default::default() }).unwrap();
            prop_assert_eq!(on.value, off.value);
        }
    }

    #[test]
    fn principal_variation_is_a_legal_game_of_value_length(g in graph()) {
        for spec in all_specs() {
            let r = solve(&g, &spec).unwrap();
            let mut state = GameState::new(g.clone());
            for mv in &r.principal_variation {
                prop_assert!(state.is_legal(&spec, mv));
                state = state.apply(&spec, mv.clone()).unwrap();
            }
            prop_assert!(state.is_terminal(&spec));
            prop_assert_eq!(r.principal_variation.len(), r.value);
            prop_assert_eq!(r.vertices_taken, 3 * r.value);
            prop_assert_eq!(r.perfect, 3 * r.value == g.n());
        }
    }

    #[test]
    fn random_playouts_stay_legal_and_are_bounded_by_mu(g in graph(), seed in any::<u64>()) {
        let m = mu(&g, &Pattern::Star).unwrap().size;
        let mm = min_maximal(&g, &Pattern::Star).unwrap().size;
        for spec in all_specs() {
            let mut a = RandomStrategy::new(&spec, seed);
            let mut b = RandomStrategy::new(&spec, seed ^ 1);
            let playout = run_match(&g, &spec, &mut a, &mut b).unwrap();
            prop_assert!(playout.value <= m);
            prop_assert!(playout.value >= mm);
            prop_assert_eq!(playout.moves.len(), playout.value);
        }
    }

    #[test]
    fn terminal_means_no_initiation_and_no_copy(g in graph()) {
        for spec in all_specs() {
            let p = &spec.pattern;
            let avail = g.vertices();
            let terminal = p.is_terminal(&g, avail);
            prop_assert_eq!(terminal, p.initiations(&g, avail).is_empty());
            prop_assert_eq!(terminal, p.copies(&g, avail).is_empty());
        }
    }

    #[test]
    fn packing_bounds(g in graph(), drop in any::<prop::sample::Index>()) {
        let m = mu(&g, &Pattern::Star).unwrap();
        let mm = min_maximal(&g, &Pattern::Star).unwrap();
        prop_assert!(mm.size <= m.size && m.size <= 3 * mm.size);
        prop_assert_eq!(m.witness.len(), m.size);
        let mut used = VertexSet::default();
        for copy in &m.witness {
            prop_assert!(used.is_disjoint(*copy));
            used = used | *copy;
        }
        let leftover: usize = mm.witness.iter().map(|c| c.len()).sum();
        prop_assert_eq!(leftover, 3 * mm.size);
        prop_assert!(Pattern::Star.is_terminal(&g, g.vertices() - mm.witness.iter().fold(VertexSet::default(), |a, c| a | *c)));
        let v = drop.index(g.n());
        let smaller = g.induced(g.vertices().without(v));
        prop_assert!(mu(&smaller, &Pattern::Star).unwrap().size <= m.size);
        prop_assert!(mu(&smaller, &Pattern::Star).unwrap().size + 1 >= m.size);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fast_p3_moves_match_the_generic_pattern(g in (3usize..=12, 0.1f64..0.7, any::<u64>()).prop_map(|(n, p, s)| gnp(n, p, s).unwrap()), cut in any::<u64>()) {
        let avail = VertexSet(g.vertices().0 & !cut | (g.vertices().0 & cut & cut.rotate_left(7)));
        prop_assert_eq!(generic_mismatch(&g, avail), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_family_members_are_recognized_and_perfect(seed in any::<u64>(), size in 1usize..=3) {
        let d = gen_family_d(seed, size).unwrap();
        prop_assert!(in_family_d(&d.graph).unwrap());
        prop_assert!(is_perfect(&d.graph, &GameSpec::new(Pattern::Star, Player::Min)).unwrap());
        let e = gen_family_e(seed, size).unwrap();
        prop_assert!(in_family_e(&e.graph).unwrap());
        prop_assert!(is_perfect(&e.graph, &GameSpec::new(Pattern::Star, Player::Max)).unwrap());
        let f = gen_family_f(seed, size).unwrap();
        prop_assert!(in_family_f(&f.graph).unwrap());
        prop_assert!(is_perfect(&f.graph, &GameSpec::new(Pattern::Stripe, Player::Max)).unwrap());
    }

    #[test]
    fn graph_formats_round_trip(g in (1usize..=20, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, s)| gnp(n, p, s).unwrap())) {
        prop_assert!(Graph::from_json(&g.to_json()).unwrap() == g);
        prop_assert!(Graph::from_edge_list(&g.to_edge_list()).unwrap() == g);
        prop_assert!(Graph::parse_any(&g.to_json()).unwrap() == g);
    }

    #[test]
    fn family_specifier_keys_round_trip(seed in 0u64..1000, m in 1usize..=8) {
        for inst in [gen_path(m + 2).unwrap(), gen_grid(2, m).unwrap(), gen_family_e(seed, m.min(4)).unwrap(), gen_rooks2(m).unwrap()] {
            let again = parse_family(&inst.key()).unwrap();
            prop_assert!(again == inst);
        }
    }
}
