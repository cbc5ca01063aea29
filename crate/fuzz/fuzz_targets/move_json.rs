#![no_main]
use libfuzzer_sys::fuzz_target;
use matchgame::{GameState, Graph, Move, Pattern, Player, GameSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(mv) = Move::from_json(text) {
        assert_eq!(Move::from_json(&mv.to_json()).unwrap(), mv);
        let g = Graph::new(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (0, 8)]).unwrap();
        let state = GameState::new(g);
        for pattern in [Pattern::Star, Pattern::Stripe, Pattern::UnrootedP3] {
            let spec = GameSpec::new(pattern, Player::Max);
            assert_eq!(state.is_legal(&spec, &mv), state.apply(&spec, mv).is_ok());
        }
    }
});
