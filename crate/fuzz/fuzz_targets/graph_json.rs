#![no_main]
use libfuzzer_sys::fuzz_target;
use matchgame::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::from_json(text) {
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
});
