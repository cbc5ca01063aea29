#![no_main]
use libfuzzer_sys::fuzz_target;
use matchgame::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::parse_any(text) {
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
    }
});
