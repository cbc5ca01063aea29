#![no_main]
use libfuzzer_sys::fuzz_target;
use matchgame::families::parse_family;
use matchgame::verify::expand_range;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 256 {
        return;
    }
    if let Ok(inst) = parse_family(text) {
        assert_eq!(parse_family(&inst.key()).unwrap(), inst);
    }
    let _ = expand_range(text);
});
