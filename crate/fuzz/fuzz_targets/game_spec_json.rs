#![no_main]
use libfuzzer_sys::fuzz_target;
use matchgame::GameSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = GameSpec::from_json(text) {
        let again = GameSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(again.to_json(), spec.to_json());
    }
});
