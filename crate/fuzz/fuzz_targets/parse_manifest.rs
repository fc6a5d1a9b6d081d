#![no_main]

use libfuzzer_sys::fuzz_target;
use skh::parse_manifest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_manifest(text) {
        for (a, b, _) in m.pairs() {
            assert_ne!(a.name, b.name);
        }
    }
});
