#![no_main]

use libfuzzer_sys::fuzz_target;
use skh_core::diagram::parse_pd;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_pd(text) {
        let again = parse_pd(&d.to_pd()).expect("serialized diagram parses");
        assert_eq!(again, d);
    }
});
