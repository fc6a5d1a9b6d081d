#![no_main]

use libfuzzer_sys::fuzz_target;
use skh_core::diagram::{parse_pd, BraidWord};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = BraidWord::parse(text) else { return };
    if w.generators().len() > 64 || w.strands() > 64 {
        return;
    }
    assert_eq!(BraidWord::parse(&w.to_string()).unwrap(), w);
    let d = w.closure().expect("braid closures are valid diagrams");
    assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
});
