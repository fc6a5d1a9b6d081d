#![no_main]

use libfuzzer_sys::fuzz_target;
use skh_core::diagram::parse_pd;
use skh_core::homology::khovanov_homology;
use skh_core::polynomial::{euler_characteristic, vassiliev_derivative};

// Small inputs only: the pipeline is exponential in crossings.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = parse_pd(text) else { return };
    if d.crossing_count() > 6 || d.double_points().len() > 2 {
        return;
    }
    let kh = khovanov_homology(&d).expect("valid diagrams have homology");
    assert_eq!(euler_characteristic(&kh), vassiliev_derivative(&d).unwrap());
});
