mod oracle;

use oracle::{braid, jones_oracle, random_braid, to_poly, vassiliev_oracle, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skh_core::diagram::parse_pd;
use skh_core::homology::{betti, khovanov_homology, BettiTable};
use skh_core::khovanov::build_complex;
use skh_core::polynomial::{chain_euler_characteristic, euler_characteristic, jones_state_sum, vassiliev_derivative};

fn poly(terms: &[(i32, i64)]) -> Poly {
    terms.iter().copied().collect()
}

#[test]
fn oracle_reproduces_known_jones_values() {
    // Unnormalized Jones polynomials, (q + q⁻¹)·V with t = q² conventions.
    assert_eq!(jones_oracle(&parse_pd("O").unwrap()), poly(&[(-1, 1), (1, 1)]));
    assert_eq!(jones_oracle(&parse_pd("X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)").unwrap()), poly(&[(1, 1), (3, 1), (5, 1), (9, -1)]));
    assert_eq!(jones_oracle(&braid("S1 S1 S1")), poly(&[(-9, -1), (-5, 1), (-3, 1), (-1, 1)]));
    assert_eq!(jones_oracle(&braid("s1 S2 s1 S2")), poly(&[(-5, 1), (5, 1)]));
    assert_eq!(jones_oracle(&braid("s1 s1")), poly(&[(0, 1), (2, 1), (4, 1), (6, 1)]));
}

#[test]
fn state_sum_matches_oracle_and_chain_euler_on_random_braids() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..150 {
        let w = random_braid(&mut rng, 8, 0);
        let d = w.closure().unwrap();
        let v = jones_state_sum(&d).unwrap();
        assert_eq!(to_poly(&v), jones_oracle(&d), "{w}");
        let k = build_complex(&d).unwrap();
        assert_eq!(chain_euler_characteristic(&**k.complex()), v, "{w}");
        assert_eq!(euler_characteristic(&betti(&**k.complex()).unwrap()), v, "{w}");
    }
}

#[test]
fn singular_euler_is_vassiliev_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let w = random_braid(&mut rng, 7, 3);
        let d = w.closure().unwrap();
        let v = vassiliev_derivative(&d).unwrap();
        assert_eq!(to_poly(&v), vassiliev_oracle(&d), "{w}");
        assert_eq!(euler_characteristic(&khovanov_homology(&d).unwrap()), v, "{w}");
    }
}

#[test]
fn known_homology_over_f2() {
    let hopf = khovanov_homology(&braid("s1 s1")).unwrap();
    assert_eq!(hopf, BettiTable::from_entries([((0, 0), 1), ((0, 2), 1), ((2, 4), 1), ((2, 6), 1)]));
    let left = khovanov_homology(&braid("S1 S1 S1")).unwrap();
    let expect = BettiTable::from_entries([((0, -1), 1), ((0, -3), 1), ((-2, -5), 1), ((-2, -7), 1), ((-3, -7), 1), ((-3, -9), 1)]);
    assert_eq!(left, expect);
}

#[test]
fn jones_is_multiplicative_under_disjoint_union() {
    let a = braid("s1 s1 s1");
    let b = braid("s1 S2 s1 S2");
    let u = a.disjoint_union(&b);
    assert_eq!(jones_state_sum(&u).unwrap(), jones_state_sum(&a).unwrap() * jones_state_sum(&b).unwrap());
}
