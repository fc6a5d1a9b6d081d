mod oracle;

use std::collections::BTreeMap;

use oracle::{braid, naive_betti, random_braid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skh_core::chain::{cone, mcone, CubeOfComplexes, GradedChainMap};
use skh_core::diagram::{parse_pd, State};
use skh_core::homology::{betti, is_quasi_isomorphism, khovanov_homology, les_check};
use skh_core::khovanov::{build_complex, build_singular_complex, crossing_change, enhanced_basis, genus1_map, verify_genus1_factorization};
use skh_core::Error;

#[test]
fn complexes_and_maps_on_random_braids() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..120 {
        let w = random_braid(&mut rng, 8, 2);
        let d = w.closure().unwrap();
        let s = build_singular_complex(&d).unwrap();
        assert!(s.complex().verify_complex(), "{w}");
        assert!(s.cube().check_faces().is_ok(), "{w}");
        for a in 0..1u32 << s.double_points().len() {
            assert!(s.resolution(a).complex().verify_complex(), "{w}");
        }
        for b in d.double_points() {
            assert!(genus1_map(&d, &[], b).unwrap().verify_chain_map(), "{w}");
            assert!(crossing_change(&d, b).unwrap().map.verify_chain_map(), "{w}");
            assert!(verify_genus1_factorization(&d, &[], b).unwrap(), "{w}");
        }
    }
}

#[test]
fn betti_matches_naive_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let w = random_braid(&mut rng, 6, 2);
        let d = w.closure().unwrap();
        let s = build_singular_complex(&d).unwrap();
        let fast: BTreeMap<_, _> = betti(&**s.complex()).unwrap().entries().collect();
        assert_eq!(fast, naive_betti(&**s.complex()), "{w}");
    }
}

#[test]
fn generator_count_is_sum_over_states() {
    let d = braid("s1 S2 s1 s2 S1");
    let k = build_complex(&d).unwrap();
    let expect: usize = State::all(5).map(|s| 1usize << d.smooth(s).unwrap().count).sum();
    assert_eq!(k.complex().total_dim(), expect);
    let (si, sj) = k.shift();
    for bd in k.complex().support() {
        assert_eq!(enhanced_basis(&d, bd.0 - si, bd.1 - sj).unwrap().len(), k.complex().dim(bd));
    }
}

#[test]
fn saddles_change_circle_count_by_one() {
    let d = braid("s1 S2 s1 S2 s3");
    for s in State::all(5) {
        let c = d.smooth(s).unwrap().count;
        for k in 0..5 {
            let flipped = if s.contains(k) { s.without(k) } else { s.with(k) };
            assert_eq!(c.abs_diff(d.smooth(flipped).unwrap().count), 1);
        }
    }
}

#[test]
fn ordinary_pipeline_is_singular_pipeline_with_r_zero() {
    for w in ["s1 s1 s1", "s1 S2 s1 S2", "S1 S1", "n=3 s1"] {
        let d = braid(w);
        let s = build_singular_complex(&d).unwrap();
        let k = build_complex(&d).unwrap();
        assert!(s.complex().same_structure(&**k.complex()), "{w}");
    }
}

#[test]
fn one_double_point_mcone_is_the_cone() {
    for w in ["s1 s1 t1", "t1 S2 s1", "t1"] {
        let d = braid(w);
        let b = d.double_points()[0];
        let s = build_singular_complex(&d).unwrap();
        let c = cone(&genus1_map(&d, &[], b).unwrap());
        assert!(s.complex().same_structure(&*c.complex), "{w}");
    }
}

#[test]
fn permuting_double_points_keeps_betti() {
    for w in ["t1 t1 t1", "t1 s2 t1 t2", "t1 S2 s1 t2"] {
        let d = braid(w);
        let base = khovanov_homology(&d).unwrap();
        let r = d.double_points().len();
        let perms: Vec<Vec<usize>> = match r {
            2 => vec![vec![1, 0]],
            3 => vec![vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]],
            _ => unreachable!(),
        };
        for p in perms {
            let e = d.permute_double_points(&p).unwrap();
            assert_eq!(khovanov_homology(&e).unwrap(), base, "{w} {p:?}");
        }
    }
}

#[test]
fn les_holds_on_random_singular_braids() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    while done < 40 {
        let d = random_braid(&mut rng, 7, 2).closure().unwrap();
        for b in d.double_points() {
            let rep = les_check(&d, b).unwrap();
            assert!(rep.holds(), "{d} at {b}: {:?}", rep.first_failure());
            done += 1;
        }
    }
}

#[test]
fn fi_double_points_kill_homology() {
    for w in ["n=3 s1 t2", "s1 s1 s1 t2", "t1 s1 t2", "S1 S2 t3"] {
        let d = braid(w);
        assert!(d.has_fi_double_point(), "{w}");
        assert!(khovanov_homology(&d).unwrap().is_empty(), "{w}");
        for b in d.double_points().into_iter().filter(|&b| d.is_fi_double_point(b)) {
            assert!(is_quasi_isomorphism(&crossing_change(&d, b).unwrap().map).unwrap(), "{w}");
        }
    }
    assert!(khovanov_homology(&parse_pd("Xs(1,1,2,2)").unwrap()).unwrap().is_empty());
}

#[test]
fn quasi_isomorphic_edges_make_the_mcone_acyclic() {
    // Square whose direction-0 edges are identities: the total complex is acyclic.
    let k = build_complex(&braid("s1 s1 s1")).unwrap();
    let x = k.complex().clone();
    let id: BTreeMap<_, _> = x.support().map(|bd| (bd, skh_core::f2::BitMatrix::identity(x.dim(bd)))).collect();
    let zero: BTreeMap<_, _> = BTreeMap::new();
    let edges = BTreeMap::from([((0, 0), id.clone()), ((2, 0), id), ((0, 1), zero.clone()), ((1, 1), zero)]);
    let cube = CubeOfComplexes::new(vec![x.clone(), x.clone(), x.clone(), x.clone()], edges).unwrap();
    assert!(betti(&mcone(&cube).unwrap()).unwrap().is_empty());
    let f = GradedChainMap::identity(x);
    assert!(betti(&*cone(&f).complex).unwrap().is_empty());
}

#[test]
fn errors_are_reported() {
    let d = braid("t1 s1");
    assert!(matches!(genus1_map(&d, &[], 1), Err(Error::Domain(_))));
    assert!(matches!(les_check(&braid("s1 s1"), 0), Err(Error::Domain(_))));
    assert!(matches!(build_complex(&d), Err(Error::Domain(_))));
    assert!(matches!(d.resolve_double_points(&[1]), Err(Error::Domain(_))));
}
