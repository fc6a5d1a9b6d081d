mod oracle;

use oracle::random_braid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skh_core::diagram::{BraidGenerator, BraidWord, CrossingKind};
use skh_core::homology::khovanov_homology;

fn kh(w: &BraidWord) -> skh_core::BettiTable {
    khovanov_homology(&w.closure().unwrap()).unwrap()
}

fn gen(index: usize, kind: CrossingKind) -> BraidGenerator {
    BraidGenerator { index, kind }
}

#[test]
fn markov_and_braid_moves_preserve_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let w = random_braid(&mut rng, 6, 2);
        let n = w.strands();
        let base = kh(&w);
        let mut g = w.generators().to_vec();

        // RI via stabilization, either sign
        let kind = if rng.gen() { CrossingKind::Positive } else { CrossingKind::Negative };
        let mut stab = g.clone();
        stab.push(gen(n, kind));
        assert_eq!(kh(&BraidWord::new(n + 1, stab).unwrap()), base, "RI {w}");

        // RII: insert σσ⁻¹ anywhere
        let at = rng.gen_range(0..=g.len());
        let i = rng.gen_range(1..n);
        let mut r2 = g.clone();
        r2.splice(at..at, [gen(i, CrossingKind::Positive), gen(i, CrossingKind::Negative)]);
        assert_eq!(kh(&BraidWord::new(n, r2).unwrap()), base, "RII {w}");

        // conjugation (a sequence of RII/RIII moves on the closure)
        g.rotate_left(1);
        assert_eq!(kh(&BraidWord::new(n, g).unwrap()), base, "conjugation {w}");
    }
}

#[test]
fn singular_braid_relations_preserve_homology() {
    use CrossingKind::{Negative as N, Positive as P, Singular as T};
    type Word = Vec<(usize, CrossingKind)>;
    let cases: [(Word, Word); 5] = [
        (vec![(1, P), (2, P), (1, P)], vec![(2, P), (1, P), (2, P)]),
        (vec![(1, P), (2, P), (1, T)], vec![(2, T), (1, P), (2, P)]),
        (vec![(1, N), (2, N), (1, T)], vec![(2, T), (1, N), (2, N)]),
        (vec![(1, T), (1, P)], vec![(1, P), (1, T)]),
        (vec![(1, T), (3, P)], vec![(3, P), (1, T)]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (lhs, rhs) in cases {
        for _ in 0..6 {
            let ctx = random_braid(&mut rng, 3, 1);
            let tail: Vec<_> = ctx.generators().to_vec();
            let n = ctx.strands().max(4);
            let build = |side: &[(usize, CrossingKind)]| {
                let mut g: Vec<_> = side.iter().map(|&(i, k)| gen(i, k)).collect();
                g.extend(tail.iter().copied());
                BraidWord::new(n, g).unwrap()
            };
            let (a, b) = (build(&lhs), build(&rhs));
            assert_eq!(kh(&a), kh(&b), "{a} vs {b}");
        }
    }
}
