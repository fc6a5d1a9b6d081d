//! Test oracles that share no code with the library's complex builder or
//! linear algebra: loop tracing by walking edges, Gaussian elimination on
//! plain `Vec<bool>` rows, and a random singular-braid generator.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use skh_core::chain::BigradedComplex;
use skh_core::diagram::{BraidGenerator, BraidWord, CrossingKind, SingularDiagram};

/// Laurent polynomial as exponent → coefficient, zero terms dropped.
pub type Poly = BTreeMap<i32, i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&e, &c) in a {
        for (&f, &d) in b {
            *out.entry(e + f).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Number of loops after smoothing crossing `k` by bit `k` of `state`,
/// found by walking from edge to edge.
fn loops(d: &SingularDiagram, state: u32) -> usize {
    // partner[(edge, occurrence)] = the other end of the smoothing arc
    let mut ends: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (k, x) in d.crossings().iter().enumerate() {
        for (slot, &e) in x.edges.iter().enumerate() {
            ends.entry(e).or_default().push((k, slot));
        }
    }
    let arc_partner = |k: usize, slot: usize| -> usize {
        let one = state >> k & 1 == 1;
        match (one, slot) {
            (false, 0) => 1,
            (false, 1) => 0,
            (false, 2) => 3,
            (false, _) => 2,
            (true, 0) => 3,
            (true, 3) => 0,
            (true, 1) => 2,
            (true, _) => 1,
        }
    };
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut count = 0;
    for k in 0..d.crossings().len() {
        for slot in 0..4 {
            if seen.contains(&(k, slot)) {
                continue;
            }
            count += 1;
            let (mut ck, mut cs) = (k, slot);
            loop {
                seen.insert((ck, cs));
                let os = arc_partner(ck, cs);
                seen.insert((ck, os));
                // leave through slot os along its edge to the other end
                let e = d.crossings()[ck].edges[os];
                let occ = &ends[&e];
                let next = if occ[0] == (ck, os) { occ[1] } else { occ[0] };
                if seen.contains(&next) {
                    break;
                }
                (ck, cs) = next;
            }
        }
    }
    count + d.free_loops()
}

/// Unnormalized Jones polynomial from the Kauffman bracket, with its own
/// crossing counts and loop tracing.
pub fn jones_oracle(d: &SingularDiagram) -> Poly {
    let n = d.crossings().len();
    let n_plus = d.crossings().iter().filter(|x| x.kind == CrossingKind::Positive).count() as i32;
    let n_minus = d.crossings().iter().filter(|x| x.kind == CrossingKind::Negative).count() as i32;
    assert_eq!(n_plus + n_minus, n as i32, "oracle needs an ordinary diagram");
    let circle: Poly = [(1, 1), (-1, 1)].into_iter().collect();
    let mut total = Poly::new();
    for state in 0u32..1 << n {
        let w = state.count_ones() as i32;
        let mut term: Poly = [(w, if w % 2 == 0 { 1 } else { -1 })].into_iter().collect();
        for _ in 0..loops(d, state) {
            term = poly_mul(&term, &circle);
        }
        for (e, c) in term {
            *total.entry(e).or_insert(0) += c;
        }
    }
    let sign = if n_minus % 2 == 0 { 1 } else { -1 };
    let mut out: Poly = total.into_iter().map(|(e, c)| (e + n_plus - 2 * n_minus, sign * c)).collect();
    out.retain(|_, c| *c != 0);
    out
}

/// Iterated skein relation over the cube of resolutions.
pub fn vassiliev_oracle(d: &SingularDiagram) -> Poly {
    let dp: Vec<usize> = (0..d.crossings().len()).filter(|&k| d.crossings()[k].kind == CrossingKind::Singular).collect();
    let r = dp.len();
    let mut total = Poly::new();
    for a in 0u32..1 << r {
        let pos: Vec<usize> = (0..r).filter(|&k| a >> k & 1 == 1).map(|k| dp[k]).collect();
        let sign = if (r - pos.len()).is_multiple_of(2) { 1 } else { -1 };
        for (e, c) in jones_oracle(&d.resolve_double_points(&pos).unwrap()) {
            *total.entry(e).or_insert(0) += sign * c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

pub fn to_poly(p: &skh_core::LaurentPoly) -> Poly {
    p.terms().collect()
}

/// Rank over F₂ by elimination on rows of bools.
pub fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers via `naive_rank`, reading matrices entry by entry.
pub fn naive_betti<T>(x: &BigradedComplex<T>) -> BTreeMap<(i32, i32), usize> {
    let rank = |bd: (i32, i32)| {
        x.d(bd).map_or(0, |m| {
            naive_rank((0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect())
        })
    };
    let mut out = BTreeMap::new();
    for bd @ (i, j) in x.support() {
        let h = x.dim(bd) - rank(bd) - rank((i - 1, j));
        if h > 0 {
            out.insert(bd, h);
        }
    }
    out
}

/// A random braid word with at most `max_len` generators, at most
/// `max_singular` of them singular, on 2..=4 strands.
pub fn random_braid(rng: &mut impl Rng, max_len: usize, max_singular: usize) -> BraidWord {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_len);
    let mut singular = 0;
    let generators = (0..len)
        .map(|_| {
            let index = rng.gen_range(1..strands);
            let kind = match rng.gen_range(0..5) {
                0 if singular < max_singular => {
                    singular += 1;
                    CrossingKind::Singular
                }
                1 | 2 => CrossingKind::Positive,
                _ => CrossingKind::Negative,
            };
            BraidGenerator { index, kind }
        })
        .collect();
    BraidWord::new(strands, generators).unwrap()
}

pub fn braid(word: &str) -> SingularDiagram {
    BraidWord::parse(word).unwrap().closure().unwrap()
}
