//! The graded Frobenius algebra `A = F₂[x]/(x²)`, with `deg 1 = +1` and
//! `deg x = −1`.
//!
//! Elements are packed bit sets: an [`AlgElem`] holds the coefficients of
//! `{1, x}` in bits 0 and 1, a [`TensorElem`] those of
//! `{1⊗1, 1⊗x, x⊗1, x⊗x}` in bits 0..4. Both saddle maps lower the quantum
//! degree by one.

use std::fmt;
use std::ops::Add;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    One,
    X,
}

impl Label {
    pub fn degree(self) -> i32 {
        match self {
            Label::One => 1,
            Label::X => -1,
        }
    }

    fn index(self) -> u8 {
        match self {
            Label::One => 0,
            Label::X => 1,
        }
    }

    fn from_index(i: u8) -> Self {
        if i == 0 {
            Label::One
        } else {
            Label::X
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::One => "1",
            Label::X => "x",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgElem(u8);

impl AlgElem {
    pub const ZERO: AlgElem = AlgElem(0);
    pub const ONE: AlgElem = AlgElem(0b01);
    pub const X: AlgElem = AlgElem(0b10);

    pub fn from_bits(bits: u8) -> Self {
        AlgElem(bits & 0b11)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn basis(l: Label) -> Self {
        AlgElem(1 << l.index())
    }

    pub fn coeff(self, l: Label) -> bool {
        self.0 >> l.index() & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = Label> {
        [Label::One, Label::X].into_iter().filter(move |&l| self.coeff(l))
    }

    /// All four elements.
    pub fn all() -> impl Iterator<Item = AlgElem> {
        (0..4).map(AlgElem)
    }
}

// Addition over F₂ is xor.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: AlgElem) -> AlgElem {
        AlgElem(self.0 ^ rhs.0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElem(u8);

impl TensorElem {
    pub const ZERO: TensorElem = TensorElem(0);

    pub fn from_bits(bits: u8) -> Self {
        TensorElem(bits & 0b1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn basis(l: Label, r: Label) -> Self {
        TensorElem(1 << (2 * l.index() + r.index()))
    }

    pub fn coeff(self, l: Label, r: Label) -> bool {
        self.0 >> (2 * l.index() + r.index()) & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = (Label, Label)> {
        (0u8..4)
            .filter(move |k| self.0 >> k & 1 == 1)
            .map(|k| (Label::from_index(k >> 1), Label::from_index(k & 1)))
    }

    /// All sixteen elements.
    pub fn all() -> impl Iterator<Item = TensorElem> {
        (0..16).map(TensorElem)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: TensorElem) -> TensorElem {
        TensorElem(self.0 ^ rhs.0)
    }
}

/// `p ⊗ q`.
pub fn tensor(p: AlgElem, q: AlgElem) -> TensorElem {
    let mut t = TensorElem::ZERO;
    for l in p.terms() {
        for r in q.terms() {
            t = t + TensorElem::basis(l, r);
        }
    }
    t
}

/// Product of two basis labels; `None` for `x·x = 0`.
pub fn mu_basis(p: Label, q: Label) -> Option<Label> {
    match (p, q) {
        (Label::One, Label::One) => Some(Label::One),
        (Label::One, Label::X) | (Label::X, Label::One) => Some(Label::X),
        (Label::X, Label::X) => None,
    }
}

/// Coproduct of a basis label as a list of basis tensors, each with
/// coefficient one (also over the integers).
pub fn delta_basis(p: Label) -> &'static [(Label, Label)] {
    match p {
        Label::One => &[(Label::X, Label::One), (Label::One, Label::X)],
        Label::X => &[(Label::X, Label::X)],
    }
}

/// Multiplication `μ: A ⊗ A → A`.
pub fn mu(t: TensorElem) -> AlgElem {
    t.terms()
        .filter_map(|(l, r)| mu_basis(l, r))
        .fold(AlgElem::ZERO, |acc, l| acc + AlgElem::basis(l))
}

/// Comultiplication `Δ: A → A ⊗ A`, `Δ(1) = x⊗1 + 1⊗x`, `Δ(x) = x⊗x`.
pub fn delta(a: AlgElem) -> TensorElem {
    a.terms()
        .flat_map(|p| delta_basis(p).iter())
        .fold(TensorElem::ZERO, |acc, &(l, r)| acc + TensorElem::basis(l, r))
}

/// Local genus-one map when the two arcs lie on distinct circles: `Δ(pq)`.
pub fn genus1_local(p: AlgElem, q: AlgElem) -> TensorElem {
    delta(mu(tensor(p, q)))
}

/// Local genus-one map when both arcs lie on one circle: `μ(Δ(p))`, which
/// vanishes identically in characteristic two.
pub fn genus1_local_same_circle(p: AlgElem) -> AlgElem {
    mu(delta(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Three-fold tensors as maps (l, m, r) -> bit, for associativity checks.
    type Triple = [[[bool; 2]; 2]; 2];

    fn idx(l: Label) -> usize {
        l.index() as usize
    }

    fn mu_left(t: Triple) -> TensorElem {
        // (μ ⊗ id)
        let mut out = TensorElem::ZERO;
        for l in [Label::One, Label::X] {
            for m in [Label::One, Label::X] {
                for r in [Label::One, Label::X] {
                    if t[idx(l)][idx(m)][idx(r)] {
                        if let Some(p) = mu_basis(l, m) {
                            out = out + TensorElem::basis(p, r);
                        }
                    }
                }
            }
        }
        out
    }

    fn mu_right(t: Triple) -> TensorElem {
        // (id ⊗ μ)
        let mut out = TensorElem::ZERO;
        for l in [Label::One, Label::X] {
            for m in [Label::One, Label::X] {
                for r in [Label::One, Label::X] {
                    if t[idx(l)][idx(m)][idx(r)] {
                        if let Some(p) = mu_basis(m, r) {
                            out = out + TensorElem::basis(l, p);
                        }
                    }
                }
            }
        }
        out
    }

    fn delta_left(t: TensorElem) -> Triple {
        // (Δ ⊗ id)
        let mut out = [[[false; 2]; 2]; 2];
        for (l, r) in t.terms() {
            for &(a, b) in delta_basis(l) {
                out[idx(a)][idx(b)][idx(r)] ^= true;
            }
        }
        out
    }

    fn delta_right(t: TensorElem) -> Triple {
        // (id ⊗ Δ)
        let mut out = [[[false; 2]; 2]; 2];
        for (l, r) in t.terms() {
            for &(a, b) in delta_basis(r) {
                out[idx(l)][idx(a)][idx(b)] ^= true;
            }
        }
        out
    }

    fn all_triples() -> impl Iterator<Item = Triple> {
        (0u32..256).map(|bits| {
            let mut t = [[[false; 2]; 2]; 2];
            for k in 0..8 {
                t[k >> 2][(k >> 1) & 1][k & 1] = bits >> k & 1 == 1;
            }
            t
        })
    }

    #[test]
    fn multiplication_table() {
        let one = AlgElem::ONE;
        let x = AlgElem::X;
        assert_eq!(mu(tensor(one, x)), x);
        assert_eq!(mu(tensor(x, one)), x);
        assert_eq!(mu(tensor(x, x)), AlgElem::ZERO);
        assert_eq!(mu(tensor(one, one)), one);
    }

    #[test]
    fn comultiplication_table() {
        let expect_one = TensorElem::basis(Label::X, Label::One) + TensorElem::basis(Label::One, Label::X);
        assert_eq!(delta(AlgElem::ONE), expect_one);
        assert_eq!(delta(AlgElem::X), TensorElem::basis(Label::X, Label::X));
        assert_eq!(delta(AlgElem::ZERO), TensorElem::ZERO);
    }

    #[test]
    fn genus_one_local_values() {
        let one = AlgElem::ONE;
        let x = AlgElem::X;
        assert_eq!(genus1_local(one, one), delta(one));
        assert_eq!(genus1_local(one, x), TensorElem::basis(Label::X, Label::X));
        assert_eq!(genus1_local(x, x), TensorElem::ZERO);
        for p in AlgElem::all() {
            assert_eq!(genus1_local_same_circle(p), AlgElem::ZERO);
        }
    }

    #[test]
    fn associativity_exhaustive() {
        for t in all_triples() {
            assert_eq!(mu(mu_left(t)), mu(mu_right(t)));
        }
    }

    #[test]
    fn coassociativity_exhaustive() {
        for a in AlgElem::all() {
            assert_eq!(delta_left(delta(a)), delta_right(delta(a)));
        }
    }

    #[test]
    fn frobenius_relation_exhaustive() {
        for t in TensorElem::all() {
            let lhs = delta(mu(t));
            assert_eq!(lhs, mu_left(delta_right(t)), "(μ⊗id)(id⊗Δ) at {t:?}");
            assert_eq!(lhs, mu_right(delta_left(t)), "(id⊗μ)(Δ⊗id) at {t:?}");
        }
    }

    #[test]
    fn three_saddle_composites_vanish() {
        for t in TensorElem::all() {
            assert_eq!(mu(delta(mu(t))), AlgElem::ZERO);
        }
        for a in AlgElem::all() {
            assert_eq!(delta(mu(delta(a))), TensorElem::ZERO);
        }
    }

    #[test]
    fn saddles_lower_degree_by_one() {
        let deg2 = |l: Label, r: Label| l.degree() + r.degree();
        for l in [Label::One, Label::X] {
            for r in [Label::One, Label::X] {
                if let Some(p) = mu_basis(l, r) {
                    assert_eq!(p.degree(), deg2(l, r) - 1);
                }
            }
            for &(a, b) in delta_basis(l) {
                assert_eq!(deg2(a, b), l.degree() - 1);
            }
        }
    }
}
