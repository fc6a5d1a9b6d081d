//! Laurent polynomials in `q` with integer coefficients, graded Euler
//! characteristics, and the unnormalized Jones polynomial by state sum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::chain::BigradedComplex;
use crate::diagram::{SingularDiagram, State, MAX_CROSSINGS};
use crate::error::{Error, Result};
use crate::homology::BettiTable;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, e);
        p
    }

    /// `q + q⁻¹`.
    pub fn circle() -> Self {
        Self::monomial(1, 1) + Self::monomial(1, -1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, e: i32) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + -rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(x * y, a + b);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Ascending exponents, e.g. `q^-1 + q`, `q + q^3 + q^5 - q^9`, `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (k, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.unsigned_abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "q^{e}")?,
                (_, 1) => write!(f, "{a}q")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// `Σ (−1)^i q^j dim H^{i,j}`.
pub fn euler_characteristic(b: &BettiTable) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for ((i, j), n) in b.entries() {
        p.add_term(if i % 2 == 0 { n as i64 } else { -(n as i64) }, j);
    }
    p
}

/// `Σ (−1)^i q^j dim C^{i,j}`, taken before homology.
pub fn chain_euler_characteristic<T>(x: &BigradedComplex<T>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for bd @ (i, j) in x.support() {
        let n = x.dim(bd) as i64;
        p.add_term(if i % 2 == 0 { n } else { -n }, j);
    }
    p
}

/// `Ṽ(D) = (−1)^{n₋} q^{n₊−2n₋} Σ_s (−q)^{|s|} (q+q⁻¹)^{#circles(D_s)}`.
pub fn jones_state_sum(d: &SingularDiagram) -> Result<LaurentPoly> {
    if d.is_singular() {
        return Err(Error::Domain("the state sum needs an ordinary diagram".into()));
    }
    let n = d.crossing_count();
    if n > MAX_CROSSINGS {
        return Err(Error::TooLarge(format!("{n} crossings")));
    }
    // Bucket states by (|s|, circles) first; the polynomial work is tiny.
    let mut buckets: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for s in State::all(n) {
        *buckets.entry((s.weight(), d.smooth(s)?.count)).or_insert(0) += 1;
    }
    let loop_ = LaurentPoly::circle();
    let mut sum = LaurentPoly::zero();
    for ((w, c), count) in buckets {
        let sign = if w % 2 == 0 { count } else { -count };
        sum += &(LaurentPoly::monomial(sign, w as i32) * loop_.pow(c as u32));
    }
    let counts = d.counts();
    let sign = if counts.n_minus.is_multiple_of(2) { 1 } else { -1 };
    Ok(sum.shift(counts.n_plus as i32 - 2 * counts.n_minus as i32) * LaurentPoly::monomial(sign, 0))
}

/// `Ṽ^{(r)}(D) = Σ_A (−1)^{r−|A|} Ṽ(D_A)` over positive-resolution sets `A`.
pub fn vassiliev_derivative(d: &SingularDiagram) -> Result<LaurentPoly> {
    let dp = d.double_points();
    let r = dp.len();
    let mut total = LaurentPoly::zero();
    for a in 0u32..1 << r {
        let positive: Vec<usize> = (0..r).filter(|&k| a >> k & 1 == 1).map(|k| dp[k]).collect();
        let v = jones_state_sum(&d.resolve_double_points(&positive)?)?;
        total += &if (r - positive.len()).is_multiple_of(2) { v } else { -v };
    }
    Ok(total)
}
