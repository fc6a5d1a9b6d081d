//! Homology over F₂: Betti tables, cycle representatives, induced maps and
//! the long-exact-sequence check at a double point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::chain::{Bidegree, BigradedComplex, GradedChainMap};
use crate::diagram::SingularDiagram;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector, Echelon, TrackedEchelon};
use crate::khovanov::{build_complex, build_singular_complex, crossing_change};
use crate::polynomial::{euler_characteristic, LaurentPoly};

/// `(i, j) ↦ dim_F₂ H^{i,j}`, nonzero entries only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<Bidegree, usize>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        let mut t = Self::new();
        for (bd, n) in entries {
            t.set(bd, n);
        }
        t
    }

    pub fn get(&self, bd: Bidegree) -> usize {
        self.entries.get(&bd).copied().unwrap_or(0)
    }

    pub fn set(&mut self, bd: Bidegree, n: usize) {
        if n == 0 {
            self.entries.remove(&bd);
        } else {
            self.entries.insert(bd, n);
        }
    }

    /// Nonzero entries in ascending `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.entries.iter().map(|(&bd, &n)| (bd, n))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().sum()
    }

    /// First bidegree where the tables differ, with both values.
    pub fn first_difference(&self, other: &BettiTable) -> Option<(Bidegree, usize, usize)> {
        let keys: BTreeSet<Bidegree> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter()
            .map(|bd| (bd, self.get(bd), other.get(bd)))
            .find(|(_, a, b)| a != b)
    }
}

/// Rows are quantum degrees `j` (descending), columns homological degrees `i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "(zero)");
        }
        let is: BTreeSet<i32> = self.entries.keys().map(|bd| bd.0).collect();
        let js: BTreeSet<i32> = self.entries.keys().map(|bd| bd.1).collect();
        let (lo, hi) = (*is.first().unwrap(), *is.last().unwrap());
        let width = self.entries.values().map(|n| n.to_string().len()).max().unwrap_or(1).max(3);
        let jw = js.iter().map(|j| j.to_string().len()).max().unwrap_or(1).max(3);
        write!(f, "{:>jw$} |", "j\\i")?;
        for i in lo..=hi {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}-+{}", "-".repeat(jw), "-".repeat((width + 1) * (hi - lo + 1) as usize))?;
        for &j in js.iter().rev() {
            write!(f, "{j:>jw$} |")?;
            for i in lo..=hi {
                match self.get((i, j)) {
                    0 => write!(f, " {:>width$}", ".")?,
                    n => write!(f, " {n:>width$}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn rank_f2(m: &BitMatrix) -> usize {
    m.rank()
}

/// Betti numbers `dim ker d^{i,j} − rank d^{i−1,j}`.
pub fn betti<T: Sync>(x: &BigradedComplex<T>) -> Result<BettiTable> {
    x.check_complex()?;
    let ranks: BTreeMap<Bidegree, usize> = x
        .differentials()
        .par_iter()
        .map(|(&bd, m)| (bd, m.rank()))
        .collect();
    let rank = |bd: Bidegree| ranks.get(&bd).copied().unwrap_or(0);
    Ok(BettiTable::from_entries(x.support().map(|bd @ (i, j)| {
        (bd, x.dim(bd) - rank(bd) - rank((i - 1, j)))
    })))
}

/// `Kh(D; F₂)` of an ordinary or singular diagram.
pub fn khovanov_homology(d: &SingularDiagram) -> Result<BettiTable> {
    if d.is_singular() {
        betti(&**build_singular_complex(d)?.complex())
    } else {
        betti(&**build_complex(d)?.complex())
    }
}

/// Cycle representatives of a basis of `H^{i,j}`, with a solver that
/// expresses the class of any cycle in that basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    representatives: BTreeMap<Bidegree, Vec<BitVector>>,
    solvers: BTreeMap<Bidegree, TrackedEchelon>,
}

impl HomologyBasis {
    /// Representatives are picked among kernel vectors (lowest free column
    /// first) that are independent of boundaries and earlier picks.
    pub fn new<T: Sync>(x: &BigradedComplex<T>) -> Result<Self> {
        x.check_complex()?;
        let per: Vec<(Bidegree, Vec<BitVector>, TrackedEchelon)> = x
            .support()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|bd @ (i, j)| {
                let n = x.dim(bd);
                let out = x.d_or_zero(bd);
                let cycles = out.kernel();
                let boundaries = x.d((i - 1, j)).map(|m| m.image()).unwrap_or_default();
                let b = Echelon::from_vectors(n, boundaries.iter().cloned()).rank();
                let h = cycles.len() - b;
                let mut solver = TrackedEchelon::new(n, h);
                for v in boundaries {
                    solver.insert(v, BitVector::zeros(h));
                }
                let mut reps = Vec::with_capacity(h);
                for z in cycles {
                    if reps.len() == h {
                        break;
                    }
                    let (rest, _) = solver.reduce(z.clone());
                    if !rest.is_zero() {
                        solver.insert(z.clone(), BitVector::unit(h, reps.len()));
                        reps.push(z);
                    }
                }
                (bd, reps, solver)
            })
            .collect();
        let mut representatives = BTreeMap::new();
        let mut solvers = BTreeMap::new();
        for (bd, reps, solver) in per {
            if !reps.is_empty() {
                representatives.insert(bd, reps);
                solvers.insert(bd, solver);
            }
        }
        Ok(Self { representatives, solvers })
    }

    pub fn representatives(&self, bd: Bidegree) -> &[BitVector] {
        self.representatives.get(&bd).map_or(&[], Vec::as_slice)
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_entries(self.representatives.iter().map(|(&bd, r)| (bd, r.len())))
    }

    /// Coordinates of the class of cycle `z`; `None` if `z` is not in the
    /// span of cycles known at `bd`.
    pub fn coordinates(&self, bd: Bidegree, z: &BitVector) -> Option<BitVector> {
        match self.solvers.get(&bd) {
            Some(s) => {
                let (rest, tag) = s.reduce(z.clone());
                rest.is_zero().then_some(tag)
            }
            // H^{bd} = 0: every cycle is a boundary (or the space is zero).
            None => Some(BitVector::zeros(0)),
        }
    }
}

/// `f_*` at every bidegree where source or target homology is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source: BettiTable,
    pub target: BettiTable,
    pub blocks: BTreeMap<Bidegree, BitMatrix>,
}

impl InducedMap {
    pub fn block(&self, bd: Bidegree) -> BitMatrix {
        self.blocks
            .get(&bd)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.target.get(bd), self.source.get(bd)))
    }

    pub fn rank(&self, bd: Bidegree) -> usize {
        self.blocks.get(&bd).map_or(0, BitMatrix::rank)
    }

    pub fn kernel_dim(&self, bd: Bidegree) -> usize {
        self.source.get(bd) - self.rank(bd)
    }

    pub fn cokernel_dim(&self, bd: Bidegree) -> usize {
        self.target.get(bd) - self.rank(bd)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source == self.target && self.source.entries().all(|(bd, n)| self.rank(bd) == n)
    }
}

pub fn induced_map<S: Sync, T: Sync>(
    f: &GradedChainMap<S, T>,
    source: &HomologyBasis,
    target: &HomologyBasis,
) -> Result<InducedMap> {
    f.check_chain_map()?;
    let mut blocks = BTreeMap::new();
    let src_betti = source.betti();
    let tgt_betti = target.betti();
    for (bd, reps) in &source.representatives {
        let h = tgt_betti.get(*bd);
        let m = f.block_or_zero(*bd);
        let mut cols = Vec::with_capacity(reps.len());
        for z in reps {
            let image = m.apply(z);
            let coords = target.coordinates(*bd, &image).ok_or_else(|| {
                Error::InconsistentBasis(*bd, "image of a cycle is not a cycle of the target".into())
            })?;
            if coords.len() != h {
                return Err(Error::InconsistentBasis(*bd, "target basis has the wrong size".into()));
            }
            cols.push(coords);
        }
        blocks.insert(*bd, BitMatrix::from_columns(h, &cols));
    }
    Ok(InducedMap {
        source: src_betti,
        target: tgt_betti,
        blocks,
    })
}

pub fn is_quasi_isomorphism<S: Sync, T: Sync>(f: &GradedChainMap<S, T>) -> Result<bool> {
    let hs = HomologyBasis::new(f.source())?;
    let ht = HomologyBasis::new(f.target())?;
    Ok(induced_map(f, &hs, &ht)?.is_isomorphism())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesRow {
    pub bidegree: Bidegree,
    /// `dim Kh^{i,j}(D)`.
    pub kh: usize,
    /// `dim coker Φ̂_*^{i,j}`.
    pub coker: usize,
    /// `dim ker Φ̂_*^{i+1,j}`.
    pub ker_next: usize,
}

impl LesRow {
    pub fn holds(&self) -> bool {
        self.kh == self.coker + self.ker_next
    }
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub double_point: usize,
    pub kh: BettiTable,
    pub kh_minus: BettiTable,
    pub kh_plus: BettiTable,
    pub induced: InducedMap,
    pub rows: Vec<LesRow>,
    /// `χ(D)` and `χ(D₊) − χ(D₋)`.
    pub euler: (LaurentPoly, LaurentPoly),
}

impl LesReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(LesRow::holds) && self.euler.0 == self.euler.1
    }

    pub fn first_failure(&self) -> Option<&LesRow> {
        self.rows.iter().find(|r| !r.holds())
    }
}

/// Checks `dim Kh^{i,j}(D) = dim coker Φ̂_*^{i,j} + dim ker Φ̂_*^{i+1,j}` at
/// double point `b` (a crossing index) for every bidegree, plus the Euler
/// characteristic identity `χ(D) = χ(D₊) − χ(D₋)`.
pub fn les_check(d: &SingularDiagram, b: usize) -> Result<LesReport> {
    if !d.is_singular() {
        return Err(Error::Domain("diagram has no double point".into()));
    }
    let cc = crossing_change(d, b)?;
    let kh = khovanov_homology(d)?;
    let hm = HomologyBasis::new(cc.map.source())?;
    let hp = HomologyBasis::new(cc.map.target())?;
    let induced = induced_map(&cc.map, &hm, &hp)?;

    let mut bidegrees: BTreeSet<Bidegree> = kh.entries().map(|(bd, _)| bd).collect();
    bidegrees.extend(induced.target.entries().map(|(bd, _)| bd));
    bidegrees.extend(induced.source.entries().map(|((i, j), _)| (i - 1, j)));
    let rows = bidegrees
        .into_iter()
        .map(|bd @ (i, j)| LesRow {
            bidegree: bd,
            kh: kh.get(bd),
            coker: induced.cokernel_dim(bd),
            ker_next: induced.kernel_dim((i + 1, j)),
        })
        .collect();
    let euler = (
        euler_characteristic(&kh),
        euler_characteristic(&induced.target) - euler_characteristic(&induced.source),
    );
    Ok(LesReport {
        double_point: b,
        kh_minus: induced.source.clone(),
        kh_plus: induced.target.clone(),
        kh,
        induced,
        rows,
        euler,
    })
}
