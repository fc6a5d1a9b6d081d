//! Khovanov complexes over F₂ built from enhanced states, the genus-one
//! chain map at a double point, and the complex of a singular diagram as
//! the multiple mapping cone over its cube of resolutions.
//!
//! An enhanced state `(s, ρ)` of an ordinary diagram with `n₊` positive and
//! `n₋` negative crossings sits in bidegree
//! `(|s| − n₋, deg(s,ρ) + |s| + n₊ − 2n₋)` with `deg = #(ρ=1) − #(ρ=x)`.
//! Within a bidegree, generators are ordered by state bitmask, then by
//! labeling bitmask (bit `k` set when circle `k` is labeled `x`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::chain::{mcone, mcone_map, Bidegree, BigradedComplex, Blocks, CubeOfComplexes, CubeTag, GradedChainMap};
use crate::diagram::{CircleDecomposition, Counts, CrossingKind, SingularDiagram, State, MAX_CIRCLES, MAX_CROSSINGS};
use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::frobenius::{self, delta_basis, mu_basis, AlgElem, Label};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub state: State,
    labels: u64,
    circles: u8,
}

impl EnhancedState {
    pub fn new(state: State, circles: usize, x_mask: u64) -> Self {
        assert!(circles <= MAX_CIRCLES);
        assert!(circles == 64 || x_mask >> circles == 0, "labels outside circle range");
        Self {
            state,
            labels: x_mask,
            circles: circles as u8,
        }
    }

    pub fn circles(&self) -> usize {
        self.circles as usize
    }

    /// Bit `k` is set when circle `k` carries `x`.
    pub fn x_mask(&self) -> u64 {
        self.labels
    }

    pub fn label(&self, circle: usize) -> Label {
        if self.labels >> circle & 1 == 1 {
            Label::X
        } else {
            Label::One
        }
    }

    /// `#(ρ=1) − #(ρ=x)`.
    pub fn degree(&self) -> i32 {
        self.circles as i32 - 2 * self.labels.count_ones() as i32
    }

    /// Bidegree in the unshifted complex: `(|s|, deg + |s|)`.
    pub fn unshifted_bidegree(&self) -> Bidegree {
        let w = self.state.weight() as i32;
        (w, self.degree() + w)
    }
}

impl fmt::Debug for EnhancedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for c in 0..self.state.len() {
            write!(f, "{}", if self.state.contains(c) { '1' } else { '0' })?;
        }
        write!(f, ";")?;
        for k in 0..self.circles() {
            write!(f, "{}", self.label(k))?;
        }
        write!(f, ")")
    }
}

fn binomials() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for n in 0..65 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// Position of `mask` among the masks with the same popcount, ascending.
fn colex_rank(mask: u64) -> usize {
    let table = binomials();
    let mut rank = 0u64;
    let mut rest = mask;
    let mut m = 1;
    while rest != 0 {
        let p = rest.trailing_zeros() as usize;
        rank += table[p][m];
        m += 1;
        rest &= rest - 1;
    }
    rank as usize
}

/// Compact circle data for one state.
#[derive(Clone, Debug)]
struct Smoothing {
    circles: u8,
    free_loops: u8,
    circle_of_edge: Vec<u8>,
    /// Per crossing: circles of the arc through slot a and of the arc through slot c.
    arcs: Vec<[u8; 2]>,
    /// Some edge on each non-free circle.
    rep_edge: Vec<u8>,
    /// Per number of x-labels, offset of this state's generators in its block.
    offsets: Vec<u32>,
}

impl Smoothing {
    fn from_decomposition(c: &CircleDecomposition) -> Self {
        let bound = c.count - c.free_loops;
        let mut rep_edge = vec![u8::MAX; bound];
        for (e, &k) in c.circle_of_edge.iter().enumerate() {
            if rep_edge[k] == u8::MAX {
                rep_edge[k] = e as u8;
            }
        }
        Self {
            circles: c.count as u8,
            free_loops: c.free_loops as u8,
            circle_of_edge: c.circle_of_edge.iter().map(|&k| k as u8).collect(),
            arcs: c.arcs.iter().map(|&[p, q]| [p as u8, q as u8]).collect(),
            rep_edge,
            offsets: Vec::new(),
        }
    }

    fn count(&self) -> usize {
        self.circles as usize
    }

    /// Where circle `k` of this smoothing lands in `other`, for circles
    /// not touched by the saddle.
    fn follow(&self, k: usize, other: &Smoothing) -> usize {
        let bound = self.count() - self.free_loops as usize;
        if k < bound {
            other.circle_of_edge[self.rep_edge[k] as usize] as usize
        } else {
            k - bound + (other.count() - other.free_loops as usize)
        }
    }
}

/// The Khovanov complex `C(D) = C̄(D)[−n₋]{−2n₋+n₊}` of an ordinary diagram.
#[derive(Clone, Debug)]
pub struct KhovanovComplex {
    diagram: SingularDiagram,
    counts: Counts,
    smoothings: Vec<Smoothing>,
    complex: Arc<BigradedComplex<EnhancedState>>,
}

impl KhovanovComplex {
    pub fn diagram(&self) -> &SingularDiagram {
        &self.diagram
    }

    pub fn counts(&self) -> Counts {
        self.counts
    }

    pub fn complex(&self) -> &Arc<BigradedComplex<EnhancedState>> {
        &self.complex
    }

    /// `(−n₋, n₊ − 2n₋)`, the shift from the unshifted complex.
    pub fn shift(&self) -> (i32, i32) {
        let Counts { n_plus, n_minus, .. } = self.counts;
        (-(n_minus as i32), n_plus as i32 - 2 * n_minus as i32)
    }

    pub fn bidegree_of(&self, g: &EnhancedState) -> Bidegree {
        let (i, j) = g.unshifted_bidegree();
        let (k, l) = self.shift();
        (i + k, j + l)
    }

    /// Bidegree and position of a generator in its block.
    pub fn index_of(&self, g: &EnhancedState) -> (Bidegree, usize) {
        let sm = &self.smoothings[g.state.bits() as usize];
        let k = g.labels.count_ones() as usize;
        (self.bidegree_of(g), sm.offsets[k] as usize + colex_rank(g.labels))
    }

    fn smoothing(&self, s: State) -> &Smoothing {
        &self.smoothings[s.bits() as usize]
    }

    /// Saddle at crossing `c` taking `g` to the state with bit `c` toggled.
    /// Every output term has coefficient one (also over the integers).
    fn saddle(&self, g: &EnhancedState, c: usize) -> Vec<EnhancedState> {
        let s = g.state;
        let t = if s.contains(c) { s.without(c) } else { s.with(c) };
        let (src, dst) = (self.smoothing(s), self.smoothing(t));
        let [p, q] = src.arcs[c].map(usize::from);
        let [tp, tq] = dst.arcs[c].map(usize::from);

        let mut base = 0u64;
        for k in (0..src.count()).filter(|&k| k != p && k != q) {
            if g.labels >> k & 1 == 1 {
                base |= 1 << src.follow(k, dst);
            }
        }
        let bit = |l: Label, k: usize| if l == Label::X { 1u64 << k } else { 0 };
        let make = |mask: u64| EnhancedState::new(t, dst.count(), mask);
        if p != q {
            debug_assert_eq!(tp, tq);
            match mu_basis(g.label(p), g.label(q)) {
                Some(l) => vec![make(base | bit(l, tp))],
                None => Vec::new(),
            }
        } else {
            debug_assert_ne!(tp, tq);
            delta_basis(g.label(p))
                .iter()
                .map(|&(l, r)| make(base | bit(l, tp) | bit(r, tq)))
                .collect()
        }
    }
}

fn ordinary_only(d: &SingularDiagram) -> Result<()> {
    if d.is_singular() {
        return Err(Error::Domain("diagram has double points; resolve them first".into()));
    }
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(Error::TooLarge(format!(
            "{} crossings exceed the limit of {MAX_CROSSINGS}",
            d.crossing_count()
        )));
    }
    Ok(())
}

fn smoothings(d: &SingularDiagram) -> Result<Vec<Smoothing>> {
    let n = d.crossing_count();
    let all: Vec<Smoothing> = (0u32..1 << n)
        .into_par_iter()
        .map(|bits| Smoothing::from_decomposition(&d.smooth_unchecked(State::new(bits, n))))
        .collect();
    if let Some(sm) = all.iter().find(|sm| sm.count() > MAX_CIRCLES) {
        return Err(Error::TooLarge(format!("a smoothing has {} circles (limit {MAX_CIRCLES})", sm.count())));
    }
    Ok(all)
}

/// Enhanced states of `d` in unshifted bidegree `(i, j)`, in basis order.
pub fn enhanced_basis(d: &SingularDiagram, i: i32, j: i32) -> Result<Vec<EnhancedState>> {
    ordinary_only(d)?;
    let n = d.crossing_count();
    if i < 0 || i as usize > n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for s in State::all(n).filter(|s| s.weight() == i as usize) {
        let c = d.smooth_unchecked(s).count;
        if c > MAX_CIRCLES {
            return Err(Error::TooLarge(format!("{c} circles")));
        }
        // deg = c − 2k must equal j − i
        let twice_k = c as i32 - (j - i);
        if twice_k < 0 || twice_k % 2 != 0 || twice_k / 2 > c as i32 {
            continue;
        }
        let k = (twice_k / 2) as u32;
        out.extend(
            (0u64..1 << c)
                .filter(|m| m.count_ones() == k)
                .map(|m| EnhancedState::new(s, c, m)),
        );
    }
    Ok(out)
}

/// The Khovanov complex of an ordinary diagram.
pub fn build_complex(d: &SingularDiagram) -> Result<KhovanovComplex> {
    ordinary_only(d)?;
    let n = d.crossing_count();
    let counts = d.counts();
    let mut smoothings = smoothings(d)?;
    let (shift_i, shift_j) = (-(counts.n_minus as i32), counts.n_plus as i32 - 2 * counts.n_minus as i32);

    let mut basis: BTreeMap<Bidegree, Vec<EnhancedState>> = BTreeMap::new();
    for (bits, sm) in smoothings.iter_mut().enumerate() {
        let s = State::new(bits as u32, n);
        let c = sm.count();
        let w = s.weight() as i32;
        let mut groups: Vec<Vec<EnhancedState>> = vec![Vec::new(); c + 1];
        for mask in 0u64..1 << c {
            groups[mask.count_ones() as usize].push(EnhancedState::new(s, c, mask));
        }
        sm.offsets = Vec::with_capacity(c + 1);
        for (k, gens) in groups.into_iter().enumerate() {
            let bd = (w + shift_i, c as i32 - 2 * k as i32 + w + shift_j);
            let block = basis.entry(bd).or_default();
            sm.offsets.push(block.len() as u32);
            block.extend(gens);
        }
    }

    let mut kc = KhovanovComplex {
        diagram: d.clone(),
        counts,
        smoothings,
        complex: Arc::new(BigradedComplex::default()),
    };

    let diff: Vec<(Bidegree, BitMatrix)> = basis
        .par_iter()
        .filter_map(|(&(i, j), gens)| {
            let rows = basis.get(&(i + 1, j))?.len();
            let mut m = BitMatrix::zeros(rows, gens.len());
            for (col, g) in gens.iter().enumerate() {
                for c in (0..n).filter(|&c| !g.state.contains(c)) {
                    for img in kc.saddle(g, c) {
                        let (bd, row) = kc.index_of(&img);
                        debug_assert_eq!(bd, (i + 1, j));
                        m.flip(row, col);
                    }
                }
            }
            Some(((i, j), m))
        })
        .collect();

    kc.complex = Arc::new(BigradedComplex::from_parts(basis, diff.into_iter().collect())?);
    Ok(kc)
}

fn check_genus1_pair(src: &KhovanovComplex, tgt: &KhovanovComplex, b: usize) -> Result<()> {
    let (x, y) = (src.diagram.crossings(), tgt.diagram.crossings());
    let ok = x.len() == y.len()
        && b < x.len()
        && x[b].kind == CrossingKind::Negative
        && y[b].kind == CrossingKind::Positive
        && x[b].edges == [y[b].edges[3], y[b].edges[0], y[b].edges[1], y[b].edges[2]]
        && (0..x.len()).all(|k| k == b || x[k] == y[k]);
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("crossing {b} does not relate the two resolutions")))
    }
}

/// Matrix blocks of `Φ̂: C(D₋) → C(D₊)` at crossing `b`, where `D₋` and
/// `D₊` are the negative and positive resolutions of one double point.
///
/// A state with `b` 1-smoothed in `D₋` has the same circles as the state
/// with `b` 0-smoothed in `D₊`; the labels `p, q` of the two arcs at `b`
/// are replaced by `Δ(pq)` when the arcs lie on distinct circles, and the
/// generator is killed otherwise (`μΔ = 0` over F₂). States with `b`
/// 0-smoothed in `D₋` map to zero.
pub fn genus1_blocks(src: &KhovanovComplex, tgt: &KhovanovComplex, b: usize) -> Result<Blocks> {
    check_genus1_pair(src, tgt, b)?;
    let source = src.complex.clone();
    let blocks: Vec<(Bidegree, BitMatrix)> = source
        .support()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|bd| {
            let rows = tgt.complex.dim(bd);
            if rows == 0 {
                return None;
            }
            let gens = source.basis(bd);
            let mut m = BitMatrix::zeros(rows, gens.len());
            for (col, g) in gens.iter().enumerate().filter(|(_, g)| g.state.contains(b)) {
                let t = g.state.without(b);
                let sm = tgt.smoothing(t);
                let [p, q] = sm.arcs[b].map(usize::from);
                let rest = g.labels & !(1 << p) & !(1 << q);
                let images: Vec<u64> = if p == q {
                    frobenius::genus1_local_same_circle(AlgElem::basis(g.label(p)))
                        .terms()
                        .map(|l| rest | if l == Label::X { 1 << p } else { 0 })
                        .collect()
                } else {
                    frobenius::genus1_local(AlgElem::basis(g.label(p)), AlgElem::basis(g.label(q)))
                        .terms()
                        .map(|(l, r)| {
                            rest | if l == Label::X { 1 << p } else { 0 } | if r == Label::X { 1 << q } else { 0 }
                        })
                        .collect()
                };
                for mask in images {
                    let img = EnhancedState::new(t, sm.count(), mask);
                    let (tbd, row) = tgt.index_of(&img);
                    debug_assert_eq!(tbd, bd, "genus-one map must preserve bidegree");
                    m.flip(row, col);
                }
            }
            Some((bd, m))
        })
        .collect();
    Ok(blocks.into_iter().collect())
}

fn singular_index(d: &SingularDiagram, b: usize) -> Result<()> {
    match d.crossings().get(b) {
        Some(x) if x.is_singular() => Ok(()),
        _ => Err(Error::Domain(format!("crossing {b} is not a double point"))),
    }
}

/// `Φ̂_b: C(D_A) → C(D_{A∪{b}})`; `positive` (= A) and `b` are crossing
/// indices of double points, and every double point must lie in `A ∪ {b}`
/// or be resolved negatively.
pub fn genus1_map(
    d: &SingularDiagram,
    positive: &[usize],
    b: usize,
) -> Result<GradedChainMap<EnhancedState, EnhancedState>> {
    singular_index(d, b)?;
    if positive.contains(&b) {
        return Err(Error::Domain(format!("double point {b} is already in A")));
    }
    let lower = build_complex(&d.resolve_double_points(positive)?)?;
    let mut upper_set = positive.to_vec();
    upper_set.push(b);
    let upper = build_complex(&d.resolve_double_points(&upper_set)?)?;
    let blocks = genus1_blocks(&lower, &upper, b)?;
    GradedChainMap::new(lower.complex.clone(), upper.complex.clone(), blocks)
}

/// Outcome of recomputing the three-saddle composites around a double
/// point with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorizationReport {
    /// Largest |entry| of `Φ∘δ₋` over the integers.
    pub phi_after_delta_minus_max: i64,
    /// Largest |entry| of `δ₊∘Φ` over the integers.
    pub delta_plus_after_phi_max: i64,
    /// Whether every entry of both composites is even.
    pub all_even: bool,
}

impl FactorizationReport {
    /// Both composites vanish over F₂.
    pub fn vanishes_mod_two(&self) -> bool {
        self.all_even
    }
}

/// Builds `δ₋` (saddle into the oriented smoothing at `b`), `Φ` (the
/// genus-one cobordism on the oriented smoothing, i.e. two saddles) and
/// `δ₊` (saddle out of it) on `C̄(D_A)` with `b` negative, and evaluates
/// `Φδ₋` and `δ₊Φ` on every generator with integer coefficients.
pub fn genus1_factorization(d: &SingularDiagram, positive: &[usize], b: usize) -> Result<FactorizationReport> {
    singular_index(d, b)?;
    if positive.contains(&b) {
        return Err(Error::Domain(format!("double point {b} is already in A")));
    }
    let kc = build_complex(&d.resolve_double_points(positive)?)?;

    let apply = |gens: &HashMap<EnhancedState, i64>| -> HashMap<EnhancedState, i64> {
        let mut out = HashMap::new();
        for (g, &coef) in gens {
            for img in kc.saddle(g, b) {
                *out.entry(img).or_insert(0) += coef;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    };

    let mut report = FactorizationReport {
        all_even: true,
        ..Default::default()
    };
    for bd in kc.complex.support() {
        for g in kc.complex.basis(bd) {
            let start = HashMap::from([(*g, 1i64)]);
            // H-generators: Φ∘δ₋ is three saddles starting with δ₋.
            // V-generators: δ₊∘Φ is three saddles starting with δ₊.
            let image = apply(&apply(&apply(&start)));
            let max = image.values().map(|c| c.abs()).max().unwrap_or(0);
            if image.values().any(|c| c % 2 != 0) {
                report.all_even = false;
            }
            if g.state.contains(b) {
                report.delta_plus_after_phi_max = report.delta_plus_after_phi_max.max(max);
            } else {
                report.phi_after_delta_minus_max = report.phi_after_delta_minus_max.max(max);
            }
        }
    }
    Ok(report)
}

/// Whether `Φδ₋ = 0` and `δ₊Φ = 0` over F₂ at double point `b` of `D_A`.
pub fn verify_genus1_factorization(d: &SingularDiagram, positive: &[usize], b: usize) -> Result<bool> {
    Ok(genus1_factorization(d, positive, b)?.vanishes_mod_two())
}

/// The complex of a singular diagram, with the cube it was assembled from.
#[derive(Clone, Debug)]
pub struct SingularComplex {
    diagram: SingularDiagram,
    double_points: Vec<usize>,
    resolutions: Vec<Arc<KhovanovComplex>>,
    cube: CubeOfComplexes<EnhancedState>,
    complex: Arc<BigradedComplex<CubeTag<EnhancedState>>>,
}

impl SingularComplex {
    pub fn diagram(&self) -> &SingularDiagram {
        &self.diagram
    }

    /// Crossing indices of the double points; cube direction `k` is
    /// `double_points()[k]`.
    pub fn double_points(&self) -> &[usize] {
        &self.double_points
    }

    /// `C(D_A)` for the bitmask `A` over cube directions.
    pub fn resolution(&self, a: u32) -> &Arc<KhovanovComplex> {
        &self.resolutions[a as usize]
    }

    pub fn cube(&self) -> &CubeOfComplexes<EnhancedState> {
        &self.cube
    }

    pub fn complex(&self) -> &Arc<BigradedComplex<CubeTag<EnhancedState>>> {
        &self.complex
    }
}

/// `C(D; F₂) = MCone({C(D_A)}_A, {Φ̂_b}_b)`, with double points enumerated
/// in crossing order.
pub fn build_singular_complex(d: &SingularDiagram) -> Result<SingularComplex> {
    let double_points = d.double_points();
    let r = double_points.len();
    if d.crossing_count() > MAX_CROSSINGS || r > 16 {
        return Err(Error::TooLarge(format!("{} crossings, {r} double points", d.crossing_count())));
    }
    let resolutions: Vec<Arc<KhovanovComplex>> = (0u32..1 << r)
        .into_par_iter()
        .map(|a| {
            let positive: Vec<usize> = (0..r).filter(|&k| a >> k & 1 == 1).map(|k| double_points[k]).collect();
            build_complex(&d.resolve_double_points(&positive)?).map(Arc::new)
        })
        .collect::<Result<_>>()?;

    let edge_keys: Vec<(u32, usize)> = (0u32..1 << r)
        .flat_map(|a| (0..r).filter(move |&s| a >> s & 1 == 0).map(move |s| (a, s)))
        .collect();
    let edges: BTreeMap<(u32, usize), Blocks> = edge_keys
        .into_par_iter()
        .map(|(a, s)| {
            let blocks = genus1_blocks(&resolutions[a as usize], &resolutions[(a | 1 << s) as usize], double_points[s])?;
            Ok(((a, s), blocks))
        })
        .collect::<Result<_>>()?;

    let cube = CubeOfComplexes::new(resolutions.iter().map(|k| k.complex.clone()).collect(), edges)?;
    let complex = Arc::new(mcone(&cube)?);
    Ok(SingularComplex {
        diagram: d.clone(),
        double_points,
        resolutions,
        cube,
        complex,
    })
}

/// `Φ̂: C(D₋; F₂) → C(D₊; F₂)` at double point `b` of a singular diagram,
/// where `D±` may still carry other double points.
#[derive(Clone, Debug)]
pub struct CrossingChange {
    pub minus: SingularComplex,
    pub plus: SingularComplex,
    pub map: GradedChainMap<CubeTag<EnhancedState>, CubeTag<EnhancedState>>,
}

pub fn crossing_change(d: &SingularDiagram, b: usize) -> Result<CrossingChange> {
    singular_index(d, b)?;
    let minus = build_singular_complex(&d.resolve_one(b, false)?)?;
    let plus = build_singular_complex(&d.resolve_one(b, true)?)?;
    let vertex_maps: Vec<Blocks> = (0..minus.resolutions.len())
        .into_par_iter()
        .map(|a| genus1_blocks(&minus.resolutions[a], &plus.resolutions[a], b))
        .collect::<Result<_>>()?;
    let map = mcone_map(
        &minus.cube,
        &plus.cube,
        &vertex_maps,
        minus.complex.clone(),
        plus.complex.clone(),
    )?;
    Ok(CrossingChange { minus, plus, map })
}
