//! Bigraded cochain complexes over F₂ and the cone constructions on them.
//!
//! A complex is stored block by block: a basis (list of opaque tags) for
//! every bidegree `(i, j)` with nonzero dimension, and the differential
//! `d: C^{i,j} → C^{i+1,j}` as a `dim(i+1,j) × dim(i,j)` matrix. All signs
//! are trivial in characteristic two.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::f2::BitMatrix;

/// `(i, j)`: homological and quantum degree.
pub type Bidegree = (i32, i32);

/// Per-bidegree matrices of a bidegree-(0,0) map.
pub type Blocks = BTreeMap<Bidegree, BitMatrix>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedComplex<T> {
    basis: BTreeMap<Bidegree, Vec<T>>,
    diff: Blocks,
}

impl<T> Default for BigradedComplex<T> {
    fn default() -> Self {
        Self {
            basis: BTreeMap::new(),
            diff: BTreeMap::new(),
        }
    }
}

impl<T> BigradedComplex<T> {
    /// Builds a complex, checking that every differential block has the
    /// shape `dim(i+1,j) × dim(i,j)`. Zero blocks may be omitted.
    pub fn from_parts(basis: BTreeMap<Bidegree, Vec<T>>, diff: Blocks) -> Result<Self> {
        let basis: BTreeMap<_, _> = basis.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        let dim = |bd: &Bidegree| basis.get(bd).map_or(0, Vec::len);
        let mut kept = BTreeMap::new();
        for (bd, m) in diff {
            let (i, j) = bd;
            let want = (dim(&(i + 1, j)), dim(&bd));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "differential at {bd:?} is {:?}, expected {want:?}",
                    m.shape()
                )));
            }
            if want.0 > 0 && want.1 > 0 {
                kept.insert(bd, m);
            }
        }
        Ok(Self { basis, diff: kept })
    }

    /// The complex with one generator per tag and zero differential.
    pub fn discrete(basis: BTreeMap<Bidegree, Vec<T>>) -> Self {
        Self::from_parts(basis, BTreeMap::new()).expect("no differential blocks")
    }

    pub fn dim(&self, bd: Bidegree) -> usize {
        self.basis.get(&bd).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Bidegrees of nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.basis.keys().copied()
    }

    /// Distinct quantum degrees of the support.
    pub fn q_degrees(&self) -> BTreeSet<i32> {
        self.basis.keys().map(|&(_, j)| j).collect()
    }

    /// Homological range `(min, max)` of the support in quantum degree `j`.
    pub fn i_range(&self, j: i32) -> Option<(i32, i32)> {
        let mut it = self.basis.keys().filter(|&&(_, jj)| jj == j).map(|&(i, _)| i);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), i| (lo.min(i), hi.max(i))))
    }

    pub fn basis(&self, bd: Bidegree) -> &[T] {
        self.basis.get(&bd).map_or(&[], Vec::as_slice)
    }

    /// Stored differential block at `bd`; `None` means zero.
    pub fn d(&self, bd: Bidegree) -> Option<&BitMatrix> {
        self.diff.get(&bd)
    }

    pub fn d_or_zero(&self, bd: Bidegree) -> BitMatrix {
        let (i, j) = bd;
        self.diff
            .get(&bd)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.dim((i + 1, j)), self.dim(bd)))
    }

    pub fn differentials(&self) -> &Blocks {
        &self.diff
    }

    pub fn map_tags<U>(&self, mut f: impl FnMut(Bidegree, &T) -> U) -> BigradedComplex<U> {
        BigradedComplex {
            basis: self
                .basis
                .iter()
                .map(|(&bd, tags)| (bd, tags.iter().map(|t| f(bd, t)).collect()))
                .collect(),
            diff: self.diff.clone(),
        }
    }

    /// `W[k]{l}`, with `W[k]{l}^{i,j} = W^{i−k, j−l}`.
    pub fn shift(&self, k: i32, l: i32) -> BigradedComplex<T>
    where
        T: Clone,
    {
        BigradedComplex {
            basis: self.basis.iter().map(|(&(i, j), b)| ((i + k, j + l), b.clone())).collect(),
            diff: self.diff.iter().map(|(&(i, j), m)| ((i + k, j + l), m.clone())).collect(),
        }
    }

    /// Same dimensions and differential matrices, ignoring tags.
    pub fn same_structure<U>(&self, other: &BigradedComplex<U>) -> bool {
        self.basis.len() == other.basis.len()
            && self.basis.iter().all(|(&bd, b)| other.dim(bd) == b.len())
            && self.diff == other.diff
    }

    /// Whether `d ∘ d = 0` everywhere.
    pub fn verify_complex(&self) -> bool {
        self.check_complex().is_ok()
    }

    pub fn check_complex(&self) -> Result<()> {
        for (&(i, j), d) in &self.diff {
            if let Some(next) = self.diff.get(&(i + 1, j)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::ComplexInvalid((i, j)));
                }
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn set_d(&mut self, bd: Bidegree, m: BitMatrix) {
        self.diff.insert(bd, m);
    }
}

/// ν(t; S) = #{s ∈ S | s > t} for a subset packed as a bitmask. Over F₂
/// the sign `(−1)^ν` is always `+1`.
pub fn nu(t: usize, subset: u32) -> u32 {
    subset.checked_shr(t as u32 + 1).unwrap_or(0).count_ones()
}

/// A bidegree-(0,0) map between complexes.
#[derive(Clone, Debug)]
pub struct GradedChainMap<S, T> {
    source: Arc<BigradedComplex<S>>,
    target: Arc<BigradedComplex<T>>,
    blocks: Blocks,
}

impl<S, T> GradedChainMap<S, T> {
    /// Checks that each block has shape `dim_target(bd) × dim_source(bd)`.
    pub fn new(source: Arc<BigradedComplex<S>>, target: Arc<BigradedComplex<T>>, blocks: Blocks) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (bd, m) in blocks {
            let want = (target.dim(bd), source.dim(bd));
            if m.shape() != want {
                return Err(Error::Shape(format!("map block at {bd:?} is {:?}, expected {want:?}", m.shape())));
            }
            if want.0 > 0 && want.1 > 0 {
                kept.insert(bd, m);
            }
        }
        Ok(Self { source, target, blocks: kept })
    }

    pub fn zero(source: Arc<BigradedComplex<S>>, target: Arc<BigradedComplex<T>>) -> Self {
        Self {
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &Arc<BigradedComplex<S>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BigradedComplex<T>> {
        &self.target
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn block(&self, bd: Bidegree) -> Option<&BitMatrix> {
        self.blocks.get(&bd)
    }

    pub fn block_or_zero(&self, bd: Bidegree) -> BitMatrix {
        self.blocks
            .get(&bd)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.target.dim(bd), self.source.dim(bd)))
    }

    /// Whether `d_target · f = f · d_source` at every bidegree.
    pub fn verify_chain_map(&self) -> bool {
        self.check_chain_map().is_ok()
    }

    pub fn check_chain_map(&self) -> Result<()> {
        let bidegrees: BTreeSet<Bidegree> = self.source.support().chain(self.target.support()).collect();
        for (i, j) in bidegrees {
            let next = (i + 1, j);
            if self.source.dim((i, j)) == 0 || self.target.dim(next) == 0 {
                continue;
            }
            let lhs = match (self.target.d((i, j)), self.blocks.get(&(i, j))) {
                (Some(d), Some(f)) => d.mul(f),
                _ => BitMatrix::zeros(self.target.dim(next), self.source.dim((i, j))),
            };
            let rhs = match (self.blocks.get(&next), self.source.d((i, j))) {
                (Some(f), Some(d)) => f.mul(d),
                _ => BitMatrix::zeros(self.target.dim(next), self.source.dim((i, j))),
            };
            if lhs != rhs {
                return Err(Error::NotAChainMap((i, j)));
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then<U>(&self, other: &GradedChainMap<T, U>) -> GradedChainMap<S, U> {
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(bd, f)| other.blocks.get(bd).map(|g| (*bd, g.mul(f))))
            .collect();
        GradedChainMap::new(self.source.clone(), other.target.clone(), blocks).expect("composable shapes")
    }
}

impl<T> GradedChainMap<T, T> {
    pub fn identity(complex: Arc<BigradedComplex<T>>) -> Self {
        let blocks = complex.support().map(|bd| (bd, BitMatrix::identity(complex.dim(bd)))).collect();
        Self {
            source: complex.clone(),
            target: complex,
            blocks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConeTag<S, T> {
    Target(T),
    Source(S),
}

/// `Cone(f)` for `f: X → Y`, with `Cone(f)^{i,j} = Y^{i,j} ⊕ X^{i+1,j}`.
#[derive(Clone, Debug)]
pub struct MappingCone<S, T> {
    pub complex: Arc<BigradedComplex<ConeTag<S, T>>>,
    /// `i_Y: Y → Cone(f)`.
    pub inclusion: GradedChainMap<T, ConeTag<S, T>>,
    /// `p_X: Cone(f) → X[−1]`.
    pub projection: GradedChainMap<ConeTag<S, T>, S>,
}

pub fn cone<S: Clone, T: Clone>(f: &GradedChainMap<S, T>) -> MappingCone<S, T> {
    let x = f.source();
    let y = f.target();
    let bidegrees: BTreeSet<Bidegree> = y.support().chain(x.support().map(|(i, j)| (i - 1, j))).collect();

    let mut basis = BTreeMap::new();
    for &(i, j) in &bidegrees {
        let mut tags: Vec<ConeTag<S, T>> = y.basis((i, j)).iter().cloned().map(ConeTag::Target).collect();
        tags.extend(x.basis((i + 1, j)).iter().cloned().map(ConeTag::Source));
        basis.insert((i, j), tags);
    }

    // [[d_Y, f], [0, d_X]] from Y^i ⊕ X^{i+1} to Y^{i+1} ⊕ X^{i+2}
    let mut diff = BTreeMap::new();
    for &(i, j) in &bidegrees {
        let (ny, nx) = (y.dim((i, j)), x.dim((i + 1, j)));
        let (my, mx) = (y.dim((i + 1, j)), x.dim((i + 2, j)));
        if ny + nx == 0 || my + mx == 0 {
            continue;
        }
        let mut m = BitMatrix::zeros(my + mx, ny + nx);
        if let Some(d) = y.d((i, j)) {
            m.paste(0, 0, d);
        }
        if let Some(fb) = f.block((i + 1, j)) {
            m.paste(0, ny, fb);
        }
        if let Some(d) = x.d((i + 1, j)) {
            m.paste(my, ny, d);
        }
        diff.insert((i, j), m);
    }
    let complex = Arc::new(BigradedComplex::from_parts(basis, diff).expect("cone blocks are well shaped"));

    let inclusion_blocks = y
        .support()
        .map(|bd| {
            let mut m = BitMatrix::zeros(complex.dim(bd), y.dim(bd));
            m.paste(0, 0, &BitMatrix::identity(y.dim(bd)));
            (bd, m)
        })
        .collect();
    let inclusion = GradedChainMap::new(y.clone(), complex.clone(), inclusion_blocks).expect("inclusion shapes");

    let shifted = Arc::new(x.shift(-1, 0));
    let projection_blocks = shifted
        .support()
        .map(|bd| {
            let ny = y.dim(bd);
            let mut m = BitMatrix::zeros(shifted.dim(bd), complex.dim(bd));
            m.paste(0, ny, &BitMatrix::identity(shifted.dim(bd)));
            (bd, m)
        })
        .collect();
    let projection = GradedChainMap::new(complex.clone(), shifted, projection_blocks).expect("projection shapes");

    MappingCone {
        complex,
        inclusion,
        projection,
    }
}

/// An r-cube of complexes: a complex at every subset `A ⊆ {0..r}` (packed
/// as a bitmask) and a map along every edge `A → A ∪ {s}`.
#[derive(Clone, Debug)]
pub struct CubeOfComplexes<T> {
    dim: usize,
    vertices: Vec<Arc<BigradedComplex<T>>>,
    edges: BTreeMap<(u32, usize), Blocks>,
}

impl<T> CubeOfComplexes<T> {
    /// `vertices[A]` for every bitmask `A < 2^r`; `edges[(A, s)]` for every
    /// `s ∉ A` (missing edges are zero maps).
    pub fn new(vertices: Vec<Arc<BigradedComplex<T>>>, edges: BTreeMap<(u32, usize), Blocks>) -> Result<Self> {
        let n = vertices.len();
        if !n.is_power_of_two() {
            return Err(Error::Shape(format!("{n} vertices do not form a cube")));
        }
        let dim = n.trailing_zeros() as usize;
        for (&(a, s), blocks) in &edges {
            if s >= dim || a as usize >= n || a >> s & 1 == 1 {
                return Err(Error::Shape(format!("edge ({a:#b}, {s}) is not an edge of the {dim}-cube")));
            }
            let (src, tgt) = (&vertices[a as usize], &vertices[(a | 1 << s) as usize]);
            for (&bd, m) in blocks {
                if m.shape() != (tgt.dim(bd), src.dim(bd)) {
                    return Err(Error::Shape(format!("edge ({a:#b}, {s}) block at {bd:?} is misshapen")));
                }
            }
        }
        Ok(Self { dim, vertices, edges })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex(&self, a: u32) -> &Arc<BigradedComplex<T>> {
        &self.vertices[a as usize]
    }

    pub fn vertices(&self) -> &[Arc<BigradedComplex<T>>] {
        &self.vertices
    }

    pub fn edge(&self, a: u32, s: usize) -> GradedChainMap<T, T> {
        let blocks = self.edges.get(&(a, s)).cloned().unwrap_or_default();
        GradedChainMap::new(self.vertex(a).clone(), self.vertex(a | 1 << s).clone(), blocks).expect("checked in new")
    }

    fn edge_block(&self, a: u32, s: usize, bd: Bidegree) -> Option<&BitMatrix> {
        self.edges.get(&(a, s)).and_then(|b| b.get(&bd))
    }

    /// Checks that every square face commutes.
    pub fn check_faces(&self) -> Result<()> {
        for a in 0..self.vertices.len() as u32 {
            for s in 0..self.dim {
                for t in s + 1..self.dim {
                    if a >> s & 1 == 1 || a >> t & 1 == 1 {
                        continue;
                    }
                    let via_s = self.edge(a, s).then(&self.edge(a | 1 << s, t));
                    let via_t = self.edge(a, t).then(&self.edge(a | 1 << t, s));
                    let bds: BTreeSet<_> = self.vertex(a).support().collect();
                    for bd in bds {
                        if via_s.block_or_zero(bd) != via_t.block_or_zero(bd) {
                            return Err(Error::FaceCommutation { vertex: a, first: s, second: t });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether every edge map is a chain map.
    pub fn check_edges(&self) -> Result<()> {
        for a in 0..self.vertices.len() as u32 {
            for s in (0..self.dim).filter(|&s| a >> s & 1 == 0) {
                self.edge(a, s).check_chain_map()?;
            }
        }
        Ok(())
    }
}

/// Tag of an `MCone` generator: the cube vertex it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeTag<T> {
    pub vertex: u32,
    pub tag: T,
}

/// One summand `X_S[−|⟨r⟩∖S|]` inside an `MCone` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Summand {
    vertex: u32,
    offset: usize,
    len: usize,
}

/// Summands of each `MCone` block; vertices in descending bitmask order.
fn mcone_layout<T>(cube: &CubeOfComplexes<T>) -> BTreeMap<Bidegree, Vec<Summand>> {
    let r = cube.dim as i32;
    let mut layout: BTreeMap<Bidegree, Vec<Summand>> = BTreeMap::new();
    for a in (0..cube.vertices.len() as u32).rev() {
        let shift = r - a.count_ones() as i32;
        for (i, j) in cube.vertex(a).support() {
            let bd = (i - shift, j);
            let len = cube.vertex(a).dim((i, j));
            let entry = layout.entry(bd).or_default();
            let offset = entry.last().map_or(0, |s| s.offset + s.len);
            entry.push(Summand { vertex: a, offset, len });
        }
    }
    layout
}

/// The multiple mapping cone `MCone(X) = ⊕_S X_S[−|⟨r⟩∖S|]`, with the
/// internal differentials on the diagonal and the edge maps below it.
/// Within a block the summands are ordered by descending vertex bitmask,
/// so for `r = 1` the result is literally `Cone(edge)`.
pub fn mcone<T: Clone + Send + Sync>(cube: &CubeOfComplexes<T>) -> Result<BigradedComplex<CubeTag<T>>> {
    cube.check_faces()?;
    let r = cube.dim as i32;
    let layout = mcone_layout(cube);

    let mut basis = BTreeMap::new();
    for (&bd, summands) in &layout {
        let mut tags = Vec::new();
        for s in summands {
            let shift = r - s.vertex.count_ones() as i32;
            let inner = (bd.0 + shift, bd.1);
            tags.extend(cube.vertex(s.vertex).basis(inner).iter().map(|t| CubeTag {
                vertex: s.vertex,
                tag: t.clone(),
            }));
        }
        basis.insert(bd, tags);
    }

    let keys: Vec<Bidegree> = layout.keys().copied().collect();
    let diff: Vec<(Bidegree, BitMatrix)> = keys
        .par_iter()
        .filter_map(|&(k, j)| {
            let src = &layout[&(k, j)];
            let tgt = layout.get(&(k + 1, j))?;
            let rows = tgt.last().map_or(0, |s| s.offset + s.len);
            let cols = src.last().map_or(0, |s| s.offset + s.len);
            let mut m = BitMatrix::zeros(rows, cols);
            for s in src {
                let inner = (k + r - s.vertex.count_ones() as i32, j);
                if let Some(t) = tgt.iter().find(|t| t.vertex == s.vertex) {
                    if let Some(d) = cube.vertex(s.vertex).d(inner) {
                        m.paste(t.offset, s.offset, d);
                    }
                }
                for dir in (0..cube.dim).filter(|&d| s.vertex >> d & 1 == 0) {
                    let up = s.vertex | 1 << dir;
                    // (−1)^ν(dir; S) is +1 in characteristic two.
                    if let (Some(t), Some(e)) = (tgt.iter().find(|t| t.vertex == up), cube.edge_block(s.vertex, dir, inner)) {
                        m.paste(t.offset, s.offset, e);
                    }
                }
            }
            Some(((k, j), m))
        })
        .collect();
    BigradedComplex::from_parts(basis, diff.into_iter().collect())
}

/// The map `MCone(X) → MCone(Y)` induced by a map of cubes given vertex by
/// vertex. `source` and `target` must be the mcones of the two cubes.
pub fn mcone_map<S, T>(
    source_cube: &CubeOfComplexes<S>,
    target_cube: &CubeOfComplexes<T>,
    vertex_maps: &[Blocks],
    source: Arc<BigradedComplex<CubeTag<S>>>,
    target: Arc<BigradedComplex<CubeTag<T>>>,
) -> Result<GradedChainMap<CubeTag<S>, CubeTag<T>>> {
    if source_cube.dim != target_cube.dim || vertex_maps.len() != source_cube.vertices.len() {
        return Err(Error::Shape("cube maps need cubes of equal dimension".into()));
    }
    let r = source_cube.dim as i32;
    let src_layout = mcone_layout(source_cube);
    let tgt_layout = mcone_layout(target_cube);
    let mut blocks = BTreeMap::new();
    for (&bd, src) in &src_layout {
        let Some(tgt) = tgt_layout.get(&bd) else { continue };
        let mut m = BitMatrix::zeros(target.dim(bd), source.dim(bd));
        for s in src {
            let inner = (bd.0 + r - s.vertex.count_ones() as i32, bd.1);
            if let (Some(t), Some(f)) = (
                tgt.iter().find(|t| t.vertex == s.vertex),
                vertex_maps[s.vertex as usize].get(&inner),
            ) {
                m.paste(t.offset, s.offset, f);
            }
        }
        blocks.insert(bd, m);
    }
    GradedChainMap::new(source, target, blocks)
}
