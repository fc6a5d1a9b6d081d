//! Oriented singular link diagrams in planar-diagram (PD) form.
//!
//! A crossing is a 4-tuple `(a, b, c, d)` of edge labels listed
//! counterclockwise, starting from a distinguished incoming strand:
//!
//! | kind       | incoming | outgoing | strands          |
//! |------------|----------|----------|------------------|
//! | `X+`       | a, d     | c, b     | under a→c, over d→b |
//! | `X-`       | a, b     | c, d     | under a→c, over b→d |
//! | `Xs`       | a, d     | b, c     | double point     |
//!
//! The 0-smoothing of any crossing joins slots `(a,b)` and `(c,d)`; the
//! 1-smoothing joins `(a,d)` and `(b,c)`. With these conventions a double
//! point `Xs(a,b,c,d)` resolves to `X+(a,b,c,d)` or `X-(d,a,b,c)`, and the
//! oriented smoothing is the 0-smoothing of the positive resolution and the
//! 1-smoothing of the negative one.

mod braid;
mod pd;

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;

pub use braid::{BraidGenerator, BraidWord};

use crate::error::{Error, Result};

/// Hard limit on crossings: states are packed into a `u32`.
pub const MAX_CROSSINGS: usize = 30;
/// Hard limit on circles in any smoothing: labelings are packed into a `u64`.
pub const MAX_CIRCLES: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingKind {
    Positive,
    Negative,
    Singular,
}

impl CrossingKind {
    pub fn marker(self) -> &'static str {
        match self {
            CrossingKind::Positive => "X+",
            CrossingKind::Negative => "X-",
            CrossingKind::Singular => "Xs",
        }
    }

    fn incoming(self) -> [usize; 2] {
        match self {
            CrossingKind::Positive | CrossingKind::Singular => [0, 3],
            CrossingKind::Negative => [0, 1],
        }
    }

    fn outgoing(self) -> [usize; 2] {
        match self {
            CrossingKind::Positive => [2, 1],
            CrossingKind::Negative => [2, 3],
            CrossingKind::Singular => [1, 2],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub edges: [u32; 4],
}

/// Slot pairs joined by the 0-smoothing.
pub const ZERO_SMOOTHING: [[usize; 2]; 2] = [[0, 1], [2, 3]];
/// Slot pairs joined by the 1-smoothing.
pub const ONE_SMOOTHING: [[usize; 2]; 2] = [[0, 3], [1, 2]];

impl Crossing {
    pub fn new(kind: CrossingKind, edges: [u32; 4]) -> Self {
        Self { kind, edges }
    }

    pub fn positive(edges: [u32; 4]) -> Self {
        Self::new(CrossingKind::Positive, edges)
    }

    pub fn negative(edges: [u32; 4]) -> Self {
        Self::new(CrossingKind::Negative, edges)
    }

    pub fn singular(edges: [u32; 4]) -> Self {
        Self::new(CrossingKind::Singular, edges)
    }

    pub fn is_singular(&self) -> bool {
        self.kind == CrossingKind::Singular
    }

    /// Slot pairs joined by the given smoothing.
    pub fn smoothing(one: bool) -> [[usize; 2]; 2] {
        if one {
            ONE_SMOOTHING
        } else {
            ZERO_SMOOTHING
        }
    }

    /// Whether two cyclically adjacent slots carry the same edge, i.e. the
    /// crossing closes a one-crossing loop.
    pub fn is_kink(&self) -> bool {
        (0..4).any(|k| self.edges[k] == self.edges[(k + 1) % 4])
    }

    /// The resolution of a double point; ordinary crossings are returned
    /// unchanged.
    pub fn resolve(&self, positive: bool) -> Crossing {
        if !self.is_singular() {
            return *self;
        }
        let [a, b, c, d] = self.edges;
        if positive {
            Crossing::positive([a, b, c, d])
        } else {
            Crossing::negative([d, a, b, c])
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.edges;
        write!(f, "{}({a},{b},{c},{d})", self.kind.marker())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Counts {
    pub n_plus: usize,
    pub n_minus: usize,
    pub r: usize,
}

/// A subset of the crossings of a diagram, bit `k` standing for crossing `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: u32,
    len: u8,
}

impl State {
    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= MAX_CROSSINGS, "state length {len} exceeds {MAX_CROSSINGS}");
        assert!(len == 32 || bits >> len == 0, "state bits outside length");
        Self { bits, len: len as u8 }
    }

    pub fn empty(len: usize) -> Self {
        Self::new(0, len)
    }

    /// All `2^len` states in ascending bit order.
    pub fn all(len: usize) -> impl Iterator<Item = State> {
        (0u32..(1u32 << len)).map(move |bits| State::new(bits, len))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// `|s|`.
    #[inline]
    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, c: usize) -> bool {
        self.bits >> c & 1 == 1
    }

    pub fn with(self, c: usize) -> State {
        State::new(self.bits | 1 << c, self.len())
    }

    pub fn without(self, c: usize) -> State {
        State::new(self.bits & !(1 << c), self.len())
    }

    pub fn complement(self) -> State {
        let mask = if self.len == 0 { 0 } else { u32::MAX >> (32 - self.len as u32) };
        State::new(!self.bits & mask, self.len())
    }
}

/// The circles of a fully smoothed diagram.
///
/// Circles are numbered by their smallest edge (in ascending edge-label
/// order); free loops come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDecomposition {
    /// Circle index of each edge, indexed like [`SingularDiagram::edges`].
    pub circle_of_edge: Vec<usize>,
    pub count: usize,
    pub free_loops: usize,
    /// Per crossing, the circles of the arc through slot `a` and of the arc
    /// through slot `c`.
    pub arcs: Vec<[usize; 2]>,
}

impl CircleDecomposition {
    /// The circles as blocks of edge labels; free loops are empty blocks.
    pub fn blocks(&self, diagram: &SingularDiagram) -> Vec<Vec<u32>> {
        let mut blocks = vec![Vec::new(); self.count];
        for (e, &c) in self.circle_of_edge.iter().enumerate() {
            blocks[c].push(diagram.edges[e]);
        }
        blocks
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularDiagram {
    crossings: Vec<Crossing>,
    // For each free loop, the number of crossings preceding its `O` token.
    loop_slots: Vec<usize>,
    edges: Vec<u32>,
    dense: Vec<[usize; 4]>,
}

impl SingularDiagram {
    /// Validates and builds a diagram; free loops are listed after the crossings.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let n = crossings.len();
        Self::with_loop_slots(crossings, vec![n; free_loops])
    }

    pub(crate) fn with_loop_slots(crossings: Vec<Crossing>, loop_slots: Vec<usize>) -> Result<Self> {
        // edge -> (incoming count, outgoing count)
        let mut seen: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (k, x) in crossings.iter().enumerate() {
            if x.edges.contains(&0) {
                return Err(Error::Validation(format!("crossing {k} ({x}): edge labels must be ≥ 1")));
            }
            for s in x.kind.incoming() {
                seen.entry(x.edges[s]).or_default().0 += 1;
            }
            for s in x.kind.outgoing() {
                seen.entry(x.edges[s]).or_default().1 += 1;
            }
        }
        for (&e, &(inc, out)) in &seen {
            if inc + out != 2 {
                return Err(Error::Validation(format!("edge {e} occurs {} times, expected 2", inc + out)));
            }
            if inc != 1 {
                return Err(Error::Validation(format!(
                    "edge {e} is inconsistently oriented: {inc} incoming and {out} outgoing slots"
                )));
            }
        }
        let edges: Vec<u32> = seen.keys().copied().collect();
        let dense = crossings
            .iter()
            .map(|x| x.edges.map(|e| edges.binary_search(&e).expect("edge indexed")))
            .collect();
        Ok(Self {
            crossings,
            loop_slots,
            edges,
            dense,
        })
    }

    pub fn unknot() -> Self {
        Self::new(Vec::new(), 1).expect("free loop is valid")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.loop_slots.len()
    }

    /// Distinct edge labels in ascending order.
    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    /// Dense edge indices (into [`Self::edges`]) of crossing `k`.
    pub fn dense_edges(&self, k: usize) -> [usize; 4] {
        self.dense[k]
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for x in &self.crossings {
            match x.kind {
                CrossingKind::Positive => c.n_plus += 1,
                CrossingKind::Negative => c.n_minus += 1,
                CrossingKind::Singular => c.r += 1,
            }
        }
        c
    }

    pub fn is_singular(&self) -> bool {
        self.crossings.iter().any(Crossing::is_singular)
    }

    /// Crossing indices of the double points, in diagram order.
    pub fn double_points(&self) -> Vec<usize> {
        (0..self.crossings.len()).filter(|&k| self.crossings[k].is_singular()).collect()
    }

    /// Whether double point `k` sits on a one-crossing loop (an isolated chord).
    pub fn is_fi_double_point(&self, k: usize) -> bool {
        self.crossings.get(k).is_some_and(|x| x.is_singular() && x.is_kink())
    }

    pub fn has_fi_double_point(&self) -> bool {
        (0..self.crossings.len()).any(|k| self.is_fi_double_point(k))
    }

    /// `D_A`: double points in `positive` become positive crossings, all
    /// other double points become negative ones. Crossing order and edge
    /// labels are preserved.
    pub fn resolve_double_points(&self, positive: &[usize]) -> Result<SingularDiagram> {
        for &k in positive {
            match self.crossings.get(k) {
                Some(x) if x.is_singular() => {}
                Some(x) => return Err(Error::Domain(format!("crossing {k} ({x}) is not a double point"))),
                None => return Err(Error::Domain(format!("crossing index {k} out of range"))),
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(k, x)| x.resolve(positive.contains(&k)))
            .collect();
        Ok(self.replace_crossings(crossings))
    }

    /// Resolves the single double point `k`, leaving the others singular.
    pub fn resolve_one(&self, k: usize, positive: bool) -> Result<SingularDiagram> {
        match self.crossings.get(k) {
            Some(x) if x.is_singular() => {
                let mut crossings = self.crossings.clone();
                crossings[k] = x.resolve(positive);
                Ok(self.replace_crossings(crossings))
            }
            _ => Err(Error::Domain(format!("crossing {k} is not a double point"))),
        }
    }

    /// Same diagram with its double points listed in the order given by
    /// `order` (a permutation of the double-point ranks). Ordinary crossings
    /// keep their positions; the double-point slots are refilled.
    pub fn permute_double_points(&self, order: &[usize]) -> Result<SingularDiagram> {
        let slots = self.double_points();
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..slots.len()).collect::<Vec<_>>() {
            return Err(Error::Domain(format!("{order:?} is not a permutation of the double points")));
        }
        let mut crossings = self.crossings.clone();
        for (slot, &src) in slots.iter().zip(order) {
            crossings[*slot] = self.crossings[slots[src]];
        }
        Ok(self.replace_crossings(crossings))
    }

    fn replace_crossings(&self, crossings: Vec<Crossing>) -> SingularDiagram {
        let dense = crossings
            .iter()
            .map(|x| x.edges.map(|e| self.edges.binary_search(&e).expect("edge indexed")))
            .collect();
        SingularDiagram {
            crossings,
            loop_slots: self.loop_slots.clone(),
            edges: self.edges.clone(),
            dense,
        }
    }

    /// Disjoint union; edges of `other` are relabeled above those of `self`.
    pub fn disjoint_union(&self, other: &SingularDiagram) -> SingularDiagram {
        let offset = self.edges.last().copied().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing::new(x.kind, x.edges.map(|e| e + offset))));
        let n = crossings.len();
        let loop_slots = vec![n; self.free_loops() + other.free_loops()];
        SingularDiagram::with_loop_slots(crossings, loop_slots).expect("union of valid diagrams is valid")
    }

    /// The 1-manifold obtained by smoothing every crossing according to `s`.
    pub fn smooth(&self, s: State) -> Result<CircleDecomposition> {
        if self.is_singular() {
            return Err(Error::Domain("cannot smooth a diagram with double points".into()));
        }
        if s.len() != self.crossings.len() {
            return Err(Error::Domain(format!(
                "state has {} bits but the diagram has {} crossings",
                s.len(),
                self.crossings.len()
            )));
        }
        Ok(self.smooth_unchecked(s))
    }

    pub(crate) fn smooth_unchecked(&self, s: State) -> CircleDecomposition {
        let m = self.edges.len();
        let mut uf = UnionFind::<usize>::new(m);
        for (k, slots) in self.dense.iter().enumerate() {
            for [p, q] in Crossing::smoothing(s.contains(k)) {
                uf.union(slots[p], slots[q]);
            }
        }
        let mut circle_of_root = vec![usize::MAX; m];
        let mut circle_of_edge = vec![0; m];
        let mut count = 0;
        for (e, c) in circle_of_edge.iter_mut().enumerate() {
            let root = uf.find(e);
            if circle_of_root[root] == usize::MAX {
                circle_of_root[root] = count;
                count += 1;
            }
            *c = circle_of_root[root];
        }
        let arcs = self
            .dense
            .iter()
            .map(|slots| [circle_of_edge[slots[0]], circle_of_edge[slots[2]]])
            .collect();
        CircleDecomposition {
            circle_of_edge,
            count: count + self.free_loops(),
            free_loops: self.free_loops(),
            arcs,
        }
    }

    /// Writes the PD text of the diagram, tokens in input order.
    pub fn to_pd(&self) -> String {
        let mut tokens = Vec::new();
        let mut loops = self.loop_slots.iter().peekable();
        for (k, x) in self.crossings.iter().enumerate() {
            while loops.next_if(|&&slot| slot <= k).is_some() {
                tokens.push("O".to_string());
            }
            tokens.push(x.to_string());
        }
        tokens.extend(loops.map(|_| "O".to_string()));
        tokens.join(" ")
    }
}

impl fmt::Display for SingularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl std::str::FromStr for SingularDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

/// Parses PD text: `X+(a,b,c,d)`, `X-(a,b,c,d)`, `Xs(a,b,c,d)`, `O`, with
/// `#` line comments.
pub fn parse_pd(text: &str) -> Result<SingularDiagram> {
    let tokens = pd::tokenize(text)?;
    let mut crossings = Vec::new();
    let mut loop_slots = Vec::new();
    for t in tokens {
        match t {
            pd::Token::Crossing(x) => crossings.push(x),
            pd::Token::FreeLoop => loop_slots.push(crossings.len()),
        }
    }
    SingularDiagram::with_loop_slots(crossings, loop_slots)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_POS: &str = "X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)";

    #[test]
    fn parses_positive_trefoil() {
        let d = parse_pd(TREFOIL_POS).unwrap();
        assert_eq!(d.counts(), Counts { n_plus: 3, n_minus: 0, r: 0 });
        assert_eq!(d.edges(), &[1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn classic_trefoil_labels_are_negative_crossings() {
        // Each edge occurs twice, but with X+ markers edge 1 would enter two
        // crossings; the labels describe the left-handed trefoil.
        let err = parse_pd("X+(1,4,2,5) X+(3,6,4,1) X+(5,2,6,3)").unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("oriented")), "{err}");
        let d = parse_pd("X-(1,4,2,5) X-(3,6,4,1) X-(5,2,6,3)").unwrap();
        assert_eq!(d.counts(), Counts { n_plus: 0, n_minus: 3, r: 0 });
    }

    #[test]
    fn free_loop_and_empty() {
        let d = parse_pd("O").unwrap();
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.counts(), Counts::default());
        let c = d.smooth(State::empty(0)).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(parse_pd("").unwrap().crossing_count(), 0);
    }

    #[test]
    fn arity_violation_is_syntax_error() {
        assert!(matches!(parse_pd("X+(1,2,3)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn edge_count_violation() {
        let err = parse_pd("X+(1,1,2,3)").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn fi_unknot_counts() {
        let d = parse_pd("Xs(1,1,2,2)").unwrap();
        assert_eq!(d.counts(), Counts { n_plus: 0, n_minus: 0, r: 1 });
        assert!(d.is_fi_double_point(0));
    }

    #[test]
    fn resolution_counts() {
        let d = parse_pd("Xs(1,1,2,2)").unwrap();
        let minus = d.resolve_double_points(&[]).unwrap();
        assert_eq!(minus.counts(), Counts { n_plus: 0, n_minus: 1, r: 0 });
        assert_eq!(minus.crossings()[0], Crossing::negative([2, 1, 1, 2]));
        let plus = d.resolve_double_points(&[0]).unwrap();
        assert_eq!(plus.counts(), Counts { n_plus: 1, n_minus: 0, r: 0 });

        let two = BraidWord::parse("t1 t1").unwrap().closure().unwrap();
        let mixed = two.resolve_double_points(&[0]).unwrap();
        assert_eq!(mixed.counts(), Counts { n_plus: 1, n_minus: 1, r: 0 });
        assert!(matches!(minus.resolve_double_points(&[0]), Err(Error::Domain(_))));
        assert!(matches!(d.resolve_double_points(&[3]), Err(Error::Domain(_))));
    }

    #[test]
    fn kink_smoothings_give_one_and_two_circles() {
        for pd in ["X+(1,1,2,2)", "X-(1,2,2,1)"] {
            let d = parse_pd(pd).unwrap();
            let mut counts: Vec<usize> = State::all(1).map(|s| d.smooth(s).unwrap().count).collect();
            counts.sort();
            assert_eq!(counts, vec![1, 2], "{pd}");
        }
        // positive kink: the oriented (0-)smoothing splits off the loop
        let d = parse_pd("X+(1,1,2,2)").unwrap();
        assert_eq!(d.smooth(State::empty(1)).unwrap().count, 2);
    }

    #[test]
    fn trefoil_all_zero_smoothing() {
        // Oriented smoothing of the positive trefoil: two Seifert circles.
        let d = parse_pd(TREFOIL_POS).unwrap();
        let c = d.smooth(State::empty(3)).unwrap();
        assert_eq!(c.count, 2);
        assert_eq!(c.blocks(&d), vec![vec![1, 3, 5], vec![2, 4, 6]]);
        assert_eq!(d.smooth(State::new(0b111, 3)).unwrap().count, 3);
    }

    #[test]
    fn smoothing_a_singular_diagram_is_an_error() {
        let d = parse_pd("Xs(1,1,2,2)").unwrap();
        assert!(matches!(d.smooth(State::empty(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn serialization_keeps_token_order() {
        let text = "O X+(1,1,2,2)  O\n# tail comment\n";
        let d = parse_pd(text).unwrap();
        assert_eq!(d.to_pd(), "O X+(1,1,2,2) O");
        assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
    }

    #[test]
    fn permuting_double_points() {
        let d = BraidWord::parse("t1 s2 t1 t2").unwrap().closure().unwrap();
        let p = d.permute_double_points(&[2, 0, 1]).unwrap();
        let dp = d.double_points();
        assert_eq!(p.crossings()[dp[0]], d.crossings()[dp[2]]);
        assert_eq!(p.crossings()[dp[1]], d.crossings()[dp[0]]);
        assert!(d.permute_double_points(&[0, 0, 1]).is_err());
    }
}
