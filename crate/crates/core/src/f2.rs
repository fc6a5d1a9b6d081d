//! Bit-packed vectors and matrices over the two-element field.
//!
//! Matrices act on column vectors: an `m × n` matrix maps `F₂ⁿ → F₂ᵐ`, and
//! is stored as `m` packed rows of `n` bits. Gaussian elimination always
//! pivots on the lowest available column and, within it, the lowest row, so
//! every derived basis is reproducible.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    /// Lowest set index `≥ start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut w = start / WORD;
        let mut word = self.words[w] & (!0u64 << (start % WORD));
        loop {
            if word != 0 {
                let i = w * WORD + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w >= self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + t)
            })
        })
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Concatenation `self ⊕ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut v = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Bits `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        let mut v = BitVector::zeros(len);
        for i in self.iter_ones() {
            if i >= start && i < start + len {
                v.set(i - start, true);
            }
        }
        v
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from packed rows, all of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for r in col.iter_ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BitVector::count_ones).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self · v`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(rhs.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&rhs.data[k]);
                }
                acc
            })
            .collect();
        BitMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &BitMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            a.xor_assign(b);
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn paste(&mut self, row: usize, col: usize, block: &BitMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for (r, src) in block.data.iter().enumerate() {
            let dst = &mut self.data[row + r];
            for c in src.iter_ones() {
                dst.flip(col + c);
            }
        }
    }

    /// Sub-block `[row, row + rows) × [col, col + cols)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> BitMatrix {
        assert!(row + rows <= self.rows && col + cols <= self.cols);
        let data = self.data[row..row + rows]
            .iter()
            .map(|r| r.slice(col, cols))
            .collect();
        BitMatrix { rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        // Eliminating the shorter side keeps the working set small.
        if self.rows <= self.cols {
            Echelon::from_vectors(self.cols, self.data.iter().cloned()).rank()
        } else {
            Echelon::from_vectors(self.rows, self.transpose().data).rank()
        }
    }

    /// Basis of the null space `{v : self · v = 0}`, one vector per free
    /// column of the reduced row echelon form, in ascending free-column order.
    pub fn kernel(&self) -> Vec<BitVector> {
        let rref = Echelon::from_vectors(self.cols, self.data.iter().cloned()).into_reduced();
        let pivots: Vec<usize> = rref.rows.iter().map(|r| r.pivot).collect();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for row in &rref.rows {
                    if row.vector.get(free) {
                        v.set(row.pivot, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, in reduced echelon form.
    pub fn image(&self) -> Vec<BitVector> {
        Echelon::from_vectors(self.rows, self.transpose().data)
            .into_reduced()
            .rows
            .into_iter()
            .map(|r| r.vector)
            .collect()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut ech = TrackedEchelon::new(n, n);
        for (r, row) in self.data.iter().enumerate() {
            if !ech.insert(row.clone(), BitVector::unit(n, r)) {
                return None;
            }
        }
        // Row i of T expresses e_i as a combination of the rows of self,
        // so T · self = I.
        let mut inv = BitMatrix::zeros(n, n);
        for i in 0..n {
            let (rest, tag) = ech.reduce(BitVector::unit(n, i));
            debug_assert!(rest.is_zero());
            inv.data[i] = tag;
        }
        Some(inv)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    vector: BitVector,
}

/// Row echelon form built incrementally; rows are kept sorted by pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<EchelonRow>,
    // pivot column -> index into `rows`
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivot_of: vec![None; len],
        }
    }

    pub fn from_vectors(len: usize, vectors: impl IntoIterator<Item = BitVector>) -> Self {
        let mut e = Self::new(len);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        let mut start = 0;
        while let Some(p) = v.first_one_from(start) {
            match self.pivot_of[p] {
                Some(k) => v.xor_assign(&self.rows[k].vector),
                None => start = p + 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v;
        let mut start = 0;
        while let Some(p) = v.first_one_from(start) {
            match self.pivot_of[p] {
                Some(k) => v.xor_assign(&self.rows[k].vector),
                None => {
                    // A fresh pivot: everything below p was already cleared.
                    self.pivot_of[p] = Some(self.rows.len());
                    self.rows.push(EchelonRow { pivot: p, vector: v });
                    return true;
                }
            }
            start = p + 1;
        }
        false
    }

    /// Fully reduced form, rows sorted by ascending pivot.
    pub fn into_reduced(mut self) -> Echelon {
        self.rows.sort_by_key(|r| r.pivot);
        for i in (0..self.rows.len()).rev() {
            let (head, tail) = self.rows.split_at_mut(i + 1);
            let row = &mut head[i];
            for lower in tail.iter() {
                if row.vector.get(lower.pivot) {
                    row.vector.xor_assign(&lower.vector);
                }
            }
        }
        let mut pivot_of = vec![None; self.len];
        for (k, r) in self.rows.iter().enumerate() {
            pivot_of[r.pivot] = Some(k);
        }
        self.pivot_of = pivot_of;
        self
    }

    pub fn vectors(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter().map(|r| &r.vector)
    }
}

/// Echelon form that remembers, for every row, which inserted generators
/// it is a combination of.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    len: usize,
    tags: usize,
    rows: Vec<(usize, BitVector, BitVector)>,
    pivot_of: Vec<Option<usize>>,
}

impl TrackedEchelon {
    pub fn new(len: usize, tags: usize) -> Self {
        Self {
            len,
            tags,
            rows: Vec::new(),
            pivot_of: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn tag_len(&self) -> usize {
        self.tags
    }

    /// Inserts `v` carrying coefficient vector `tag`; returns whether the
    /// rank grew.
    pub fn insert(&mut self, v: BitVector, tag: BitVector) -> bool {
        assert_eq!(v.len(), self.len);
        assert_eq!(tag.len(), self.tags);
        let (v, tag) = self.reduce_with(v, tag);
        match v.first_one() {
            Some(p) => {
                self.pivot_of[p] = Some(self.rows.len());
                self.rows.push((p, v, tag));
                true
            }
            None => false,
        }
    }

    /// Reduces `v`, returning the remainder and the accumulated tag.
    pub fn reduce(&self, v: BitVector) -> (BitVector, BitVector) {
        self.reduce_with(v, BitVector::zeros(self.tags))
    }

    fn reduce_with(&self, mut v: BitVector, mut tag: BitVector) -> (BitVector, BitVector) {
        let mut start = 0;
        while let Some(p) = v.first_one_from(start) {
            match self.pivot_of[p] {
                Some(k) => {
                    let (_, row, row_tag) = &self.rows[k];
                    v.xor_assign(row);
                    tag.xor_assign(row_tag);
                }
                None => start = p + 1,
            }
        }
        (v, tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_rank(m: &BitMatrix) -> usize {
        // Size of the column space, by enumeration of all combinations.
        let n = m.cols();
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << n) {
            let mut acc = BitVector::zeros(m.rows());
            for c in 0..n {
                if mask >> c & 1 == 1 {
                    acc.xor_assign(&m.column(c));
                }
            }
            seen.insert(acc);
        }
        seen.len().trailing_zeros() as usize
    }

    fn matrix_strategy() -> impl Strategy<Value = BitMatrix> {
        (1usize..7, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let rows = bits.chunks(c).map(BitVector::from_bools).collect();
                BitMatrix::from_rows(c, rows)
            })
        })
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn ones_iteration_crosses_words() {
        let v = BitVector::from_ones(200, [0, 63, 64, 130, 199]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(v.first_one_from(65), Some(130));
        assert_eq!(v.first_one_from(200), None);
    }

    #[test]
    fn inverse_of_invertible() {
        let m = BitMatrix::from_rows(
            3,
            vec![
                BitVector::from_bools(&[true, true, false]),
                BitVector::from_bools(&[false, true, true]),
                BitVector::from_bools(&[false, false, true]),
            ],
        );
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert_eq!(inv.mul(&m), BitMatrix::identity(3));
        let singular = BitMatrix::from_rows(
            2,
            vec![BitVector::from_bools(&[true, true]), BitVector::from_bools(&[true, true])],
        );
        assert!(singular.inverse().is_none());
    }

    proptest! {
        #[test]
        fn rank_matches_enumeration(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), brute_rank(&m));
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }

        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let ker = m.kernel();
            prop_assert_eq!(ker.len() + m.rank(), m.cols());
            for v in &ker {
                prop_assert!(m.apply(v).is_zero());
            }
            prop_assert_eq!(m.image().len(), m.rank());
        }

        #[test]
        fn product_agrees_with_application(a in matrix_strategy(), bits in proptest::collection::vec(any::<bool>(), 0..64)) {
            let n = a.cols();
            let cols: Vec<BitVector> = (0..3).map(|k| {
                BitVector::from_bools(&(0..n).map(|i| bits.get(k * n + i).copied().unwrap_or(false)).collect::<Vec<_>>())
            }).collect();
            let b = BitMatrix::from_columns(n, &cols);
            let ab = a.mul(&b);
            for (k, col) in cols.iter().enumerate() {
                prop_assert_eq!(ab.column(k), a.apply(col));
            }
        }
    }
}
