//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words, bit `i` living in word `i / 64` at
//! position `i % 64`. Bits past the logical length are always zero, so word-wise
//! equality, hashing and popcounts need no masking.
//!
//! Every published operation is non-mutating: elimination runs on copies and
//! pivots are chosen by lowest index, so bases come out the same on every run.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: left operand has {left} columns, right operand has {right} rows")]
    DimensionMismatch { left: usize, right: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("basis vectors are linearly dependent (vector {index})")]
    DependentBasis { index: usize },
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The `index`-th standard basis vector of length `len`.
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

    /// Builds a vector of length `len` whose set bits are `ones`.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    /// Low `len` bits of `word`, bit 0 first. `len` must be at most 64.
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD_BITS);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD_BITS { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = word & mask;
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range for length {}",
            self.len
        );
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.len,
            "bit index {index} out of range for length {}",
            self.len
        );
        self.words[index / WORD_BITS] ^= 1u64 << (index % WORD_BITS);
    }

    /// Appends one bit at the end.
    pub fn push(&mut self, value: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    /// Concatenation `self ∥ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place `self += other`.
    ///
    /// # Panics
    ///
    /// Panics on length mismatch; use [`BitVector::try_xor`] for a checked sum.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn try_xor(&self, other: &BitVector) -> Result<BitVector, Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    /// Weight of `self + other` without allocating.
    #[inline]
    pub fn xor_weight(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Standard inner product `Σ uᵢvᵢ` over GF(2).
    pub fn dot(&self, other: &BitVector) -> Result<bool, Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
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

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from its rows, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::LengthMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose columns are `columns`, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::LengthMismatch {
                    expected: rows,
                    actual: c.len(),
                });
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
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
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row].get(col)
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row].set(col, value);
    }

    #[inline]
    pub fn row(&self, index: usize) -> &BitVector {
        &self.data[index]
    }

    #[inline]
    pub fn row_mut(&mut self, index: usize) -> &mut BitVector {
        &mut self.data[index]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.data
    }

    pub fn column(&self, index: usize) -> BitVector {
        assert!(index < self.cols);
        let mut c = BitVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.get(index) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mat_mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(v)? {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        Echelon::new(self).pivots.len()
    }

    /// Lowest-index greedy basis of the column space.
    ///
    /// These are exactly the pivot columns of the row echelon form.
    pub fn column_basis(&self) -> Vec<usize> {
        Echelon::new(self).pivots.iter().map(|&(_, c)| c).collect()
    }

    /// A basis of `{ x : self · x = 0 }`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let ech = Echelon::reduced(self);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for &(r, c) in &ech.pivots {
                    if ech.rows[r].get(f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Row echelon form of a copy of a matrix.
struct Echelon {
    rows: Vec<BitVector>,
    /// (row, column) of each pivot, columns increasing.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    fn eliminate(m: &BitMatrix, full: bool) -> Self {
        let mut rows = m.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let (done, rest) = rows.split_at_mut(next + 1);
            let pivot_row = &done[next];
            for r in rest.iter_mut() {
                if r.get(col) {
                    r.xor_assign(pivot_row);
                }
            }
            if full {
                let (above, from) = rows.split_at_mut(next);
                for r in above.iter_mut() {
                    if r.get(col) {
                        r.xor_assign(&from[0]);
                    }
                }
            }
            pivots.push((next, col));
            next += 1;
        }
        Self { rows, pivots }
    }

    fn new(m: &BitMatrix) -> Self {
        Self::eliminate(m, false)
    }

    fn reduced(m: &BitMatrix) -> Self {
        Self::eliminate(m, true)
    }
}

/// Incremental solver for coordinates with respect to a fixed independent family.
///
/// Built once from the family, it answers "which subset sums to `t`" for many
/// targets in `O(k · len / 64)` each.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    len: usize,
    size: usize,
    /// Reduced vectors, each with a distinct pivot bit, plus the combination of
    /// original family members that produced it.
    reduced: Vec<(usize, BitVector, BitVector)>,
}

impl SpanSolver {
    pub fn new(len: usize, family: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut solver = SpanSolver {
            len,
            size: family.len(),
            reduced: Vec::with_capacity(family.len()),
        };
        for (index, v) in family.iter().enumerate() {
            if v.len() != len {
                return Err(Gf2Error::LengthMismatch {
                    expected: len,
                    actual: v.len(),
                });
            }
            let (rest, mut combo) = solver.reduce(v);
            match rest.first_one() {
                None => return Err(Gf2Error::DependentBasis { index }),
                Some(pivot) => {
                    combo.set(index, true);
                    solver.reduced.push((pivot, rest, combo));
                }
            }
        }
        Ok(solver)
    }

    fn reduce(&self, t: &BitVector) -> (BitVector, BitVector) {
        let mut rest = t.clone();
        let mut combo = BitVector::zeros(self.size);
        for (pivot, v, c) in &self.reduced {
            if rest.get(*pivot) {
                rest.xor_assign(v);
                combo.xor_assign(c);
            }
        }
        (rest, combo)
    }

    /// Coefficients `c` with `Σ cᵢ familyᵢ = t`, or `None` when `t` is outside the span.
    pub fn solve(&self, t: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if t.len() != self.len {
            return Err(Gf2Error::LengthMismatch {
                expected: self.len,
                actual: t.len(),
            });
        }
        let (rest, combo) = self.reduce(t);
        Ok(rest.is_zero().then_some(combo))
    }
}

/// Expresses `t` in terms of the independent vectors `basis_cols`.
///
/// Returns `Ok(None)` when `t` is not in their span. The empty family spans
/// only the zero vector of `t`'s length.
pub fn solve_in_span(basis_cols: &[BitVector], t: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
    SpanSolver::new(t.len(), basis_cols)?.solve(t)
}
