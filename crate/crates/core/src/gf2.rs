//! Sparse binary matrices over GF(2) and the column-set syndrome algebra.
//!
//! Decoding matrices are stored column-sparse: every quantity the analysis
//! needs (syndrome of a fault set, unique checks, canceled checks) is a
//! column-set operation. Syndromes and fault vectors are dense and
//! bit-packed so XOR and popcount run a word at a time.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("column index {index} listed more than once")]
    DuplicateIndex { index: usize },
    #[error("column index {index} out of range for {n_cols} columns")]
    ColumnOutOfRange { index: usize, n_cols: usize },
    #[error("row index {row} out of range for {n_rows} rows (column {col})")]
    RowOutOfRange {
        col: usize,
        row: usize,
        n_rows: usize,
    },
    #[error("row indices of column {col} are not strictly increasing")]
    UnsortedColumn { col: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

const WORD_BITS: usize = 64;

/// Fixed-length bit vector packed into `u64` words.
///
/// Bits past `len` in the last word are always zero, so word-wise equality
/// and popcount are exact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

/// A syndrome is a bit per check (row).
pub type Syndrome = BitVec;

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a vector with the listed positions set. Repeated positions
    /// toggle, matching a mod-2 sum.
    pub fn from_ones(len: usize, ones: &[usize]) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(len);
        for &i in ones {
            if i >= len {
                return Err(Gf2Error::LengthMismatch {
                    expected: len,
                    actual: i + 1,
                });
            }
            v.flip(i);
        }
        Ok(v)
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
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn xor_assign(&mut self, other: &BitVec) -> Result<(), Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BitVec(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Column-sparse binary matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBitMatrix {
    n_rows: usize,
    columns: Vec<Vec<usize>>,
}

impl SparseBitMatrix {
    /// Builds a matrix from per-column row lists, which must be strictly
    /// increasing and in range.
    pub fn from_columns(n_rows: usize, columns: Vec<Vec<usize>>) -> Result<Self, Gf2Error> {
        for (col, rows) in columns.iter().enumerate() {
            for w in rows.windows(2) {
                if w[0] >= w[1] {
                    return Err(Gf2Error::UnsortedColumn { col });
                }
            }
            if let Some(&row) = rows.last() {
                if row >= n_rows {
                    return Err(Gf2Error::RowOutOfRange { col, row, n_rows });
                }
            }
        }
        Ok(Self { n_rows, columns })
    }

    /// Like [`from_columns`](Self::from_columns) but sorts each column first.
    /// Duplicate entries within a column are still rejected.
    pub fn from_unsorted_columns(
        n_rows: usize,
        mut columns: Vec<Vec<usize>>,
    ) -> Result<Self, Gf2Error> {
        for c in columns.iter_mut() {
            c.sort_unstable();
        }
        Self::from_columns(n_rows, columns)
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            columns: vec![Vec::new(); n_cols],
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].binary_search(&row).is_ok()
    }

    /// Row-sparse view: for every row, the sorted list of columns with a
    /// nonzero entry.
    pub fn row_lists(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.n_rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &i in col {
                rows[i].push(j);
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseBitMatrix {
        SparseBitMatrix {
            n_rows: self.n_cols(),
            columns: self.row_lists(),
        }
    }

    pub fn column_vec(&self, j: usize) -> Syndrome {
        let mut s = BitVec::zeros(self.n_rows);
        for &i in &self.columns[j] {
            s.set(i, true);
        }
        s
    }

    /// Appends a column (row list must satisfy the usual invariants).
    pub fn push_column(&mut self, rows: Vec<usize>) -> Result<(), Gf2Error> {
        let col = self.columns.len();
        for w in rows.windows(2) {
            if w[0] >= w[1] {
                return Err(Gf2Error::UnsortedColumn { col });
            }
        }
        if let Some(&row) = rows.last() {
            if row >= self.n_rows {
                return Err(Gf2Error::RowOutOfRange {
                    col,
                    row,
                    n_rows: self.n_rows,
                });
            }
        }
        self.columns.push(rows);
        Ok(())
    }

    fn check_indices(&self, idx: &[usize]) -> Result<(), Gf2Error> {
        let n_cols = self.n_cols();
        for (k, &j) in idx.iter().enumerate() {
            if j >= n_cols {
                return Err(Gf2Error::ColumnOutOfRange { index: j, n_cols });
            }
            if idx[..k].contains(&j) {
                return Err(Gf2Error::DuplicateIndex { index: j });
            }
        }
        Ok(())
    }

    /// Mod-2 sum of the listed distinct columns.
    pub fn xor_columns(&self, idx: &[usize]) -> Result<Syndrome, Gf2Error> {
        self.check_indices(idx)?;
        let mut s = BitVec::zeros(self.n_rows);
        for &j in idx {
            for &i in &self.columns[j] {
                s.flip(i);
            }
        }
        Ok(s)
    }

    /// Size of the union of the row supports of the listed columns.
    pub fn unique_checks(&self, idx: &[usize]) -> Result<usize, Gf2Error> {
        self.check_indices(idx)?;
        let mut rows: Vec<usize> = idx
            .iter()
            .flat_map(|&j| self.columns[j].iter().copied())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        Ok(rows.len())
    }

    /// Syndrome weight, unique-check count and canceled-check count of a
    /// set of distinct columns.
    pub fn canceled_checks(&self, idx: &[usize]) -> Result<ComboMetrics, Gf2Error> {
        self.check_indices(idx)?;
        let mut rows: Vec<usize> = idx
            .iter()
            .flat_map(|&j| self.columns[j].iter().copied())
            .collect();
        rows.sort_unstable();
        let mut n_u = 0;
        let mut w = 0;
        let mut k = 0;
        while k < rows.len() {
            let mut run = 1;
            while k + run < rows.len() && rows[k + run] == rows[k] {
                run += 1;
            }
            n_u += 1;
            w += run % 2;
            k += run;
        }
        Ok(ComboMetrics {
            w,
            n_u,
            n_c: n_u - w,
        })
    }

    /// `H·e mod 2`.
    pub fn mat_vec_mod2(&self, e: &BitVec) -> Result<Syndrome, Gf2Error> {
        if e.len() != self.n_cols() {
            return Err(Gf2Error::LengthMismatch {
                expected: self.n_cols(),
                actual: e.len(),
            });
        }
        let mut s = BitVec::zeros(self.n_rows);
        for j in e.ones() {
            for &i in &self.columns[j] {
                s.flip(i);
            }
        }
        Ok(s)
    }
}

/// Hamming weight of a syndrome.
pub fn hamming_weight(s: &Syndrome) -> usize {
    s.weight()
}

/// Weight `w` of the summed syndrome, number `n_u` of unique checks touched,
/// and number `n_c = n_u - w` of checks canceled (touched an even positive
/// number of times).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ComboMetrics {
    pub w: usize,
    pub n_u: usize,
    pub n_c: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_col() -> SparseBitMatrix {
        SparseBitMatrix::from_columns(4, vec![vec![0, 1], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn xor_cancels_shared_rows() {
        let h = two_col();
        let s = h.xor_columns(&[0, 1]).unwrap();
        assert_eq!(s, BitVec::from_bools(&[false, false, true, false]));
        assert_eq!(hamming_weight(&s), 1);
        assert_eq!(h.xor_columns(&[1]).unwrap(), h.column_vec(1));
    }

    #[test]
    fn metrics_of_two_columns() {
        let h = two_col();
        assert_eq!(h.unique_checks(&[0, 1]).unwrap(), 3);
        assert_eq!(
            h.canceled_checks(&[0, 1]).unwrap(),
            ComboMetrics {
                w: 1,
                n_u: 3,
                n_c: 2
            }
        );
        assert_eq!(h.canceled_checks(&[1]).unwrap().n_c, 0);
        let single = SparseBitMatrix::from_columns(6, vec![vec![0, 2, 3, 5]]).unwrap();
        assert_eq!(single.unique_checks(&[0]).unwrap(), 4);
    }

    #[test]
    fn index_errors() {
        let h = two_col();
        assert_eq!(
            h.xor_columns(&[1, 1]),
            Err(Gf2Error::DuplicateIndex { index: 1 })
        );
        assert!(matches!(
            h.unique_checks(&[2]),
            Err(Gf2Error::ColumnOutOfRange { index: 2, .. })
        ));
        assert!(h.mat_vec_mod2(&BitVec::zeros(3)).is_err());
    }

    #[test]
    fn construction_validates_columns() {
        assert!(SparseBitMatrix::from_columns(3, vec![vec![1, 0]]).is_err());
        assert!(SparseBitMatrix::from_columns(3, vec![vec![1, 1]]).is_err());
        assert!(SparseBitMatrix::from_columns(3, vec![vec![3]]).is_err());
        assert!(SparseBitMatrix::from_unsorted_columns(3, vec![vec![2, 0]]).is_ok());
    }

    #[test]
    fn mat_vec_basics() {
        let h = two_col();
        assert!(h.mat_vec_mod2(&BitVec::zeros(2)).unwrap().is_zero());
        let e = BitVec::from_ones(2, &[1]).unwrap();
        assert_eq!(h.mat_vec_mod2(&e).unwrap(), h.column_vec(1));
    }

    #[test]
    fn bitvec_ones_and_weight() {
        let v = BitVec::from_ones(130, &[0, 63, 64, 129]).unwrap();
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.weight(), 4);
        assert!(BitVec::zeros(70).is_zero());
        assert_eq!(hamming_weight(&BitVec::zeros(5)), 0);
    }
}
