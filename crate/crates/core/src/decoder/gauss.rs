//! Dense GF(2) elimination used by OSD and by the code generators.

use alloc::vec::Vec;

use crate::gf2::{BitVec, SparseBitMatrix};

/// Incrementally built echelon basis of a GF(2) vector space.
#[derive(Debug, Clone, Default)]
pub struct XorBasis {
    vecs: Vec<(usize, BitVec)>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    fn reduce(&self, v: &mut BitVec) {
        for (p, b) in &self.vecs {
            if v.get(*p) {
                let _ = v.xor_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut x = v.clone();
        self.reduce(&mut x);
        x.is_zero()
    }

    /// Adds `v` if it is independent of the span; returns whether it was.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let mut x = v.clone();
        self.reduce(&mut x);
        let pivot = x.ones().next();
        match pivot {
            Some(p) => {
                self.vecs.push((p, x));
                true
            }
            None => false,
        }
    }
}

/// Dense rows of a sparse matrix.
pub fn dense_rows(h: &SparseBitMatrix) -> Vec<BitVec> {
    let mut rows: Vec<BitVec> = (0..h.n_rows()).map(|_| BitVec::zeros(h.n_cols())).collect();
    for (j, col) in h.columns().iter().enumerate() {
        for &i in col {
            rows[i].set(j, true);
        }
    }
    rows
}

/// Basis of the right kernel `{x : H x = 0}`.
pub fn kernel_basis(h: &SparseBitMatrix) -> Vec<BitVec> {
    let n = h.n_cols();
    let mut rows = dense_rows(h);
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, r);
        let pivot_row = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != rank && row.get(col) {
                let _ = row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut is_pivot = alloc::vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = BitVec::zeros(n);
            x.set(f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if rows[r].get(f) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// Outcome of solving `H e = s` restricted to an information set chosen
/// greedily along `order`.
pub(crate) enum OrderedSolve {
    Solved(BitVec),
    Inconsistent,
}

/// Reduces `[H | s]` to row echelon form taking pivot columns in `order`
/// and returns the solution supported on the pivots.
pub(crate) fn solve_in_order(h: &SparseBitMatrix, s: &BitVec, order: &[usize]) -> OrderedSolve {
    let n_rows = h.n_rows();
    let mut rows = dense_rows(h);
    let mut rhs: Vec<bool> = (0..n_rows).map(|i| s.get(i)).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for &col in order {
        if rank == n_rows {
            break;
        }
        let Some(r) = (rank..n_rows).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, r);
        rhs.swap(rank, r);
        let pivot_row = rows[rank].clone();
        let pivot_rhs = rhs[rank];
        for k in 0..n_rows {
            if k != rank && rows[k].get(col) {
                let _ = rows[k].xor_assign(&pivot_row);
                rhs[k] ^= pivot_rhs;
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    if rhs[rank..].iter().any(|&b| b) {
        return OrderedSolve::Inconsistent;
    }
    let mut e = BitVec::zeros(h.n_cols());
    for (r, col) in pivots {
        if rhs[r] {
            e.set(col, true);
        }
    }
    OrderedSolve::Solved(e)
}
