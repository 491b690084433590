use alloc::vec;
use alloc::vec::Vec;

use crate::gf2::SparseBitMatrix;

/// Edge-indexed Tanner graph. Edges are numbered check-major, so the edges
/// of check `i` are `check_start[i]..check_start[i + 1]`; each variable
/// keeps the list of its edge ids.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    n_checks: usize,
    n_vars: usize,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    var_start: Vec<usize>,
    var_edges: Vec<usize>,
}

impl TannerGraph {
    pub fn new(h: &SparseBitMatrix) -> Self {
        let rows = h.row_lists();
        let mut check_start = Vec::with_capacity(rows.len() + 1);
        let mut edge_var = Vec::with_capacity(h.nnz());
        check_start.push(0);
        for row in &rows {
            edge_var.extend_from_slice(row);
            check_start.push(edge_var.len());
        }
        let n_vars = h.n_cols();
        let mut var_start = vec![0usize; n_vars + 1];
        for &v in &edge_var {
            var_start[v + 1] += 1;
        }
        for j in 0..n_vars {
            var_start[j + 1] += var_start[j];
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0usize; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        Self {
            n_checks: rows.len(),
            n_vars,
            check_start,
            edge_var,
            var_start,
            var_edges,
        }
    }

    #[inline]
    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    #[inline]
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    #[inline]
    pub fn n_edges(&self) -> usize {
        self.edge_var.len()
    }

    #[inline]
    pub fn check_edges(&self, i: usize) -> core::ops::Range<usize> {
        self.check_start[i]..self.check_start[i + 1]
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    #[inline]
    pub fn var_edges(&self, j: usize) -> &[usize] {
        &self.var_edges[self.var_start[j]..self.var_start[j + 1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_consistent() {
        let h = SparseBitMatrix::from_columns(3, vec![vec![0, 2], vec![1], vec![0, 1, 2]]).unwrap();
        let g = TannerGraph::new(&h);
        assert_eq!(g.n_edges(), 6);
        for i in 0..g.n_checks() {
            for e in g.check_edges(i) {
                let j = g.edge_var(e);
                assert!(g.var_edges(j).contains(&e));
                assert!(h.get(i, j));
            }
        }
        assert_eq!(g.var_edges(1).len(), 1);
    }
}
