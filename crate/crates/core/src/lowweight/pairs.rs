use alloc::vec;
use alloc::vec::Vec;

use crate::model::DecodingModel;

/// Number of shared columns that marks a maximal check pair.
pub const MAX_SHARED: u32 = 8;

/// Unordered pair of checks, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckPair {
    pub a: usize,
    pub b: usize,
}

impl CheckPair {
    pub fn new(x: usize, y: usize) -> Self {
        if x <= y {
            Self { a: x, b: y }
        } else {
            Self { a: y, b: x }
        }
    }
}

/// Shared-column counts `n_s(c_i, c_j)` over a scope of checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStats {
    checks: Vec<usize>,
    counts: Vec<u32>,
}

impl PairStats {
    pub fn checks(&self) -> &[usize] {
        &self.checks
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    fn position(&self, check: usize) -> Option<usize> {
        self.checks.binary_search(&check).ok()
    }

    /// `n_s` of two distinct checks in scope.
    pub fn count(&self, x: usize, y: usize) -> Option<u32> {
        if x == y {
            return None;
        }
        let (i, j) = (self.position(x)?, self.position(y)?);
        Some(self.counts[i * self.checks.len() + j])
    }

    /// All pairs `(a, b, n_s)` with `a < b`, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let k = self.checks.len();
        (0..k).flat_map(move |i| {
            (i + 1..k).map(move |j| (self.checks[i], self.checks[j], self.counts[i * k + j]))
        })
    }

    pub fn max_count(&self) -> u32 {
        self.pairs().map(|(_, _, n)| n).max().unwrap_or(0)
    }

    /// Pairs with exactly `n_s` shared columns.
    pub fn pairs_with(&self, n_s: u32) -> Vec<CheckPair> {
        self.pairs()
            .filter(|&(_, _, n)| n == n_s)
            .map(|(a, b, _)| CheckPair::new(a, b))
            .collect()
    }
}

/// Counts, for every pair of checks in `scope`, the columns nonzero at both.
/// Duplicate scope entries are ignored.
pub fn shared_column_counts(model: &DecodingModel, scope: &[usize]) -> PairStats {
    let mut checks: Vec<usize> = scope
        .iter()
        .copied()
        .filter(|&c| c < model.n_checks())
        .collect();
    checks.sort_unstable();
    checks.dedup();
    let k = checks.len();
    let mut slot = vec![usize::MAX; model.n_checks()];
    for (i, &c) in checks.iter().enumerate() {
        slot[c] = i;
    }
    let mut counts = vec![0u32; k * k];
    let mut local = Vec::new();
    for col in model.h().columns() {
        local.clear();
        local.extend(col.iter().map(|&r| slot[r]).filter(|&s| s != usize::MAX));
        for (x, &i) in local.iter().enumerate() {
            for &j in &local[x + 1..] {
                counts[i * k + j] += 1;
                counts[j * k + i] += 1;
            }
        }
    }
    PairStats { checks, counts }
}

/// Histogram of `n_s(check, c)` over every other check `c` in scope, indexed
/// by `n_s` from 0 up to the largest count in `stats`.
pub fn shared_count_frequency(stats: &PairStats, check: usize) -> Option<Vec<usize>> {
    stats.position(check)?;
    let mut hist = vec![0usize; stats.max_count() as usize + 1];
    for &other in stats.checks() {
        if let Some(n) = stats.count(check, other) {
            hist[n as usize] += 1;
        }
    }
    Some(hist)
}

/// Pairs of checks within `scope` sharing exactly [`MAX_SHARED`] columns.
pub fn max_shared_pairs(model: &DecodingModel, scope: &[usize]) -> Vec<CheckPair> {
    shared_column_counts(model, scope).pairs_with(MAX_SHARED)
}

/// Columns with a nonzero entry in both checks of `pair`.
pub fn shared_columns(rows: &[Vec<usize>], pair: CheckPair) -> Vec<usize> {
    let (ra, rb) = (&rows[pair.a], &rows[pair.b]);
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < ra.len() && j < rb.len() {
        match ra[i].cmp(&rb[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(ra[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
