use alloc::vec::Vec;

use super::{CheckPair, LowWeightError};
use crate::gf2::{ComboMetrics, Gf2Error, SparseBitMatrix, Syndrome};
use crate::model::DecodingModel;

/// One way of writing a weight-four error as two column pairs, each taken
/// from the shared columns of a maximal check pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    /// Column pairs, each sorted, the pair of pairs sorted.
    pub columns: [[usize; 2]; 2],
    pub check_pairs: [CheckPair; 2],
    /// `n_c` of each column pair on its own.
    pub pair_nc: [usize; 2],
}

impl Decomposition {
    pub fn new(
        first: (CheckPair, [usize; 2], usize),
        second: (CheckPair, [usize; 2], usize),
    ) -> Self {
        let norm = |(p, mut c, n): (CheckPair, [usize; 2], usize)| {
            c.sort_unstable();
            (c, p, n)
        };
        let (mut x, mut y) = (norm(first), norm(second));
        if (y.0, y.1) < (x.0, x.1) {
            core::mem::swap(&mut x, &mut y);
        }
        Self {
            columns: [x.0, y.0],
            check_pairs: [x.1, y.1],
            pair_nc: [x.2, y.2],
        }
    }

    /// The four columns in `s1, s2, s3, s4` order.
    pub fn ordered_columns(&self) -> [usize; 4] {
        [
            self.columns[0][0],
            self.columns[0][1],
            self.columns[1][0],
            self.columns[1][1],
        ]
    }
}

/// A set of distinct fault columns with its syndrome and metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorCombo {
    /// Sorted, distinct.
    pub fault_ids: Vec<usize>,
    pub syndrome: Syndrome,
    pub metrics: ComboMetrics,
    /// Constructions producing this fault set; empty for combos not built
    /// from check pairs.
    pub decompositions: Vec<Decomposition>,
}

impl ErrorCombo {
    pub fn new(
        h: &SparseBitMatrix,
        mut fault_ids: Vec<usize>,
        mut decompositions: Vec<Decomposition>,
    ) -> Result<Self, Gf2Error> {
        fault_ids.sort_unstable();
        let syndrome = h.xor_columns(&fault_ids)?;
        let metrics = h.canceled_checks(&fault_ids)?;
        decompositions.sort_unstable();
        decompositions.dedup();
        Ok(Self {
            fault_ids,
            syndrome,
            metrics,
            decompositions,
        })
    }

    pub fn from_faults(h: &SparseBitMatrix, fault_ids: Vec<usize>) -> Result<Self, Gf2Error> {
        Self::new(h, fault_ids, Vec::new())
    }

    pub fn weight(&self) -> usize {
        self.fault_ids.len()
    }

    pub(crate) fn add_decomposition(&mut self, d: Decomposition) {
        if let Err(pos) = self.decompositions.binary_search(&d) {
            self.decompositions.insert(pos, d);
        }
    }

    /// Indicator vector of the fault set over `n_faults` columns.
    pub fn indicator(&self, n_faults: usize) -> crate::gf2::BitVec {
        let mut e = crate::gf2::BitVec::zeros(n_faults);
        for &j in &self.fault_ids {
            e.set(j, true);
        }
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CancelKind {
    /// Both incident columns come from the same column pair.
    WithinPair,
    /// Two incident columns, one from each column pair (or any two columns
    /// when the error has no decomposition).
    Cross,
    /// Four (or another even number above two) incident columns.
    Multiple,
}

/// Rows of canceled checks, each with a mask of which of the ordered
/// columns touch it (bit `k` for column `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationTable {
    pub columns: Vec<usize>,
    pub rows: Vec<(usize, u32, CancelKind)>,
}

impl CancellationTable {
    pub fn n_canceled(&self) -> usize {
        self.rows.len()
    }
}

/// Which columns touch each canceled check. Columns follow the first
/// decomposition (`s1, s2 | s3, s4`) when there is one, otherwise the sorted
/// fault ids. Rows list within-pair cancellations first, then cross, then
/// multiple, each group by mask and then check.
pub fn combo_structure(model: &DecodingModel, combo: &ErrorCombo) -> CancellationTable {
    let columns: Vec<usize> = match combo.decompositions.first() {
        Some(d) if combo.weight() == 4 => d.ordered_columns().to_vec(),
        _ => combo.fault_ids.clone(),
    };
    let h = model.h();
    let mut touched: Vec<(usize, u32)> = Vec::new();
    for (k, &j) in columns.iter().enumerate() {
        for &r in h.column(j) {
            touched.push((r, 1 << k));
        }
    }
    touched.sort_unstable();
    let mut rows = Vec::new();
    let mut i = 0;
    while i < touched.len() {
        let check = touched[i].0;
        let mut mask = 0u32;
        while i < touched.len() && touched[i].0 == check {
            mask |= touched[i].1;
            i += 1;
        }
        let count = mask.count_ones();
        if count % 2 == 1 {
            continue;
        }
        let paired = columns.len() == 4 && !combo.decompositions.is_empty();
        let kind = if count > 2 {
            CancelKind::Multiple
        } else if paired && (mask == 0b0011 || mask == 0b1100) {
            CancelKind::WithinPair
        } else {
            CancelKind::Cross
        };
        rows.push((check, mask, kind));
    }
    rows.sort_by_key(|&(check, mask, kind)| (kind, mask, check));
    CancellationTable { columns, rows }
}

/// Weight-five errors: the combo plus one more column sharing at least one
/// check with it, in increasing column order, at most `limit` of them.
pub fn extend_weight5(
    model: &DecodingModel,
    combo: &ErrorCombo,
    limit: usize,
) -> Result<Vec<ErrorCombo>, LowWeightError> {
    if combo.weight() != 4 {
        return Err(LowWeightError::Weight {
            expected: 4,
            actual: combo.weight(),
        });
    }
    let h = model.h();
    let candidates = neighbor_columns(model, &combo.fault_ids);
    candidates
        .into_iter()
        .take(limit)
        .map(|j| {
            let mut ids = combo.fault_ids.clone();
            ids.push(j);
            Ok(ErrorCombo::from_faults(h, ids)?)
        })
        .collect()
}

/// Columns outside `faults` that share a check with some column in it.
pub(crate) fn neighbor_columns(model: &DecodingModel, faults: &[usize]) -> Vec<usize> {
    let h = model.h();
    let mut touched = alloc::vec![false; model.n_checks()];
    for &j in faults {
        for &r in h.column(j) {
            touched[r] = true;
        }
    }
    (0..model.n_faults())
        .filter(|j| !faults.contains(j))
        .filter(|&j| h.column(j).iter().any(|&r| touched[r]))
        .collect()
}

/// Per-error descriptors exported for exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComboFeatures {
    pub metrics: ComboMetrics,
    /// Columns outside the error that share a check with it.
    pub neighborhood: usize,
    pub decompositions: usize,
}

pub fn combo_features(model: &DecodingModel, combo: &ErrorCombo) -> ComboFeatures {
    ComboFeatures {
        metrics: combo.metrics,
        neighborhood: neighbor_columns(model, &combo.fault_ids).len(),
        decompositions: combo.decompositions.len(),
    }
}
