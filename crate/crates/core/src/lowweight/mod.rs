//! Weight-four errors built from the shared columns of maximal check pairs.
//!
//! For a check pair sharing 8 columns, any two of those columns cancel both
//! checks. Taking two such columns from an anchor pair and two from another
//! maximal pair gives a weight-four error. The hard ones cancel exactly two
//! checks within each column pair and eight checks overall, so that four
//! cross cancellations tie the two column pairs together.

mod combo;
mod pairs;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::gf2::Gf2Error;
use crate::model::DecodingModel;

pub use combo::{
    combo_features, combo_structure, extend_weight5, CancelKind, CancellationTable, ComboFeatures,
    Decomposition, ErrorCombo,
};
pub use pairs::{
    max_shared_pairs, shared_column_counts, shared_columns, shared_count_frequency, CheckPair,
    PairStats, MAX_SHARED,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowWeightError {
    #[error("anchor pair ({a}, {b}) shares {n_s} columns, expected {expected}")]
    AnchorShared {
        a: usize,
        b: usize,
        n_s: usize,
        expected: usize,
    },
    #[error("expected a weight-{expected} error, got weight {actual}")]
    Weight { expected: usize, actual: usize },
    #[error(transparent)]
    Matrix(#[from] Gf2Error),
}

/// Result of sweeping one anchor pair against a list of partner pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    /// Distinct fault sets, sorted by fault ids.
    pub combos: Vec<ErrorCombo>,
    /// Constructions with four distinct columns, counted with multiplicity.
    pub constructed: usize,
    /// Constructions dropped for having fewer than four distinct columns.
    pub collapsed: usize,
    /// `nc_histogram[n]` = constructions (with multiplicity) with total
    /// `n_c = n`.
    pub nc_histogram: Vec<usize>,
}

fn column_pairs(cols: &[usize]) -> Vec<[usize; 2]> {
    let mut out = Vec::with_capacity(cols.len() * cols.len().saturating_sub(1) / 2);
    for (i, &x) in cols.iter().enumerate() {
        for &y in &cols[i + 1..] {
            out.push([x, y]);
        }
    }
    out
}

/// Weight-four errors for one anchor pair with exactly
/// [`MAX_SHARED`] shared columns, against every other pair in `pairs`.
pub fn enumerate_weight4(
    model: &DecodingModel,
    anchor: CheckPair,
    pairs: &[CheckPair],
) -> Result<Enumeration, LowWeightError> {
    enumerate_weight4_with(model, &model.h().row_lists(), anchor, pairs, MAX_SHARED)
}

/// As [`enumerate_weight4`] with a precomputed row view and an arbitrary
/// required anchor share count.
pub fn enumerate_weight4_with(
    model: &DecodingModel,
    rows: &[Vec<usize>],
    anchor: CheckPair,
    pairs: &[CheckPair],
    anchor_shared: u32,
) -> Result<Enumeration, LowWeightError> {
    let h = model.h();
    let anchor_cols = shared_columns(rows, anchor);
    if anchor_cols.len() != anchor_shared as usize {
        return Err(LowWeightError::AnchorShared {
            a: anchor.a,
            b: anchor.b,
            n_s: anchor_cols.len(),
            expected: anchor_shared as usize,
        });
    }
    let anchor_pairs: Vec<([usize; 2], usize)> = column_pairs(&anchor_cols)
        .into_iter()
        .map(|p| Ok((p, h.canceled_checks(&p)?.n_c)))
        .collect::<Result<_, Gf2Error>>()?;

    let mut out = Enumeration {
        nc_histogram: vec![0; 1],
        ..Default::default()
    };
    let mut merged: BTreeMap<[usize; 4], ErrorCombo> = BTreeMap::new();
    for &partner in pairs {
        if partner == anchor {
            continue;
        }
        let partner_cols = shared_columns(rows, partner);
        for q in column_pairs(&partner_cols) {
            let q_nc = h.canceled_checks(&q)?.n_c;
            for &(p, p_nc) in &anchor_pairs {
                let mut ids = [p[0], p[1], q[0], q[1]];
                ids.sort_unstable();
                if ids.windows(2).any(|w| w[0] == w[1]) {
                    out.collapsed += 1;
                    continue;
                }
                out.constructed += 1;
                let decomposition = Decomposition::new((anchor, p, p_nc), (partner, q, q_nc));
                match merged.get_mut(&ids) {
                    Some(c) => {
                        c.add_decomposition(decomposition);
                        bump(&mut out.nc_histogram, c.metrics.n_c);
                    }
                    None => {
                        let c = ErrorCombo::new(h, ids.to_vec(), vec![decomposition])?;
                        bump(&mut out.nc_histogram, c.metrics.n_c);
                        merged.insert(ids, c);
                    }
                }
            }
        }
    }
    out.combos = merged.into_values().collect();
    Ok(out)
}

fn bump(hist: &mut Vec<usize>, n: usize) {
    if hist.len() <= n {
        hist.resize(n + 1, 0);
    }
    hist[n] += 1;
}

/// Merges per-anchor results into one sorted, deduplicated list. Equal
/// fault sets found from several anchors keep the union of their
/// decompositions, so the result does not depend on merge order.
pub fn merge_combos<I>(parts: I) -> Vec<ErrorCombo>
where
    I: IntoIterator<Item = Vec<ErrorCombo>>,
{
    let mut merged: BTreeMap<Vec<usize>, ErrorCombo> = BTreeMap::new();
    for part in parts {
        for c in part {
            match merged.get_mut(&c.fault_ids) {
                Some(existing) => {
                    for d in c.decompositions {
                        existing.add_decomposition(d);
                    }
                }
                None => {
                    merged.insert(c.fault_ids.clone(), c);
                }
            }
        }
    }
    merged.into_values().collect()
}

/// Sweeps every pair in `pairs` as the anchor and merges the results.
pub fn enumerate_all_weight4(
    model: &DecodingModel,
    pairs: &[CheckPair],
) -> Result<Vec<ErrorCombo>, LowWeightError> {
    let rows = model.h().row_lists();
    let mut parts = Vec::with_capacity(pairs.len());
    for &anchor in pairs {
        parts.push(enumerate_weight4_with(model, &rows, anchor, pairs, MAX_SHARED)?.combos);
    }
    Ok(merge_combos(parts))
}

/// Required canceled-check counts. Each list holds the accepted values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterSpec {
    /// Accepted `n_c` of each column pair on its own.
    pub pair_nc: Vec<usize>,
    /// Accepted `n_c` of all four columns together.
    pub total_nc: Vec<usize>,
}

impl Default for FilterSpec {
    fn default() -> Self {
        Self {
            pair_nc: vec![2],
            total_nc: vec![8],
        }
    }
}

impl FilterSpec {
    pub fn exact(pair_nc: usize, total_nc: usize) -> Self {
        Self {
            pair_nc: vec![pair_nc],
            total_nc: vec![total_nc],
        }
    }

    /// Total cancellation relaxed to 6, 7 or 8.
    pub fn relaxed_total() -> Self {
        Self {
            pair_nc: vec![2],
            total_nc: vec![6, 7, 8],
        }
    }

    /// Column pairs may cancel 2 or 4 checks.
    pub fn relaxed_pair() -> Self {
        Self {
            pair_nc: vec![2, 4],
            total_nc: vec![8],
        }
    }

    fn accepts_decomposition(&self, d: &Decomposition) -> bool {
        d.pair_nc.iter().all(|n| self.pair_nc.contains(n))
    }
}

/// Keeps combos whose total `n_c` is accepted and that have at least one
/// decomposition with both pair counts accepted. Only the accepted
/// decompositions are retained, which makes the filter idempotent.
pub fn filter_hard_errors(combos: &[ErrorCombo], spec: &FilterSpec) -> Vec<ErrorCombo> {
    let mut out: Vec<ErrorCombo> = combos
        .iter()
        .filter(|c| spec.total_nc.contains(&c.metrics.n_c))
        .filter_map(|c| {
            let kept: Vec<Decomposition> = c
                .decompositions
                .iter()
                .filter(|d| spec.accepts_decomposition(d))
                .cloned()
                .collect();
            (!kept.is_empty()).then(|| ErrorCombo {
                decompositions: kept,
                ..c.clone()
            })
        })
        .collect();
    out.sort_by(|a, b| a.fault_ids.cmp(&b.fault_ids));
    out.dedup_by(|a, b| a.fault_ids == b.fault_ids);
    out
}

/// Counts of distinct column pairs and of distinct splits of errors into
/// two column pairs, over the retained decompositions of `combos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionStats {
    pub errors: usize,
    pub column_pairs: usize,
    pub decompositions: usize,
}

pub fn decomposition_stats(combos: &[ErrorCombo]) -> DecompositionStats {
    let mut column_pairs = Vec::new();
    let mut splits = Vec::new();
    for c in combos {
        for d in &c.decompositions {
            column_pairs.push(d.columns[0]);
            column_pairs.push(d.columns[1]);
            splits.push(d.columns);
        }
    }
    column_pairs.sort_unstable();
    column_pairs.dedup();
    splits.sort_unstable();
    splits.dedup();
    DecompositionStats {
        errors: combos.len(),
        column_pairs: column_pairs.len(),
        decompositions: splits.len(),
    }
}

/// `hist[n]` = number of combos with total `n_c = n`.
pub fn nc_distribution(combos: &[ErrorCombo]) -> Vec<usize> {
    let mut hist = vec![0usize; 1];
    for c in combos {
        bump(&mut hist, c.metrics.n_c);
    }
    hist
}
