//! Appending the syndromes of known errors to a decoding model as extra
//! composite fault columns.
//!
//! Each added column carries the XOR of its source faults' check columns and
//! of their observable columns, so choosing it is logically the same as
//! choosing all of its sources.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decoder::{DecodeError, RelayConfig};
use crate::dynlab::{logical_error_rate, mean_iterations, run_trials, DecoderKind, DynError};
use crate::gf2::{Gf2Error, SparseBitMatrix};
use crate::lowweight::ErrorCombo;
use crate::model::{DecodingModel, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmendError {
    #[error("fraction {0} outside [0, 1]")]
    Fraction(f64),
    #[error("prior {0} outside (0, 0.5]")]
    Prior(f64),
    #[error("combo {combo} references fault {fault} beyond the model's {n_faults} faults")]
    FaultOutOfRange {
        combo: usize,
        fault: usize,
        n_faults: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Matrix(#[from] Gf2Error),
    #[error(transparent)]
    Trials(#[from] DynError),
}

impl From<DecodeError> for AmendError {
    fn from(e: DecodeError) -> Self {
        AmendError::Trials(DynError::Decode(e))
    }
}

/// Prior given to an added column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorChoice {
    /// Product of the source faults' priors, clamped into `(0, 0.5]`.
    ProductOfSources,
    Constant(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AddedColumn {
    pub checks: Vec<usize>,
    pub observables: Vec<usize>,
    pub prior: f64,
    /// Index of the source combo in the list given to [`amend_model`].
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmendedModel {
    pub base: DecodingModel,
    pub added: Vec<AddedColumn>,
}

impl AmendedModel {
    /// The base model with the added columns appended after its own.
    pub fn to_model(&self) -> Result<DecodingModel, AmendError> {
        let base = &self.base;
        let mut h_cols = base.h().columns().to_vec();
        let mut l_cols = base.l().columns().to_vec();
        let mut priors = base.priors().to_vec();
        for a in &self.added {
            h_cols.push(a.checks.clone());
            l_cols.push(a.observables.clone());
            priors.push(a.prior);
        }
        let h = SparseBitMatrix::from_columns(base.n_checks(), h_cols)?;
        let l = SparseBitMatrix::from_columns(base.n_observables(), l_cols)?;
        Ok(DecodingModel::new(h, priors, l, base.n_groups())?)
    }

    /// Added columns whose check set equals a base column's.
    pub fn collisions(&self) -> usize {
        let mut existing: Vec<&[usize]> = self.base.h().columns().iter().map(|c| &c[..]).collect();
        existing.sort_unstable();
        self.added
            .iter()
            .filter(|a| existing.binary_search(&&a.checks[..]).is_ok())
            .count()
    }
}

fn xor_sorted(cols: &[&[usize]]) -> Vec<usize> {
    let mut all: Vec<usize> = cols.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable();
    let mut out = Vec::with_capacity(all.len());
    let mut i = 0;
    while i < all.len() {
        let mut k = i;
        while k < all.len() && all[k] == all[i] {
            k += 1;
        }
        if (k - i) % 2 == 1 {
            out.push(all[i]);
        }
        i = k;
    }
    out
}

/// Indices of the first `round(fraction * n)` entries of one seeded
/// permutation of `0..n`, sorted. Growing the fraction under a fixed seed
/// only adds indices.
pub fn select_subset(n: usize, fraction: f64, seed: u64) -> Result<Vec<usize>, AmendError> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(AmendError::Fraction(fraction));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let take = libm::round(fraction * n as f64) as usize;
    perm.truncate(take.min(n));
    perm.sort_unstable();
    Ok(perm)
}

pub fn amend_model(
    model: &DecodingModel,
    combos: &[ErrorCombo],
    fraction: f64,
    prior: PriorChoice,
    seed: u64,
) -> Result<AmendedModel, AmendError> {
    if let PriorChoice::Constant(p) = prior {
        if !(p > 0.0 && p <= 0.5) {
            return Err(AmendError::Prior(p));
        }
    }
    let chosen = select_subset(combos.len(), fraction, seed)?;
    let n = model.n_faults();
    let l = model.l();
    let mut added = Vec::with_capacity(chosen.len());
    for idx in chosen {
        let combo = &combos[idx];
        if let Some(&fault) = combo.fault_ids.iter().find(|&&j| j >= n) {
            return Err(AmendError::FaultOutOfRange {
                combo: idx,
                fault,
                n_faults: n,
            });
        }
        let h_parts: Vec<&[usize]> = combo
            .fault_ids
            .iter()
            .map(|&j| model.h().column(j))
            .collect();
        let l_parts: Vec<&[usize]> = combo.fault_ids.iter().map(|&j| l.column(j)).collect();
        let p = match prior {
            PriorChoice::Constant(p) => p,
            PriorChoice::ProductOfSources => combo
                .fault_ids
                .iter()
                .map(|&j| model.priors()[j])
                .product::<f64>()
                .clamp(f64::MIN_POSITIVE, 0.5),
        };
        added.push(AddedColumn {
            checks: xor_sorted(&h_parts),
            observables: xor_sorted(&l_parts),
            prior: p,
            source: idx,
        });
    }
    Ok(AmendedModel {
        base: model.clone(),
        added,
    })
}

/// The distinct column pairs of the combos' decompositions, as weight-two
/// sources for [`amend_model`].
pub fn column_pair_sources(
    model: &DecodingModel,
    combos: &[ErrorCombo],
) -> Result<Vec<ErrorCombo>, AmendError> {
    let mut pairs: Vec<[usize; 2]> = combos
        .iter()
        .flat_map(|c| c.decompositions.iter().flat_map(|d| d.columns))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
        .into_iter()
        .map(|p| Ok(ErrorCombo::from_faults(model.h(), p.to_vec())?))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub fraction: f64,
    pub decoder: DecoderKind,
    pub n_added: usize,
    pub mean_iterations: f64,
    pub logical_error_prob: f64,
    pub n_trials: usize,
}

/// Settings shared by every point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub relay: RelayConfig,
    pub trials_per_combo: usize,
    /// Trial seeds; the same at every fraction.
    pub base_seed: u64,
    /// Seed of the subset permutation.
    pub selection_seed: u64,
    pub prior: PriorChoice,
    pub decoder: DecoderKind,
}

/// One point per fraction: amend, then decode every combo of the full
/// population against the amended model.
pub fn sweep_fraction(
    model: &DecodingModel,
    combos: &[ErrorCombo],
    fractions: &[f64],
    cfg: &SweepConfig,
) -> Result<Vec<SweepPoint>, AmendError> {
    fractions
        .iter()
        .map(|&f| {
            let amended = amend_model(model, combos, f, cfg.prior, cfg.selection_seed)?;
            let m = amended.to_model()?;
            let recs = run_trials(
                &m,
                combos,
                &cfg.relay,
                cfg.trials_per_combo,
                cfg.base_seed,
                cfg.decoder,
            )?;
            Ok(SweepPoint {
                fraction: f,
                decoder: cfg.decoder,
                n_added: amended.added.len(),
                mean_iterations: mean_iterations(&recs),
                logical_error_prob: logical_error_rate(&recs),
                n_trials: recs.len(),
            })
        })
        .collect()
}
