//! Seeded decoding trials on known errors and the statistics of their
//! iteration counts.

mod stats;
mod trace;

use alloc::vec::Vec;

use thiserror::Error;

use crate::decoder::{bp_osd_decode, logical_flip, DecodeError, RelayConfig, RelayDecoder};
use crate::gf2::BitVec;
use crate::lowweight::{extend_weight5, ErrorCombo, LowWeightError};
use crate::model::DecodingModel;
use crate::seed::trial_seed;

pub use stats::{
    fit_exponential_rate, fit_exponential_samples, iteration_histogram, mean_iterations,
    stratified_histograms, survival_curve, survival_curve_binned, ExponentialFit, Histogram,
    SurvivalCurve,
};
pub use trace::{export_trace, TraceMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("no records")]
    Empty,
    #[error("every record is censored; no rate estimate")]
    AllCensored,
    #[error("total observed time is zero")]
    ZeroExposure,
    #[error("bin width must be at least 1")]
    BinWidth,
    #[error("decode result carries no trace")]
    NoTrace,
    #[error("sample and censoring lists differ in length")]
    LengthMismatch,
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    LowWeight(#[from] LowWeightError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecoderKind {
    Relay,
    /// Plain BP up to the configured iteration cap, then OSD-0.
    BpOsd,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Relay => "relay",
            DecoderKind::BpOsd => "bp_osd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrialRecord {
    pub combo_id: usize,
    pub trial: usize,
    pub trial_seed: u64,
    pub iterations: usize,
    pub converged: bool,
    /// The final estimate misses the syndrome or flips an observable.
    pub logical_error: bool,
    pub decoder: DecoderKind,
}

/// Runs decoding trials against one model, reusing decoder state.
#[derive(Debug, Clone)]
pub struct TrialRunner<'m> {
    model: &'m DecodingModel,
    relay: RelayDecoder<'m>,
    kind: DecoderKind,
    base_seed: u64,
}

impl<'m> TrialRunner<'m> {
    pub fn new(
        model: &'m DecodingModel,
        cfg: &RelayConfig,
        kind: DecoderKind,
        base_seed: u64,
    ) -> Result<Self, DynError> {
        Ok(Self {
            model,
            relay: RelayDecoder::new(model, cfg.clone())?,
            kind,
            base_seed,
        })
    }

    pub fn model(&self) -> &'m DecodingModel {
        self.model
    }

    /// One trial decoding the syndrome of the fault set `faults`.
    pub fn run(
        &mut self,
        combo_id: usize,
        faults: &[usize],
        trial: usize,
    ) -> Result<TrialRecord, DynError> {
        let model = self.model;
        let mut e_true = BitVec::zeros(model.n_faults());
        for &j in faults {
            e_true.flip(j);
        }
        let syndrome = model.h().mat_vec_mod2(&e_true).map_err(DecodeError::from)?;
        let seed = trial_seed(self.base_seed, combo_id as u64, trial as u64);
        let result = match self.kind {
            DecoderKind::Relay => {
                self.relay.set_seed(seed);
                self.relay.decode(&syndrome)?
            }
            DecoderKind::BpOsd => {
                let cfg = self.relay.config();
                bp_osd_decode(
                    model,
                    &syndrome,
                    cfg.global_iteration_cap,
                    cfg.min_sum_scale,
                )?
            }
        };
        let reproduced = model
            .h()
            .mat_vec_mod2(&result.estimate)
            .map_err(DecodeError::from)?;
        let flipped = !logical_flip(model, &e_true, &result.estimate)?.is_zero();
        Ok(TrialRecord {
            combo_id,
            trial,
            trial_seed: seed,
            iterations: result.iterations,
            converged: result.converged,
            logical_error: reproduced != syndrome || flipped,
            decoder: self.kind,
        })
    }
}

/// `trials_per_combo` decodes of every combo, `combo_id` being the index in
/// `combos`. Records come out ordered by combo, then trial.
pub fn run_trials(
    model: &DecodingModel,
    combos: &[ErrorCombo],
    cfg: &RelayConfig,
    trials_per_combo: usize,
    base_seed: u64,
    kind: DecoderKind,
) -> Result<Vec<TrialRecord>, DynError> {
    let mut runner = TrialRunner::new(model, cfg, kind, base_seed)?;
    let mut out = Vec::with_capacity(combos.len() * trials_per_combo);
    for (id, combo) in combos.iter().enumerate() {
        for t in 0..trials_per_combo {
            out.push(runner.run(id, &combo.fault_ids, t)?);
        }
    }
    Ok(out)
}

/// Fraction of records with a logical error; 0 for no records.
pub fn logical_error_rate(records: &[TrialRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| r.logical_error).count() as f64 / records.len() as f64
}

/// Mean iterations of a weight-four error and of each of its weight-five
/// extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight5Spread {
    pub base_mean: f64,
    /// `(added column, mean iterations)` in column order.
    pub extensions: Vec<(usize, f64)>,
}

impl Weight5Spread {
    /// Counts of extension means in `n_bins` bins of `bin_width`, the last
    /// bin absorbing everything beyond.
    pub fn binned(&self, bin_width: f64, n_bins: usize) -> Vec<usize> {
        let mut counts = alloc::vec![0usize; n_bins];
        if n_bins == 0 {
            return counts;
        }
        for &(_, m) in &self.extensions {
            let b = libm::floor(m / bin_width) as usize;
            counts[b.min(n_bins - 1)] += 1;
        }
        counts
    }
}

/// Trials on `combo` (trial combo id 0) and on up to `limit` weight-five
/// extensions (ids 1, 2, ...).
pub fn weight5_spread(
    model: &DecodingModel,
    combo: &ErrorCombo,
    cfg: &RelayConfig,
    trials: usize,
    base_seed: u64,
    limit: usize,
) -> Result<Weight5Spread, DynError> {
    let ext = extend_weight5(model, combo, limit)?;
    let mut runner = TrialRunner::new(model, cfg, DecoderKind::Relay, base_seed)?;
    let mut mean_of = |id: usize, faults: &[usize]| -> Result<f64, DynError> {
        let recs = (0..trials)
            .map(|t| runner.run(id, faults, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(mean_iterations(&recs))
    };
    let base_mean = mean_of(0, &combo.fault_ids)?;
    let mut extensions = Vec::with_capacity(ext.len());
    for (k, e) in ext.iter().enumerate() {
        let added = e
            .fault_ids
            .iter()
            .copied()
            .find(|j| !combo.fault_ids.contains(j))
            .unwrap_or_default();
        extensions.push((added, mean_of(k + 1, &e.fault_ids)?));
    }
    Ok(Weight5Spread {
        base_mean,
        extensions,
    })
}

#[cfg(test)]
mod tests;
