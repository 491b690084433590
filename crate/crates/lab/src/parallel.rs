//! Rayon drivers whose results equal the serial core functions exactly.

use rayon::prelude::*;
use syndromelab_core::amend::{amend_model, AmendError, SweepConfig, SweepPoint};
use syndromelab_core::dynlab::{
    logical_error_rate, mean_iterations, DecoderKind, DynError, TrialRecord, TrialRunner,
};
use syndromelab_core::lowweight::{
    enumerate_weight4_with, merge_combos, CheckPair, Enumeration, ErrorCombo, LowWeightError,
    MAX_SHARED,
};
use syndromelab_core::{DecodingModel, RelayConfig};

/// Per-anchor enumerations, in anchor order.
pub fn enumerate_anchors(
    model: &DecodingModel,
    pairs: &[CheckPair],
) -> Result<Vec<Enumeration>, LowWeightError> {
    let rows = model.h().row_lists();
    pairs
        .par_iter()
        .map(|&anchor| enumerate_weight4_with(model, &rows, anchor, pairs, MAX_SHARED))
        .collect()
}

/// Parallel counterpart of `enumerate_all_weight4`, also returning the
/// per-anchor enumerations.
pub fn enumerate_all(
    model: &DecodingModel,
    pairs: &[CheckPair],
) -> Result<(Vec<ErrorCombo>, Vec<Enumeration>), LowWeightError> {
    let per_anchor = enumerate_anchors(model, pairs)?;
    let combos = merge_combos(per_anchor.iter().map(|e| e.combos.clone()));
    Ok((combos, per_anchor))
}

/// Parallel counterpart of `run_trials`, same record order.
pub fn run_trials(
    model: &DecodingModel,
    combos: &[ErrorCombo],
    cfg: &RelayConfig,
    trials_per_combo: usize,
    base_seed: u64,
    kind: DecoderKind,
) -> Result<Vec<TrialRecord>, DynError> {
    // fail on a bad config before spawning work
    TrialRunner::new(model, cfg, kind, base_seed)?;
    let n = combos.len() * trials_per_combo;
    (0..n)
        .into_par_iter()
        .map_init(
            || TrialRunner::new(model, cfg, kind, base_seed).expect("validated above"),
            |runner, k| {
                let (id, t) = (k / trials_per_combo, k % trials_per_combo);
                runner.run(id, &combos[id].fault_ids, t)
            },
        )
        .collect()
}

/// Parallel counterpart of `sweep_fraction` that adds columns drawn from
/// `sources` while decoding `combos`; with `sources == combos` the points
/// are identical. Each point comes with the number of added columns that
/// duplicate an existing one.
pub fn sweep_fraction(
    model: &DecodingModel,
    sources: &[ErrorCombo],
    combos: &[ErrorCombo],
    fractions: &[f64],
    cfg: &SweepConfig,
) -> Result<Vec<(SweepPoint, usize)>, AmendError> {
    fractions
        .iter()
        .map(|&f| {
            let amended = amend_model(model, sources, f, cfg.prior, cfg.selection_seed)?;
            let collisions = amended.collisions();
            let m = amended.to_model()?;
            let recs = run_trials(
                &m,
                combos,
                &cfg.relay,
                cfg.trials_per_combo,
                cfg.base_seed,
                cfg.decoder,
            )?;
            let point = SweepPoint {
                fraction: f,
                decoder: cfg.decoder,
                n_added: amended.added.len(),
                mean_iterations: mean_iterations(&recs),
                logical_error_prob: logical_error_rate(&recs),
                n_trials: recs.len(),
            };
            Ok((point, collisions))
        })
        .collect()
}
