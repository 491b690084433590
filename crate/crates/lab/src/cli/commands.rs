use std::io;
use std::path::Path;

use rayon::prelude::*;
use syndromelab_core::amend::{column_pair_sources, SweepConfig};
use syndromelab_core::dynlab::{
    export_trace, fit_exponential_rate, iteration_histogram, mean_iterations,
    stratified_histograms, survival_curve, weight5_spread, DecoderKind,
};
use syndromelab_core::lowweight::{
    combo_features, combo_structure, decomposition_stats, filter_hard_errors, max_shared_pairs,
    shared_column_counts, shared_count_frequency, CancelKind, ErrorCombo,
};
use syndromelab_core::{BitVec, DecodingModel};

use crate::config::{parse_decoder, Population, RunConfig};
use crate::error::{LabError, LabResult};
use crate::io::{file_sha256, load_model, read_combos, ModelFileError};
use crate::output::{flag, join, CsvOut};
use crate::parallel;

fn file_error(e: ModelFileError) -> LabError {
    match &e {
        ModelFileError::Io { source, .. } if source.kind() == io::ErrorKind::NotFound => {
            LabError::usage(e.to_string())
        }
        ModelFileError::Io { .. } => LabError::internal(e),
        _ => LabError::data(e),
    }
}

struct Loaded {
    model: DecodingModel,
    inputs: Vec<String>,
}

fn load(cfg: &RunConfig) -> LabResult<Loaded> {
    let path = cfg.model_path()?;
    let model = load_model(path).map_err(file_error)?;
    let hash = file_sha256(path).map_err(file_error)?;
    Ok(Loaded {
        model,
        inputs: vec![hash],
    })
}

fn scope_rows(cfg: &RunConfig, model: &DecodingModel) -> LabResult<Vec<usize>> {
    if cfg.scope.all_rows {
        return Ok((0..model.n_checks()).collect());
    }
    let mut rows = Vec::new();
    for &g in &cfg.scope.groups {
        if g >= model.n_groups() {
            return Err(LabError::data(anyhow::anyhow!(
                "check group {g} out of range; the model has {} groups",
                model.n_groups()
            )));
        }
        rows.extend(model.group_rows(g));
    }
    Ok(rows)
}

fn internal(e: impl Into<anyhow::Error>) -> LabError {
    LabError::internal(e)
}

/// The enumerated population, or the one read from `combos` when given.
fn population(
    cfg: &RunConfig,
    loaded: &mut Loaded,
    which: Population,
    combos: Option<&Path>,
) -> LabResult<Vec<ErrorCombo>> {
    let model = &loaded.model;
    if let Some(path) = combos {
        let filtered_only = which == Population::Filtered;
        let list = read_combos(path, model, filtered_only).map_err(file_error)?;
        loaded.inputs.push(file_sha256(path).map_err(file_error)?);
        return Ok(list);
    }
    let rows = scope_rows(cfg, model)?;
    let pairs = max_shared_pairs(model, &rows);
    let (all, _) = parallel::enumerate_all(model, &pairs).map_err(LabError::data)?;
    Ok(match which {
        Population::All => all,
        Population::Filtered => filter_hard_errors(&all, &cfg.filter.spec()),
    })
}

pub fn pairs(cfg: &RunConfig) -> LabResult<()> {
    let loaded = load(cfg)?;
    let model = &loaded.model;
    let rows = scope_rows(cfg, model)?;
    let stats = shared_column_counts(model, &rows);
    let hash = cfg.hash("pairs", &loaded.inputs);
    let out = cfg.out_dir();

    let mut w =
        CsvOut::create(&out, "pairs.csv", &hash, &["row", "col", "n_s"]).map_err(internal)?;
    for (a, b, n) in stats.pairs() {
        w.row([a.to_string(), b.to_string(), n.to_string()])
            .map_err(internal)?;
    }
    w.finish().map_err(internal)?;

    let mut f = CsvOut::create(&out, "ns_frequency.csv", &hash, &["check", "n_s", "count"])
        .map_err(internal)?;
    for &c in stats.checks() {
        if let Some(hist) = shared_count_frequency(&stats, c) {
            for (n, &count) in hist.iter().enumerate() {
                f.row([c.to_string(), n.to_string(), count.to_string()])
                    .map_err(internal)?;
            }
        }
    }
    f.finish().map_err(internal)?;

    let maximal = stats.pairs_with(syndromelab_core::lowweight::MAX_SHARED);
    println!(
        "checks {} pairs {} max_n_s {} maximal_pairs {}",
        stats.checks().len(),
        stats.pairs().count(),
        stats.max_count(),
        maximal.len()
    );
    Ok(())
}

fn kind_name(k: CancelKind) -> &'static str {
    match k {
        CancelKind::WithinPair => "within",
        CancelKind::Cross => "cross",
        CancelKind::Multiple => "multiple",
    }
}

pub fn enumerate(cfg: &RunConfig) -> LabResult<()> {
    let loaded = load(cfg)?;
    let model = &loaded.model;
    let rows = scope_rows(cfg, model)?;
    let pairs = max_shared_pairs(model, &rows);
    let (all, per_anchor) = parallel::enumerate_all(model, &pairs).map_err(LabError::data)?;
    let spec = cfg.filter.spec();
    let hard = filter_hard_errors(&all, &spec);
    let hash = cfg.hash("enumerate", &loaded.inputs);
    let out = cfg.out_dir();

    let mut w = CsvOut::create(
        &out,
        "combos.csv",
        &hash,
        &[
            "combo_id",
            "fault_ids",
            "w",
            "n_u",
            "n_c",
            "decompositions",
            "check_pairs",
            "pair_nc",
            "filtered",
        ],
    )
    .map_err(internal)?;
    let mut hard_iter = hard.iter().peekable();
    for (id, c) in all.iter().enumerate() {
        let is_hard = match hard_iter.peek() {
            Some(h) if h.fault_ids == c.fault_ids => {
                hard_iter.next();
                true
            }
            _ => false,
        };
        let (check_pairs, pair_nc) = match c.decompositions.first() {
            Some(d) => (
                format!(
                    "{} {} {} {}",
                    d.check_pairs[0].a, d.check_pairs[0].b, d.check_pairs[1].a, d.check_pairs[1].b
                ),
                join(&d.pair_nc),
            ),
            None => (String::new(), String::new()),
        };
        w.row([
            id.to_string(),
            join(&c.fault_ids),
            c.metrics.w.to_string(),
            c.metrics.n_u.to_string(),
            c.metrics.n_c.to_string(),
            c.decompositions.len().to_string(),
            check_pairs,
            pair_nc,
            flag(is_hard).to_string(),
        ])
        .map_err(internal)?;
    }
    w.finish().map_err(internal)?;

    // n_c histogram: constructions with multiplicity, distinct errors, filtered errors
    let mut constructed = vec![0usize; 11];
    for e in &per_anchor {
        if constructed.len() < e.nc_histogram.len() {
            constructed.resize(e.nc_histogram.len(), 0);
        }
        for (n, &k) in e.nc_histogram.iter().enumerate() {
            constructed[n] += k;
        }
    }
    let mut distinct = vec![0usize; constructed.len()];
    for c in &all {
        distinct[c.metrics.n_c] += 1;
    }
    let mut filtered = vec![0usize; constructed.len()];
    for c in &hard {
        filtered[c.metrics.n_c] += 1;
    }
    let mut d = CsvOut::create(
        &out,
        "nc_distribution.csv",
        &hash,
        &["n_c", "constructed", "distinct", "filtered"],
    )
    .map_err(internal)?;
    for n in 0..constructed.len() {
        d.row([
            n.to_string(),
            constructed[n].to_string(),
            distinct[n].to_string(),
            filtered[n].to_string(),
        ])
        .map_err(internal)?;
    }
    d.finish().map_err(internal)?;

    let mut a = CsvOut::create(
        &out,
        "anchors.csv",
        &hash,
        &["check_a", "check_b", "constructed", "collapsed", "distinct"],
    )
    .map_err(internal)?;
    for (p, e) in pairs.iter().zip(&per_anchor) {
        a.row([
            p.a.to_string(),
            p.b.to_string(),
            e.constructed.to_string(),
            e.collapsed.to_string(),
            e.combos.len().to_string(),
        ])
        .map_err(internal)?;
    }
    a.finish().map_err(internal)?;

    let mut s = CsvOut::create(
        &out,
        "structure.csv",
        &hash,
        &["combo_id", "columns", "check", "incidence", "kind"],
    )
    .map_err(internal)?;
    for (id, c) in all.iter().enumerate() {
        if hard
            .binary_search_by(|h| h.fault_ids.cmp(&c.fault_ids))
            .is_err()
        {
            continue;
        }
        let t = combo_structure(model, c);
        for &(check, mask, kind) in &t.rows {
            let incidence: String = (0..t.columns.len())
                .map(|k| if mask >> k & 1 == 1 { '1' } else { '0' })
                .collect();
            s.row([
                id.to_string(),
                join(&t.columns),
                check.to_string(),
                incidence,
                kind_name(kind).to_string(),
            ])
            .map_err(internal)?;
        }
    }
    s.finish().map_err(internal)?;

    let total: usize = per_anchor.iter().map(|e| e.constructed).sum();
    let stats = decomposition_stats(&hard);
    println!(
        "maximal_pairs {} constructed {} distinct {} filtered {} column_pairs {} decompositions {}",
        pairs.len(),
        total,
        all.len(),
        hard.len(),
        stats.column_pairs,
        stats.decompositions
    );
    Ok(())
}

pub fn dynamics(cfg: &RunConfig) -> LabResult<()> {
    let seed = cfg.seed()?;
    let relay = cfg.relay.relay_config()?;
    let kind = parse_decoder(&cfg.dynamics.decoder)?;
    if cfg.dynamics.bin_width == 0 {
        return Err(LabError::usage("bin width must be at least 1"));
    }
    let mut loaded = load(cfg)?;
    let combos = population(
        cfg,
        &mut loaded,
        cfg.dynamics.population,
        cfg.dynamics.combos.as_deref(),
    )?;
    let model = &loaded.model;
    let records = parallel::run_trials(model, &combos, &relay, cfg.dynamics.trials, seed, kind)
        .map_err(LabError::data)?;
    let hash = cfg.hash("dynamics", &loaded.inputs);
    let out = cfg.out_dir();

    let mut t = CsvOut::create(
        &out,
        "trials.csv",
        &hash,
        &[
            "combo_id",
            "trial",
            "trial_seed",
            "iterations",
            "converged",
            "logical_error",
            "decoder",
        ],
    )
    .map_err(internal)?;
    for r in &records {
        t.row([
            r.combo_id.to_string(),
            r.trial.to_string(),
            r.trial_seed.to_string(),
            r.iterations.to_string(),
            flag(r.converged).to_string(),
            flag(r.logical_error).to_string(),
            r.decoder.name().to_string(),
        ])
        .map_err(internal)?;
    }
    t.finish().map_err(internal)?;

    let hist = iteration_histogram(&records, cfg.dynamics.bin_width).map_err(internal)?;
    let mut h = CsvOut::create(
        &out,
        "histogram.csv",
        &hash,
        &["bin_lo", "bin_hi", "count", "density"],
    )
    .map_err(internal)?;
    for (k, (&c, d)) in hist.counts.iter().zip(hist.density()).enumerate() {
        let (lo, hi) = hist.bin_range(k);
        h.row([lo.to_string(), hi.to_string(), c.to_string(), d.to_string()])
            .map_err(internal)?;
    }
    h.finish().map_err(internal)?;

    let by_w = stratified_histograms(&records, cfg.dynamics.bin_width, |r| {
        combos[r.combo_id].metrics.w
    })
    .map_err(internal)?;
    let mut hw = CsvOut::create(
        &out,
        "histogram_by_w.csv",
        &hash,
        &["w", "bin_lo", "bin_hi", "count", "density"],
    )
    .map_err(internal)?;
    for (w, hist) in &by_w {
        for (k, (&c, d)) in hist.counts.iter().zip(hist.density()).enumerate() {
            let (lo, hi) = hist.bin_range(k);
            hw.row([
                w.to_string(),
                lo.to_string(),
                hi.to_string(),
                c.to_string(),
                d.to_string(),
            ])
            .map_err(internal)?;
        }
    }
    hw.finish().map_err(internal)?;

    let mut s =
        CsvOut::create(&out, "survival.csv", &hash, &["n", "survival"]).map_err(internal)?;
    if !records.is_empty() {
        let curve = survival_curve(&records).map_err(internal)?;
        for (n, v) in curve.log_points() {
            s.row([n.to_string(), v.to_string()]).map_err(internal)?;
        }
    }
    s.finish().map_err(internal)?;

    let mut f = CsvOut::create(
        &out,
        "fit.csv",
        &hash,
        &["rate", "stderr", "events", "censored"],
    )
    .map_err(internal)?;
    match fit_exponential_rate(&records, relay.global_iteration_cap) {
        Ok(fit) => f
            .row([
                fit.rate.to_string(),
                fit.stderr.to_string(),
                fit.events.to_string(),
                fit.censored.to_string(),
            ])
            .map_err(internal)?,
        Err(e) => eprintln!("syndromelab: no rate fit: {e}"),
    }
    f.finish().map_err(internal)?;

    let mut ft = CsvOut::create(
        &out,
        "features.csv",
        &hash,
        &[
            "combo_id",
            "fault_ids",
            "w",
            "n_u",
            "n_c",
            "neighborhood",
            "decompositions",
            "mean_iterations",
            "logical_errors",
        ],
    )
    .map_err(internal)?;
    let per = cfg.dynamics.trials;
    for (id, c) in combos.iter().enumerate() {
        let recs = &records[id * per..(id + 1) * per];
        let feat = combo_features(model, c);
        ft.row([
            id.to_string(),
            join(&c.fault_ids),
            feat.metrics.w.to_string(),
            feat.metrics.n_u.to_string(),
            feat.metrics.n_c.to_string(),
            feat.neighborhood.to_string(),
            feat.decompositions.to_string(),
            mean_iterations(recs).to_string(),
            recs.iter().filter(|r| r.logical_error).count().to_string(),
        ])
        .map_err(internal)?;
    }
    ft.finish().map_err(internal)?;

    let n5 = cfg.dynamics.weight5_combos.min(combos.len());
    if n5 > 0 {
        let spreads = combos[..n5]
            .par_iter()
            .enumerate()
            .map(|(id, c)| {
                let s = seed ^ syndromelab_core::seed::mix64(id as u64);
                weight5_spread(
                    model,
                    c,
                    &relay,
                    cfg.dynamics.trials,
                    s,
                    cfg.dynamics.weight5_limit,
                )
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(LabError::data)?;
        let mut w5 = CsvOut::create(
            &out,
            "weight5.csv",
            &hash,
            &[
                "combo_id",
                "added_column",
                "mean_iterations",
                "base_mean_iterations",
            ],
        )
        .map_err(internal)?;
        for (id, s) in spreads.iter().enumerate() {
            for &(col, m) in &s.extensions {
                w5.row([
                    id.to_string(),
                    col.to_string(),
                    m.to_string(),
                    s.base_mean.to_string(),
                ])
                .map_err(internal)?;
            }
        }
        w5.finish().map_err(internal)?;
    }

    let converged = records.iter().filter(|r| r.converged).count();
    println!(
        "combos {} trials {} converged {} mean_iterations {}",
        combos.len(),
        records.len(),
        converged,
        mean_iterations(&records)
    );
    Ok(())
}

pub fn amend(cfg: &RunConfig) -> LabResult<()> {
    let seed = cfg.seed()?;
    let relay = cfg.relay.relay_config()?;
    let decoders = cfg
        .amend
        .decoders
        .iter()
        .map(|d| parse_decoder(d))
        .collect::<LabResult<Vec<DecoderKind>>>()?;
    if let Some(&f) = cfg
        .amend
        .fractions
        .iter()
        .find(|f| !(0.0..=1.0).contains(*f))
    {
        return Err(LabError::usage(format!("fraction {f} outside [0, 1]")));
    }
    if let Some(p) = cfg.amend.prior {
        if !(p > 0.0 && p <= 0.5) {
            return Err(LabError::usage(format!("prior {p} outside (0, 0.5]")));
        }
    }
    let mut loaded = load(cfg)?;
    let combos = population(
        cfg,
        &mut loaded,
        cfg.amend.population,
        cfg.amend.combos.as_deref(),
    )?;
    let model = &loaded.model;
    let sources = if cfg.amend.column_pairs {
        column_pair_sources(model, &combos).map_err(LabError::data)?
    } else {
        combos.clone()
    };
    let hash = cfg.hash("amend", &loaded.inputs);
    let mut w = CsvOut::create(
        &cfg.out_dir(),
        "sweep.csv",
        &hash,
        &[
            "fraction",
            "decoder",
            "mean_iterations",
            "logical_error_prob",
            "n_trials",
        ],
    )
    .map_err(internal)?;
    for &decoder in &decoders {
        let sweep = SweepConfig {
            relay: relay.clone(),
            trials_per_combo: cfg.amend.trials,
            base_seed: seed,
            selection_seed: cfg.amend.selection_seed,
            prior: cfg.amend.prior_choice(),
            decoder,
        };
        let points =
            parallel::sweep_fraction(model, &sources, &combos, &cfg.amend.fractions, &sweep)
                .map_err(LabError::data)?;
        for (p, collisions) in points {
            if collisions > 0 {
                eprintln!(
                    "syndromelab: fraction {}: {collisions} added columns duplicate existing ones",
                    p.fraction
                );
            }
            w.row([
                p.fraction.to_string(),
                p.decoder.name().to_string(),
                p.mean_iterations.to_string(),
                p.logical_error_prob.to_string(),
                p.n_trials.to_string(),
            ])
            .map_err(internal)?;
            println!(
                "fraction {} decoder {} added {} mean_iterations {} logical_error_prob {}",
                p.fraction,
                p.decoder.name(),
                p.n_added,
                p.mean_iterations,
                p.logical_error_prob
            );
        }
    }
    w.finish().map_err(internal)?;
    Ok(())
}

pub fn trace(cfg: &RunConfig) -> LabResult<()> {
    let seed = cfg.seed()?;
    let mut relay = cfg.relay.relay_config()?;
    relay.seed = seed;
    relay.record_trace = true;
    let loaded = load(cfg)?;
    let model = &loaded.model;
    let faults = &cfg.trace.faults;
    if let Some(&j) = faults.iter().find(|&&j| j >= model.n_faults()) {
        return Err(LabError::data(anyhow::anyhow!(
            "fault {j} beyond the model's {} faults",
            model.n_faults()
        )));
    }
    let mut e = BitVec::zeros(model.n_faults());
    for &j in faults {
        e.flip(j);
    }
    let syndrome = model.h().mat_vec_mod2(&e).map_err(LabError::data)?;
    let result = syndromelab_core::decoder::relay_decode(model, &syndrome, &relay)
        .map_err(LabError::data)?;
    let matrix = export_trace(&result, cfg.trace.top_k).map_err(internal)?;
    let hash = cfg.hash("trace", &loaded.inputs);
    let out = cfg.out_dir();

    let mut t =
        CsvOut::create(&out, "trace.csv", &hash, &["fault_id", "iter", "bit"]).map_err(internal)?;
    for (row, &j) in matrix.rows.iter().zip(&matrix.fault_ids) {
        for it in 0..matrix.n_iterations {
            t.row([j.to_string(), it.to_string(), flag(row.get(it)).to_string()])
                .map_err(internal)?;
        }
    }
    t.finish().map_err(internal)?;

    let mut l =
        CsvOut::create(&out, "legs.csv", &hash, &["leg", "start_iter"]).map_err(internal)?;
    for (k, &s) in matrix.leg_starts.iter().enumerate() {
        l.row([k.to_string(), s.to_string()]).map_err(internal)?;
    }
    l.finish().map_err(internal)?;

    println!(
        "iterations {} legs {} converged {} rows {}",
        result.iterations,
        result.legs,
        result.converged,
        matrix.fault_ids.len()
    );
    Ok(())
}
