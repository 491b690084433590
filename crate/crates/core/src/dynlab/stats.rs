use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{DynError, TrialRecord};

/// Mean iteration count; 0 for no records.
pub fn mean_iterations(records: &[TrialRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().map(|r| r.iterations as f64).sum::<f64>() / records.len() as f64
}

/// Counts in bins `[k * bin_width, (k + 1) * bin_width)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub bin_width: usize,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn bin_range(&self, k: usize) -> (usize, usize) {
        (k * self.bin_width, (k + 1) * self.bin_width)
    }

    /// Counts divided by `total * bin_width`, so the bars integrate to 1.
    pub fn density(&self) -> Vec<f64> {
        let norm = (self.total() * self.bin_width) as f64;
        self.counts
            .iter()
            .map(|&c| if norm > 0.0 { c as f64 / norm } else { 0.0 })
            .collect()
    }

    fn from_values(values: impl Iterator<Item = usize>, bin_width: usize) -> Self {
        let mut counts = Vec::new();
        for v in values {
            let k = v / bin_width;
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        }
        Self { bin_width, counts }
    }
}

pub fn iteration_histogram(
    records: &[TrialRecord],
    bin_width: usize,
) -> Result<Histogram, DynError> {
    if bin_width == 0 {
        return Err(DynError::BinWidth);
    }
    Ok(Histogram::from_values(
        records.iter().map(|r| r.iterations),
        bin_width,
    ))
}

/// One histogram per key, e.g. per syndrome weight of the decoded error.
pub fn stratified_histograms<K: Ord>(
    records: &[TrialRecord],
    bin_width: usize,
    mut key: impl FnMut(&TrialRecord) -> K,
) -> Result<BTreeMap<K, Histogram>, DynError> {
    if bin_width == 0 {
        return Err(DynError::BinWidth);
    }
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for r in records {
        groups.entry(key(r)).or_default().push(r.iterations);
    }
    Ok(groups
        .into_iter()
        .map(|(k, v)| (k, Histogram::from_values(v.into_iter(), bin_width)))
        .collect())
}

/// Points `(n, 1 - P(N <= n))` ordered by `n`; the survival values are
/// non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    pub points: Vec<(usize, f64)>,
}

impl SurvivalCurve {
    /// Points with positive survival, for log-scale plots.
    pub fn log_points(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.points.iter().copied().filter(|&(_, s)| s > 0.0)
    }
}

/// Empirical survival evaluated at every distinct iteration count, led by
/// `(0, 1)` when no record stopped at 0.
pub fn survival_curve(records: &[TrialRecord]) -> Result<SurvivalCurve, DynError> {
    if records.is_empty() {
        return Err(DynError::Empty);
    }
    let mut its: Vec<usize> = records.iter().map(|r| r.iterations).collect();
    its.sort_unstable();
    let total = its.len() as f64;
    let mut points = Vec::new();
    if its[0] > 0 {
        points.push((0, 1.0));
    }
    let mut i = 0;
    while i < its.len() {
        let n = its[i];
        while i < its.len() && its[i] == n {
            i += 1;
        }
        points.push((n, (its.len() - i) as f64 / total));
    }
    Ok(SurvivalCurve { points })
}

/// Survival evaluated at the upper edge of each bin, from the binned
/// cumulative distribution.
pub fn survival_curve_binned(
    records: &[TrialRecord],
    bin_width: usize,
) -> Result<SurvivalCurve, DynError> {
    if records.is_empty() {
        return Err(DynError::Empty);
    }
    let hist = iteration_histogram(records, bin_width)?;
    let total = hist.total() as f64;
    let mut below = 0usize;
    let points = hist
        .counts
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            below += c;
            (hist.bin_range(k).1, (hist.total() - below) as f64 / total)
        })
        .collect();
    Ok(SurvivalCurve { points })
}

/// Censored maximum-likelihood rate of an exponential escape time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialFit {
    /// Per iteration.
    pub rate: f64,
    /// From the observed information, `rate / sqrt(events)`.
    pub stderr: f64,
    pub events: usize,
    pub censored: usize,
}

/// Rate fit over iteration counts, treating non-converged records that
/// reached `cap` as right-censored there.
pub fn fit_exponential_rate(
    records: &[TrialRecord],
    cap: usize,
) -> Result<ExponentialFit, DynError> {
    let times: Vec<f64> = records.iter().map(|r| r.iterations as f64).collect();
    let censored: Vec<bool> = records
        .iter()
        .map(|r| !r.converged && r.iterations >= cap)
        .collect();
    fit_exponential_samples(&times, &censored)
}

/// Rate fit over raw times with a censoring flag per sample:
/// `rate = events / sum(times)`.
pub fn fit_exponential_samples(
    times: &[f64],
    censored: &[bool],
) -> Result<ExponentialFit, DynError> {
    if times.len() != censored.len() {
        return Err(DynError::LengthMismatch);
    }
    if times.is_empty() {
        return Err(DynError::Empty);
    }
    let events = censored.iter().filter(|&&c| !c).count();
    if events == 0 {
        return Err(DynError::AllCensored);
    }
    let exposure: f64 = times.iter().sum();
    if !(exposure > 0.0) {
        return Err(DynError::ZeroExposure);
    }
    let rate = events as f64 / exposure;
    Ok(ExponentialFit {
        rate,
        stderr: rate / libm::sqrt(events as f64),
        events,
        censored: times.len() - events,
    })
}
