use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_syndrome, DecodeError, DecodeResult, IterationTrace, MinSumDecoder};
use crate::gf2::BitVec;
use crate::model::DecodingModel;

/// Relay-BP parameters.
///
/// `max_legs` counts every leg including the warm-up leg, so the defaults
/// (200 legs, 25 sweeps each, 25 warm-up sweeps) give the 5,000-sweep cap.
#[derive(Debug, Clone, PartialEq)]
pub struct RelayConfig {
    pub max_legs: usize,
    pub iters_per_leg: usize,
    /// Length of leg 0, which runs with all memory strengths at zero.
    pub warmup_iters: usize,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub min_sum_scale: f64,
    /// Return the first syndrome-compatible hard decision. When false, all
    /// legs run and the lowest-cost valid decision is kept.
    pub stop_on_first_valid: bool,
    pub global_iteration_cap: usize,
    pub seed: u64,
    pub record_trace: bool,
}

impl Default for RelayConfig {
    fn default() -> Self {
        Self {
            max_legs: 200,
            iters_per_leg: 25,
            warmup_iters: 25,
            gamma_min: -0.24,
            gamma_max: 0.66,
            min_sum_scale: 0.9,
            stop_on_first_valid: true,
            global_iteration_cap: 5_000,
            seed: 0,
            record_trace: false,
        }
    }
}

impl RelayConfig {
    /// 200 legs of 50 sweeps, capped at 10,000 sweeps.
    pub fn long_legs() -> Self {
        Self {
            iters_per_leg: 50,
            warmup_iters: 50,
            global_iteration_cap: 10_000,
            ..Self::default()
        }
    }

    /// A single zero-memory leg: plain min-sum BP.
    pub fn plain_bp(max_iters: usize) -> Self {
        Self {
            max_legs: 1,
            iters_per_leg: max_iters,
            warmup_iters: max_iters,
            gamma_min: 0.0,
            gamma_max: 0.0,
            global_iteration_cap: max_iters,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Largest number of sweeps the legs could run without the global cap.
    pub fn leg_budget(&self) -> usize {
        if self.max_legs == 0 {
            0
        } else {
            self.warmup_iters + (self.max_legs - 1) * self.iters_per_leg
        }
    }

    pub fn validate(&self) -> Result<(), DecodeError> {
        if !(self.gamma_min <= self.gamma_max) {
            return Err(DecodeError::Config("gamma_min must not exceed gamma_max"));
        }
        if !self.gamma_min.is_finite() || !self.gamma_max.is_finite() {
            return Err(DecodeError::Config("memory strengths must be finite"));
        }
        if !(self.min_sum_scale > 0.0 && self.min_sum_scale <= 1.0) {
            return Err(DecodeError::Config("min-sum scale must lie in (0, 1]"));
        }
        if self.global_iteration_cap > self.max_legs * self.iters_per_leg + self.warmup_iters {
            return Err(DecodeError::Config(
                "iteration cap exceeds legs x iterations per leg + warm-up",
            ));
        }
        Ok(())
    }

    /// Memory strengths for leg `leg >= 1`, drawn from a stream indexed by
    /// the leg so each leg's draw is independent of how earlier legs ended.
    pub fn leg_strengths(&self, leg: usize, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(leg as u64);
        if self.gamma_min == self.gamma_max {
            return vec![self.gamma_min; n];
        }
        (0..n)
            .map(|_| rng.gen_range(self.gamma_min..=self.gamma_max))
            .collect()
    }
}

/// Reusable Relay-BP decoder bound to one model.
#[derive(Debug, Clone)]
pub struct RelayDecoder<'m> {
    bp: MinSumDecoder<'m>,
    cfg: RelayConfig,
}

impl<'m> RelayDecoder<'m> {
    pub fn new(model: &'m DecodingModel, cfg: RelayConfig) -> Result<Self, DecodeError> {
        cfg.validate()?;
        Ok(Self {
            bp: MinSumDecoder::new(model),
            cfg,
        })
    }

    pub fn config(&self) -> &RelayConfig {
        &self.cfg
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.cfg.seed = seed;
    }

    pub fn decode(&mut self, syndrome: &BitVec) -> Result<DecodeResult, DecodeError> {
        let model = self.bp.model();
        check_syndrome(model, syndrome)?;
        let n = model.n_faults();
        let mut trace = self.cfg.record_trace.then(IterationTrace::default);
        if syndrome.is_zero() {
            return Ok(DecodeResult {
                estimate: BitVec::zeros(n),
                converged: true,
                iterations: 0,
                legs: 0,
                observables: BitVec::zeros(model.n_observables()),
                trace,
            });
        }

        let cfg = &self.cfg;
        let mut total = 0usize;
        let mut legs = 0usize;
        let mut posteriors: Option<Vec<f64>> = None;
        let mut best: Option<(f64, BitVec)> = None;
        let zeros = vec![0.0; n];
        for leg in 0..cfg.max_legs {
            let budget = if leg == 0 {
                cfg.warmup_iters
            } else {
                cfg.iters_per_leg
            };
            let budget = budget.min(cfg.global_iteration_cap - total);
            if budget == 0 {
                break;
            }
            let strengths = if leg == 0 {
                None
            } else {
                Some(cfg.leg_strengths(leg, n))
            };
            if let Some(t) = trace.as_mut() {
                t.leg_starts.push(total);
            }
            let (ok, used) = self.bp.run(
                syndrome,
                budget,
                strengths.as_deref().unwrap_or(&zeros),
                posteriors.as_deref(),
                cfg.min_sum_scale,
                trace.as_mut(),
            )?;
            total += used;
            legs += 1;
            if ok {
                let est = self.bp.hard_decision().clone();
                if cfg.stop_on_first_valid {
                    best = Some((0.0, est));
                    break;
                }
                let llr0 = self.bp.prior_llr();
                let cost: f64 = est.ones().map(|j| llr0[j]).sum();
                if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                    best = Some((cost, est));
                }
            }
            posteriors = Some(self.bp.posteriors().to_vec());
        }

        let (converged, estimate) = match best {
            Some((_, est)) => (true, est),
            None => (false, self.bp.hard_decision().clone()),
        };
        let observables = model.observables_of(&estimate)?;
        Ok(DecodeResult {
            estimate,
            converged,
            iterations: total,
            legs,
            observables,
            trace,
        })
    }
}

/// Relay-BP decode of one syndrome; a pure function of its arguments.
pub fn relay_decode(
    model: &DecodingModel,
    syndrome: &BitVec,
    cfg: &RelayConfig,
) -> Result<DecodeResult, DecodeError> {
    RelayDecoder::new(model, cfg.clone())?.decode(syndrome)
}
