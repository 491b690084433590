use alloc::vec;
use alloc::vec::Vec;

use super::{check_syndrome, DecodeError, DecodeResult, IterationTrace, TannerGraph};
use crate::gf2::BitVec;
use crate::model::DecodingModel;

/// Magnitude bound on every message and posterior. Degree-one checks send
/// this value in place of an infinite message.
pub const LLR_CLAMP: f64 = 1.0e6;

/// `ln((1 - p) / p)` per fault.
pub fn prior_llr(model: &DecodingModel) -> Vec<f64> {
    model
        .priors()
        .iter()
        .map(|&p| libm::log((1.0 - p) / p))
        .collect()
}

#[inline]
fn clamp(x: f64) -> f64 {
    x.clamp(-LLR_CLAMP, LLR_CLAMP)
}

/// Normalized min-sum decoder with per-variable memory.
///
/// In every sweep the channel value of variable `j` is
/// `(1 - g_j) * llr0_j + g_j * post_j`, where `post_j` is the posterior at
/// the end of the previous sweep (or the supplied initial posterior). With
/// all `g_j = 0` this is plain min-sum. Negative strengths are allowed.
#[derive(Debug, Clone)]
pub struct MinSumDecoder<'m> {
    model: &'m DecodingModel,
    graph: TannerGraph,
    llr0: Vec<f64>,
    c2v: Vec<f64>,
    v2c: Vec<f64>,
    channel: Vec<f64>,
    posterior: Vec<f64>,
    hard: BitVec,
}

impl<'m> MinSumDecoder<'m> {
    pub fn new(model: &'m DecodingModel) -> Self {
        let graph = TannerGraph::new(model.h());
        let n = model.n_faults();
        let e = graph.n_edges();
        Self {
            model,
            graph,
            llr0: prior_llr(model),
            c2v: vec![0.0; e],
            v2c: vec![0.0; e],
            channel: vec![0.0; n],
            posterior: vec![0.0; n],
            hard: BitVec::zeros(n),
        }
    }

    pub fn model(&self) -> &'m DecodingModel {
        self.model
    }

    pub fn prior_llr(&self) -> &[f64] {
        &self.llr0
    }

    /// Posteriors after the last sweep.
    pub fn posteriors(&self) -> &[f64] {
        &self.posterior
    }

    /// Hard decision after the last sweep.
    pub fn hard_decision(&self) -> &BitVec {
        &self.hard
    }

    /// Runs up to `n_iters` sweeps, stopping at the first sweep whose hard
    /// decision reproduces `syndrome`. Returns `(converged, sweeps_run)`.
    /// Check-to-variable messages start from zero; posteriors start from
    /// `initial` or the prior LLRs. Every sweep's hard decision is pushed
    /// onto `trace` when given.
    pub fn run(
        &mut self,
        syndrome: &BitVec,
        n_iters: usize,
        memory: &[f64],
        initial: Option<&[f64]>,
        scale: f64,
        mut trace: Option<&mut IterationTrace>,
    ) -> Result<(bool, usize), DecodeError> {
        check_syndrome(self.model, syndrome)?;
        let n = self.model.n_faults();
        if memory.len() != n {
            return Err(DecodeError::Dimension {
                what: "memory strengths",
                expected: n,
                actual: memory.len(),
            });
        }
        match initial {
            Some(init) if init.len() != n => {
                return Err(DecodeError::Dimension {
                    what: "initial posteriors",
                    expected: n,
                    actual: init.len(),
                })
            }
            Some(init) => self.posterior.copy_from_slice(init),
            None => self.posterior.copy_from_slice(&self.llr0),
        }
        if !(scale > 0.0 && scale <= 1.0) {
            return Err(DecodeError::Config("min-sum scale must lie in (0, 1]"));
        }
        self.c2v.iter_mut().for_each(|m| *m = 0.0);
        self.update_hard();

        for it in 0..n_iters {
            self.sweep(syndrome, memory, scale);
            self.update_hard();
            if let Some(t) = trace.as_deref_mut() {
                t.iterations.push(self.hard.clone());
            }
            if self.satisfies(syndrome) {
                return Ok((true, it + 1));
            }
        }
        Ok((false, n_iters))
    }

    fn sweep(&mut self, syndrome: &BitVec, memory: &[f64], scale: f64) {
        let g = &self.graph;
        for j in 0..g.n_vars() {
            let gamma = memory[j];
            let ch = clamp((1.0 - gamma) * self.llr0[j] + gamma * self.posterior[j]);
            self.channel[j] = ch;
            let edges = g.var_edges(j);
            let total: f64 = edges.iter().map(|&e| self.c2v[e]).sum();
            for &e in edges {
                self.v2c[e] = clamp(ch + total - self.c2v[e]);
            }
        }
        for i in 0..g.n_checks() {
            let edges = g.check_edges(i);
            let mut negative = syndrome.get(i);
            let mut min1 = LLR_CLAMP;
            let mut min2 = LLR_CLAMP;
            let mut argmin = usize::MAX;
            for e in edges.clone() {
                let m = self.v2c[e];
                if m < 0.0 {
                    negative = !negative;
                }
                let a = m.abs();
                if a < min1 {
                    min2 = min1;
                    min1 = a;
                    argmin = e;
                } else if a < min2 {
                    min2 = a;
                }
            }
            for e in edges {
                let mag = if e == argmin { min2 } else { min1 };
                let own_negative = self.v2c[e] < 0.0;
                let sign = if negative != own_negative { -1.0 } else { 1.0 };
                self.c2v[e] = sign * scale * mag;
            }
        }
        for j in 0..g.n_vars() {
            let sum: f64 = g.var_edges(j).iter().map(|&e| self.c2v[e]).sum();
            self.posterior[j] = clamp(self.channel[j] + sum);
        }
    }

    fn update_hard(&mut self) {
        self.hard.clear();
        for (j, &p) in self.posterior.iter().enumerate() {
            if p < 0.0 {
                self.hard.set(j, true);
            }
        }
    }

    fn satisfies(&self, syndrome: &BitVec) -> bool {
        (0..self.graph.n_checks()).all(|i| {
            let parity = self
                .graph
                .check_edges(i)
                .filter(|&e| self.hard.get(self.graph.edge_var(e)))
                .count()
                % 2
                == 1;
            parity == syndrome.get(i)
        })
    }
}

/// One bounded min-sum run. A zero syndrome returns the all-zero estimate
/// after 0 sweeps. Soft outputs are the final posterior LLRs.
pub fn bp_min_sum(
    model: &DecodingModel,
    syndrome: &BitVec,
    n_iters: usize,
    memory_strengths: &[f64],
    initial_posteriors: Option<&[f64]>,
    scale: f64,
) -> Result<(DecodeResult, Vec<f64>), DecodeError> {
    check_syndrome(model, syndrome)?;
    let mut dec = MinSumDecoder::new(model);
    if syndrome.is_zero() {
        // still validate the remaining arguments
        dec.run(
            syndrome,
            0,
            memory_strengths,
            initial_posteriors,
            scale,
            None,
        )?;
        let n = model.n_faults();
        return Ok((
            DecodeResult {
                estimate: BitVec::zeros(n),
                converged: true,
                iterations: 0,
                legs: 0,
                observables: BitVec::zeros(model.n_observables()),
                trace: None,
            },
            dec.prior_llr().to_vec(),
        ));
    }
    let (converged, iterations) = dec.run(
        syndrome,
        n_iters,
        memory_strengths,
        initial_posteriors,
        scale,
        None,
    )?;
    let estimate = dec.hard_decision().clone();
    let observables = model.observables_of(&estimate)?;
    Ok((
        DecodeResult {
            estimate,
            converged,
            iterations,
            legs: 1,
            observables,
            trace: None,
        },
        dec.posteriors().to_vec(),
    ))
}
