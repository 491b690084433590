//! Belief-propagation decoders over a [`DecodingModel`].
//!
//! [`MinSumDecoder`] runs normalized min-sum on the Tanner graph with an
//! optional per-variable memory term. [`RelayDecoder`] chains such runs
//! into relay legs, each warm-started from the previous leg's posteriors
//! with freshly drawn memory strengths. [`osd0`] is the order-0 ordered
//! statistics post-processor.

pub mod gauss;
mod minsum;
mod osd;
mod relay;
mod tanner;

use alloc::vec::Vec;

use thiserror::Error;

use crate::gf2::{BitVec, Gf2Error};
use crate::model::DecodingModel;

pub use minsum::{bp_min_sum, prior_llr, MinSumDecoder, LLR_CLAMP};
pub use osd::{bp_osd_decode, osd0};
pub use relay::{relay_decode, RelayConfig, RelayDecoder};
pub use tanner::TannerGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("{what} has length {actual}, expected {expected}")]
    Dimension {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("invalid decoder configuration: {0}")]
    Config(&'static str),
    #[error("syndrome is not in the column space of the check matrix")]
    Inconsistent,
}

impl From<Gf2Error> for DecodeError {
    fn from(e: Gf2Error) -> Self {
        match e {
            Gf2Error::LengthMismatch { expected, actual } => DecodeError::Dimension {
                what: "vector",
                expected,
                actual,
            },
            _ => DecodeError::Config("malformed matrix input"),
        }
    }
}

/// Hard decisions of every fault after every recorded iteration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IterationTrace {
    /// One hard-decision vector (length `n_faults`) per iteration.
    pub iterations: Vec<BitVec>,
    /// Iteration index at which each relay leg starts.
    pub leg_starts: Vec<usize>,
}

impl IterationTrace {
    pub fn n_iterations(&self) -> usize {
        self.iterations.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub estimate: BitVec,
    /// `H·estimate == syndrome`.
    pub converged: bool,
    /// BP sweeps executed, across all legs.
    pub iterations: usize,
    pub legs: usize,
    /// `L·estimate`.
    pub observables: BitVec,
    pub trace: Option<IterationTrace>,
}

/// Observable flips of the residual `e_true + estimate`; all-zero means the
/// correction is logically equivalent to the true error.
pub fn logical_flip(
    model: &DecodingModel,
    e_true: &BitVec,
    estimate: &BitVec,
) -> Result<BitVec, DecodeError> {
    let n = model.n_faults();
    for (what, v) in [("true error", e_true), ("estimate", estimate)] {
        if v.len() != n {
            return Err(DecodeError::Dimension {
                what,
                expected: n,
                actual: v.len(),
            });
        }
    }
    let mut residual = e_true.clone();
    residual.xor_assign(estimate)?;
    Ok(model.l().mat_vec_mod2(&residual)?)
}

fn check_syndrome(model: &DecodingModel, syndrome: &BitVec) -> Result<(), DecodeError> {
    if syndrome.len() != model.n_checks() {
        return Err(DecodeError::Dimension {
            what: "syndrome",
            expected: model.n_checks(),
            actual: syndrome.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::SparseBitMatrix;
    use alloc::vec;

    #[test]
    fn logical_flip_of_residual() {
        let h = SparseBitMatrix::from_columns(2, vec![vec![0], vec![0, 1], vec![1]]).unwrap();
        let l = SparseBitMatrix::from_columns(1, vec![vec![0], vec![], vec![]]).unwrap();
        let m = DecodingModel::new(h, vec![0.01; 3], l, 1).unwrap();
        let e = BitVec::from_ones(3, &[0]).unwrap();
        assert!(logical_flip(&m, &e, &e).unwrap().is_zero());
        // differ by column 1, which has no observable action
        let est = BitVec::from_ones(3, &[0, 1]).unwrap();
        assert!(logical_flip(&m, &e, &est).unwrap().is_zero());
        let est = BitVec::zeros(3);
        assert!(!logical_flip(&m, &e, &est).unwrap().is_zero());
        assert!(logical_flip(&m, &e, &BitVec::zeros(2)).is_err());
    }
}
