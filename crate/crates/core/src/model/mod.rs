//! Decoding models: a check matrix, per-fault priors, an observable matrix
//! and the partition of checks into syndrome-cycle groups.

mod generate;
pub mod text;

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::gf2::{BitVec, Gf2Error, SparseBitMatrix};

pub use generate::{
    bb_css_pair, generate_bb_code_capacity, generate_planted_pairs, generate_random_model,
    BbCheckSide, Monomial, PlantedPairSpec, RandomModelSpec,
};

/// Prior assigned to every fault of a synthetic model.
pub const DEFAULT_PRIOR: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("check and observable matrices disagree on fault count ({h_cols} vs {l_cols})")]
    ObservableColumns { h_cols: usize, l_cols: usize },
    #[error("{priors} priors given for {faults} faults")]
    PriorCount { priors: usize, faults: usize },
    #[error("prior of fault {fault} is {value}, outside (0, 0.5]")]
    PriorRange { fault: usize, value: f64 },
    #[error("{n_rows} checks cannot be split into {groups} equal groups")]
    GroupPartition { n_rows: usize, groups: usize },
    #[error("infeasible generator request: {0}")]
    Infeasible(&'static str),
    #[error("invalid monomial exponent {exponent} for cyclic dimension {dim}")]
    Exponent { exponent: u32, dim: u32 },
    #[error("matrix error: {0}")]
    Matrix(#[from] Gf2Error),
}

/// Which error type a decoding matrix is built to detect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    XErrors,
    ZErrors,
    #[default]
    Generic,
}

/// Descriptive metadata kept alongside a model.
///
/// For the gross-code idle cycle the circuit-level distance is at most 10,
/// so any syndrome of at most `floor((10 - 1) / 2) = 4` faults is expected
/// to be correctable; those two constants describe the instance and are not
/// computed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMeta {
    pub name: String,
    pub basis: Basis,
    pub n_cycles: usize,
}

impl ModelMeta {
    pub fn for_model(name: impl Into<String>, basis: Basis, model: &DecodingModel) -> Self {
        Self {
            name: name.into(),
            basis,
            n_cycles: model.n_groups(),
        }
    }
}

/// Checks x faults decoding problem with priors and logical observables.
///
/// Check groups are contiguous row blocks of equal size: group `g` holds
/// rows `g*group_size .. (g+1)*group_size`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodingModel {
    h: SparseBitMatrix,
    priors: Vec<f64>,
    l: SparseBitMatrix,
    n_groups: usize,
}

impl DecodingModel {
    pub fn new(
        h: SparseBitMatrix,
        priors: Vec<f64>,
        l: SparseBitMatrix,
        n_groups: usize,
    ) -> Result<Self, ModelError> {
        if h.n_cols() != l.n_cols() {
            return Err(ModelError::ObservableColumns {
                h_cols: h.n_cols(),
                l_cols: l.n_cols(),
            });
        }
        if priors.len() != h.n_cols() {
            return Err(ModelError::PriorCount {
                priors: priors.len(),
                faults: h.n_cols(),
            });
        }
        if let Some((fault, &value)) = priors
            .iter()
            .enumerate()
            .find(|(_, &p)| !(p > 0.0 && p <= 0.5))
        {
            return Err(ModelError::PriorRange { fault, value });
        }
        if n_groups == 0 || !h.n_rows().is_multiple_of(n_groups) {
            return Err(ModelError::GroupPartition {
                n_rows: h.n_rows(),
                groups: n_groups,
            });
        }
        Ok(Self {
            h,
            priors,
            l,
            n_groups,
        })
    }

    /// Model with uniform priors, no observables and a single group.
    pub fn from_checks(h: SparseBitMatrix, prior: f64) -> Result<Self, ModelError> {
        let n = h.n_cols();
        Self::new(h, alloc::vec![prior; n], SparseBitMatrix::zeros(0, n), 1)
    }

    #[inline]
    pub fn h(&self) -> &SparseBitMatrix {
        &self.h
    }

    #[inline]
    pub fn l(&self) -> &SparseBitMatrix {
        &self.l
    }

    #[inline]
    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn n_checks(&self) -> usize {
        self.h.n_rows()
    }

    pub fn n_faults(&self) -> usize {
        self.h.n_cols()
    }

    pub fn n_observables(&self) -> usize {
        self.l.n_rows()
    }

    pub fn n_groups(&self) -> usize {
        self.n_groups
    }

    pub fn group_size(&self) -> usize {
        self.h.n_rows() / self.n_groups
    }

    /// Rows belonging to check group `g`.
    pub fn group_rows(&self, g: usize) -> core::ops::Range<usize> {
        let size = self.group_size();
        g * size..(g + 1) * size
    }

    /// Observable flips caused by a fault vector, `L·e mod 2`.
    pub fn observables_of(&self, e: &BitVec) -> Result<BitVec, Gf2Error> {
        self.l.mat_vec_mod2(e)
    }

    /// Appends one fault column with its observable action.
    pub fn push_fault(
        &mut self,
        checks: Vec<usize>,
        observables: Vec<usize>,
        prior: f64,
    ) -> Result<(), ModelError> {
        if !(prior > 0.0 && prior <= 0.5) {
            return Err(ModelError::PriorRange {
                fault: self.n_faults(),
                value: prior,
            });
        }
        // validate both before mutating either
        let mut h = self.h.clone();
        h.push_column(checks)?;
        self.l.push_column(observables)?;
        self.h = h;
        self.priors.push(prior);
        Ok(())
    }
}
