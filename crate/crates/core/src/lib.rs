//! Analysis of low-weight fault combinations that stall belief-propagation
//! decoding on circuit-level decoding matrices.
//!
//! The crate is `no_std` and needs only `alloc`. File IO, CSV export and
//! the command-line runner live in the companion `syndromelab` crate.
//!
//! * [`gf2`]: sparse binary matrices and the syndrome-set metrics `w`,
//!   `n_u`, `n_c`.
//! * [`model`]: decoding models, their text format, and generators.
//! * [`decoder`]: min-sum BP with memory, Relay-BP, OSD-0.
//! * [`lowweight`]: shared-column statistics and weight-four construction.
//! * [`dynlab`]: seeded decoding trials and iteration statistics.
//! * [`amend`]: appending composite columns to a decoding model.

#![no_std]

extern crate alloc;

pub mod amend;
pub mod decoder;
pub mod dynlab;
pub mod gf2;
pub mod lowweight;
pub mod model;
pub mod seed;

pub use decoder::{DecodeError, DecodeResult, RelayConfig};
pub use gf2::{BitVec, ComboMetrics, Gf2Error, SparseBitMatrix, Syndrome};
pub use model::{Basis, DecodingModel, ModelError, ModelMeta};
