//! File formats, parallel drivers and the command-line runner for
//! `syndromelab-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod output;
pub mod parallel;

pub use error::{LabError, LabResult};
