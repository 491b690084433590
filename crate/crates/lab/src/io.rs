//! Model files and combo lists on disk.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use syndromelab_core::lowweight::ErrorCombo;
use syndromelab_core::model::text::{parse_text, to_text, FormatError};
use syndromelab_core::DecodingModel;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
    #[error("{path}: {message}")]
    Combos { path: PathBuf, message: String },
}

impl ModelFileError {
    /// Whether the file was read but its contents were rejected.
    pub fn is_data(&self) -> bool {
        match self {
            ModelFileError::Io { source, .. } => source.kind() == io::ErrorKind::NotFound,
            _ => true,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ModelFileError + '_ {
    move |source| ModelFileError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_model(path: &Path) -> Result<DecodingModel, ModelFileError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_text(&text).map_err(|source| ModelFileError::Format {
        path: path.to_path_buf(),
        source,
    })
}

pub fn save_model(model: &DecodingModel, path: &Path) -> Result<(), ModelFileError> {
    fs::write(path, to_text(model)).map_err(io_err(path))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_sha256(path: &Path) -> Result<String, ModelFileError> {
    Ok(sha256_hex(&fs::read(path).map_err(io_err(path))?))
}

/// Fault sets from a combos CSV written by `enumerate`: the `fault_ids`
/// column holds space-separated column indices. With `filtered_only`, rows
/// whose `filtered` column is not `1` are skipped. Metrics are recomputed
/// against `model`; decompositions are not restored.
pub fn read_combos(
    path: &Path,
    model: &DecodingModel,
    filtered_only: bool,
) -> Result<Vec<ErrorCombo>, ModelFileError> {
    let bad = |message: String| ModelFileError::Combos {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let ids_col = col("fault_ids").ok_or_else(|| bad("missing fault_ids column".into()))?;
    let filtered_col = col("filtered");
    if filtered_only && filtered_col.is_none() {
        return Err(bad("missing filtered column".into()));
    }
    let mut out = Vec::new();
    for (k, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if filtered_only && filtered_col.and_then(|c| rec.get(c)) != Some("1") {
            continue;
        }
        let ids = rec
            .get(ids_col)
            .unwrap_or("")
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("record {}: {e}", k + 1)))?;
        if let Some(&j) = ids.iter().find(|&&j| j >= model.n_faults()) {
            return Err(bad(format!(
                "record {}: fault {j} beyond the model's {} faults",
                k + 1,
                model.n_faults()
            )));
        }
        let combo = ErrorCombo::from_faults(model.h(), ids)
            .map_err(|e| bad(format!("record {}: {e}", k + 1)))?;
        out.push(combo);
    }
    Ok(out)
}
