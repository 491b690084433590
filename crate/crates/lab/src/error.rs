use std::fmt;
use std::process::ExitCode;

/// Failure of a command, classified by who has to act on it.
#[derive(Debug)]
pub enum LabError {
    /// Bad flags or configuration.
    Usage(String),
    /// Input files or parameters that fail validation.
    Data(anyhow::Error),
    /// Anything else, including output IO.
    Internal(anyhow::Error),
}

impl LabError {
    pub fn usage(msg: impl Into<String>) -> Self {
        LabError::Usage(msg.into())
    }

    pub fn data(err: impl Into<anyhow::Error>) -> Self {
        LabError::Data(err.into())
    }

    pub fn internal(err: impl Into<anyhow::Error>) -> Self {
        LabError::Internal(err.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Usage(_) => 1,
            LabError::Data(_) => 2,
            LabError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::Usage(m) => write!(f, "usage error: {m}"),
            LabError::Data(e) => write!(f, "data error: {e}"),
            LabError::Internal(e) => write!(f, "internal error: {e}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<LabError> for ExitCode {
    fn from(e: LabError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

pub type LabResult<T> = Result<T, LabError>;
