use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("invalid `{field}`: {message}")]
    Validation { field: &'static str, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error(transparent)]
    Core(#[from] stepbias_core::Error),
}

impl LabError {
    pub fn validation(field: &'static str, message: impl Into<String>) -> Self {
        LabError::Validation { field, message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    /// Process exit code: 1 validation, 2 certification, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Parse { .. } | LabError::Validation { .. } => 1,
            LabError::Certification(_) | LabError::Core(_) => 2,
            LabError::Io { .. } | LabError::Csv { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
