use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: key `{key}` expects unit `{expected}`, got `{found}`")]
    UnitMismatch {
        path: String,
        line: usize,
        key: String,
        expected: &'static str,
        found: String,
    },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status for this error: 2 parse, 3 validation, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::UnitMismatch { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<leo_doppler_core::Error> for CliError {
    fn from(e: leo_doppler_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
