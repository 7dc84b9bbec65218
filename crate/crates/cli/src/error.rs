use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures of a run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Write { .. } => 4,
        }
    }
}

impl From<ldt_core::Error> for CliError {
    fn from(e: ldt_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Exit code of a completed check.
pub fn verdict_code(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}
