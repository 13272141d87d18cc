use std::path::PathBuf;

use deltalens_core::ValidationReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Malformed JSON, or a field that does not fit the format.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    /// A construction refused its input.
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: deltalens_core::Error,
    },
    /// An entry parsed but fails its validator.
    #[error("{entry} is invalid:\n{report}")]
    Invalid {
        entry: String,
        report: ValidationReport,
    },
}

impl CliError {
    pub fn core(context: impl Into<String>) -> impl FnOnce(deltalens_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Core { context, source }
    }

    /// 1 for law failures, 2 for anything wrong with the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
