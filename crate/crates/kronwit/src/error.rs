use std::path::PathBuf;

use crate::cli::Status;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kronwit_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    /// A self-test or certification run finished with failures.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(e) => match e {
                kronwit_core::Error::ResourceLimit(_) => Status::ResourceLimit,
                kronwit_core::Error::NumericalConsistency(_) => Status::NumericalConsistency,
                kronwit_core::Error::InvalidArgument(_) | kronwit_core::Error::DegenerateInput(_) => Status::InvalidArgument,
            },
            CliError::Failed(_) => Status::NumericalConsistency,
            CliError::Io { .. } | CliError::Json(_) | CliError::Usage(_) => Status::InvalidArgument,
        }
    }

    /// Kind string for the error payload.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Failed(_) => "check-failed",
            CliError::Io { .. } => "io",
            CliError::Json(_) => "malformed-json",
            CliError::Usage(_) => "usage",
        }
    }
}
