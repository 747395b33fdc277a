use springer_core::{CertError, OracleError, SpringerError, WeylError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Springer(#[from] SpringerError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl CliError {
    /// 2 for bad input or configuration, 3 when a computation could not
    /// reach a decision.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Json(_) | CliError::Weyl(_) => 2,
            CliError::Oracle(OracleError::Unstable(_) | OracleError::Precision { .. }) => 3,
            CliError::Cert(CertError::NotInBox(_)) | CliError::Oracle(OracleError::NotInBox(_)) => 2,
            _ => 3,
        }
    }
}
