use pdcolor_core::geom::GeomError;

/// Failure categories, mapped onto distinct process exit codes so batch
/// drivers can tell a bad input from a failed check from an exhausted
/// search budget.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::VerifyFailed(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Parse(format!("{e:?}"))
    }
}
