use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Corpus { path: PathBuf, source: legtors_core::Error },
    #[error(transparent)]
    Core(#[from] legtors_core::Error),
}

impl CliError {
    /// 2 for bad input, 1 for failed computations and verifications.
    pub fn exit_code(&self) -> i32 {
        use legtors_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Corpus { .. } => 2,
            CliError::Core(E::Parse { .. } | E::Domain(_) | E::CapExceeded { .. } | E::NotTwoIntegral(_) | E::DivisionByZero | E::ZeroDivisorFound(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
