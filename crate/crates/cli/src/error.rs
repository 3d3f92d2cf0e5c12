use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

/// Anything that maps to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed rational {token:?}: {reason}")]
    BadRational { token: String, reason: String },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("invalid polytope specification {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Polytope(#[from] polysep::Error),
}
