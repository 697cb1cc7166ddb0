use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A decision variable fell outside the unit box.
    #[error("decision variable {index} = {value} lies outside [0, 1]")]
    Domain { index: usize, value: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("exact hypervolume supports 2..=5 objectives, got {0}; use the Monte Carlo estimator")]
    UnsupportedDimension(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: unsupported format_version {found} (expected {expected})")]
    VersionMismatch { line: usize, found: u64, expected: u64 },

    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: invariant violated: {message}")]
    Invariant { line: usize, message: String },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
