use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("objective `{function}` returned non-finite value {value} at {position:?}")]
    Evaluation {
        function: String,
        position: Vec<f64>,
        value: f64,
    },

    #[error("individual has not been evaluated")]
    Unevaluated,

    #[error("cluster {0} has no members")]
    EmptyCluster(usize),

    #[error(transparent)]
    Load(#[from] LoadError),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

/// Failures while reading an externally supplied transform data file.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: token {index} ({token:?}) is not a finite real number")]
    Parse {
        path: PathBuf,
        index: usize,
        token: String,
    },

    #[error("{path}: expected {expected} values (shift of {dimension} + {dimension}x{dimension} rotation), found {found}")]
    DimensionMismatch {
        path: PathBuf,
        dimension: usize,
        expected: usize,
        found: usize,
    },

    #[error("{path}: rotation is not orthogonal (max |R*R^T - I| = {deviation:e})")]
    NotOrthogonal { path: PathBuf, deviation: f64 },
}
