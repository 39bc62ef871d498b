use std::path::PathBuf;

use clude_core::{Error as CoreError, LoadError};
use thiserror::Error;

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {reason}")]
    Malformed { path: PathBuf, reason: String },
}

impl HarnessError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        HarnessError::Usage(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 usage/config, 2 runtime/evaluation, 3 I/O (including unreadable or
    /// invalid transform and result files).
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => 1,
            HarnessError::Core(CoreError::Config(_)) => 1,
            HarnessError::Core(CoreError::Load(_)) => 3,
            HarnessError::Core(_) => 2,
            HarnessError::Io { .. } | HarnessError::Malformed { .. } => 3,
        }
    }
}

impl From<LoadError> for HarnessError {
    fn from(e: LoadError) -> Self {
        HarnessError::Core(CoreError::Load(e))
    }
}
