use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {reason}")]
    Config { field: String, reason: String },
    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Model(#[from] rotorlab::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Threads(String),
}

impl CliError {
    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// 0 success, 1 I/O, 2 configuration, 3 numerical resolution.
    pub fn exit_code(&self) -> i32 {
        use rotorlab::Error as E;
        match self {
            Self::Config { .. } | Self::Syntax { .. } | Self::Threads(_) => 2,
            Self::Model(E::InvalidParameter { .. } | E::OutsideIsland { .. } | E::DegenerateBeating) => 2,
            Self::Model(_) => 3,
            Self::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
