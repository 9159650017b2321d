//! Command-line front end support: CSV/JSON export and the reproduction targets.

pub mod export;
pub mod repro;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] abelian_words::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Exit status: 2 for invalid input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use abelian_words::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Capacity { .. } | E::Overflow(_)) => 1,
            CliError::Core(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
