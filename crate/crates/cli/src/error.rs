use std::path::PathBuf;

use thiserror::Error;

/// Failure modes of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    MissingInput {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    CheckFailed(String),
    #[error(
        "degenerate point N={n_atoms} 2m={two_m} xi={xi}: mean spin {magnitude:e} defines no frame"
    )]
    Degenerate {
        n_atoms: u32,
        two_m: i32,
        xi: f64,
        magnitude: f64,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::CheckFailed(_) | Failure::Io(_) | Failure::Csv(_) => 1,
            Failure::Usage(_) | Failure::MissingInput { .. } => 2,
            Failure::Degenerate { .. } => 3,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}
