use thiserror::Error;

/// Errors raised by the collective-spin and entanglement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number of atoms must be at least 1")]
    NoAtoms,

    #[error("invalid quantum numbers: 2j = {two_j}, 2m = {two_m}")]
    QuantumNumber { two_j: u32, two_m: i32 },

    #[error("sector mismatch: 2j = {left} vs 2j = {right}")]
    SectorMismatch { left: u32, right: u32 },

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("amplitude vector has length {got}, sector dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mean spin magnitude {magnitude:e} is too small to define a rotated frame")]
    DegenerateFrame { magnitude: f64 },

    #[error("field parameter must be finite and nonnegative, got {0}")]
    InvalidFieldParameter(f64),

    #[error("product-space oracle supports at most {max} atoms, got {n_atoms}")]
    TooManyAtoms { n_atoms: u32, max: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
