use thiserror::Error;

/// Crate-wide error type.
///
/// Struct fields hold 0-based positions; rendered messages show them
/// 1-based, matching the file formats and the CLI.
#[derive(Debug, Error)]
pub enum PcError {
    #[error("matrix must be square: row {} has {found} entries, expected {expected}", row + 1)]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("matrix dimension must be at least 2, got {n}")]
    DimensionTooSmall { n: usize },

    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("declared dimension n = {declared} does not match {found} matrix rows")]
    DimensionMismatch { declared: usize, found: usize },

    #[error("non-positive entry {value} at ({}, {})", row + 1, col + 1)]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error("non-finite entry at ({}, {})", row + 1, col + 1)]
    NonFiniteEntry { row: usize, col: usize },

    #[error("unparseable number {token:?} at ({}, {})", row + 1, col + 1)]
    InvalidNumber {
        row: usize,
        col: usize,
        token: String,
    },

    #[error("triad values must be positive, got ({x}, {y}, {z})")]
    NonPositiveTriad { x: f64, y: f64, z: f64 },

    #[error("weight {value} at index {index} is not positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("weight vector must have at least {min} entries, got {len}")]
    WeightVectorTooShort { min: usize, len: usize },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    EigenDidNotConverge { iterations: usize, residual: f64 },

    #[error("invalid configuration: {message}")]
    InvalidConfig { message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PcError>;
