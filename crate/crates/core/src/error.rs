use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: base is {expected}x{expected}, direction {index} is {rows}x{cols}")]
    ShapeMismatch {
        expected: usize,
        index: usize,
        rows: usize,
        cols: usize,
    },

    /// The characteristic polynomial has a factor without rational roots.
    #[error(
        "characteristic polynomial does not split over the rationals; irreducible part: {factor}"
    )]
    IrrationalSpectrum { factor: String },

    #[error("eigenvalue `{0}` is symbolic; a concrete rational value is required")]
    SymbolicEigenvalue(String),

    #[error("partitions have different weights ({left} and {right})")]
    WeightMismatch { left: usize, right: usize },

    #[error("Jordan types have different sizes ({left} and {right})")]
    SizeMismatch { left: usize, right: usize },

    /// The structured star placement did not span a complement of the orbit tangent space.
    #[error("star pattern is not transversal: achieved dimension {achieved} of {required}")]
    PatternNotTransversal { achieved: usize, required: usize },

    #[error("parameter {index} of the template has no assigned value")]
    UnassignedParameter { index: usize },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Jordan type: {0}")]
    InvalidJordanType(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
