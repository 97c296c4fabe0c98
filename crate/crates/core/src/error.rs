use thiserror::Error;

/// Every failure the library reports. Variants map one-to-one onto the
/// integer codes exposed over the C ABI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight w = 1 has no arc model (use the tube module)")]
    WeightHasNoArcModel,
    #[error("pair ({0}, {1}) is not an admissible arc for w = {2}")]
    InvalidArc(i64, i64, i64),
    #[error("arcs carry different weights ({0} vs {1})")]
    WeightMismatch(i64, i64),
    #[error("no non-split extension: {0}")]
    NoExtension(String),
    #[error("arc {0} is not in the Ext-hammock of {1}")]
    NotInHammock(String, String),
    #[error("summands are not Hom-orthogonal: {0}")]
    NonOrthogonalInput(String),
    #[error("symbolic closure did not stabilise: {0}")]
    NonConvergence(String),
    #[error("objects belong to different parameter sets: {0}")]
    ParamsMismatch(String),
    #[error("{0} indecomposables exceed the enumeration limit of {1}")]
    TooLarge(usize, usize),
    #[error("model validation failed: {0}")]
    ValidationFailure(String),
    #[error("empty input")]
    EmptyInput,
}

impl Error {
    /// Stable numeric code, shared with the FFI layer.
    pub fn code(&self) -> i32 {
        match self {
            Error::WeightHasNoArcModel => 1,
            Error::InvalidArc(..) => 2,
            Error::WeightMismatch(..) => 3,
            Error::NoExtension(_) => 4,
            Error::NotInHammock(..) => 5,
            Error::NonOrthogonalInput(_) => 6,
            Error::NonConvergence(_) => 7,
            Error::ParamsMismatch(_) => 8,
            Error::TooLarge(..) => 9,
            Error::ValidationFailure(_) => 10,
            Error::EmptyInput => 11,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
