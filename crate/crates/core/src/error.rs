use thiserror::Error;

use crate::composition::Composition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("compositions of different degrees ({left} and {right}) are incomparable")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the supported cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("rank {rank} is out of range for compositions of {degree}")]
    RankOutOfRange { degree: usize, rank: u64 },

    #[error("{alpha} does not refine the level {gamma}")]
    NotRefining { alpha: Composition, gamma: Composition },

    #[error("level {finer} is not finer than {coarser}")]
    LevelOrder { finer: Composition, coarser: Composition },

    #[error("polynomials over different variable families: {0} and {1}")]
    FamilyMismatch(String, String),

    #[error("cannot substitute 0 into a negative power of {0}")]
    Pole(String),

    #[error("polynomial is not divisible by the monomial {0}")]
    NotDivisible(String),

    #[error("expected an element in the {expected} basis, found {found}")]
    WrongBasis { expected: String, found: String },

    #[error("operation not supported for the {0} basis")]
    UnsupportedBasis(String),

    #[error("unsupported specialization: {0}")]
    UnsupportedSpecialization(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coefficients do not share a common sign")]
    NotSignUniform,

    #[error("parse error: {0}")]
    Parse(String),
}
