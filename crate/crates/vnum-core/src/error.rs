use thiserror::Error;

/// Errors produced by the monomial algebra and its derived computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("alpha of zero ideal")]
    AlphaOfZeroIdeal,

    #[error("denominator is not contained in numerator")]
    ContainmentViolation,

    #[error("decomposition undefined for the zero or unit ideal")]
    DecompositionUndefined,

    #[error("not an associated prime: {0}")]
    NotAssociatedPrime(String),

    #[error("no witness exists (stale associated-prime set)")]
    NoWitness,

    #[error("Rees map of unit ideal undefined")]
    ReesMapUndefined,

    #[error("Newton polyhedron of the zero ideal is undefined")]
    EmptyNewton,

    #[error("integral closure power of the unit ideal")]
    UnitIdealClosure,

    #[error("exponent arithmetic overflow")]
    ExponentOverflow,

    #[error("prime support must be non-empty")]
    EmptyPrime,

    #[error("variable index {index} out of range for {ambient} variables")]
    VariableOutOfRange { index: usize, ambient: usize },

    #[error("invalid window: require kmax >= W >= 2, got kmax={kmax}, W={w}")]
    InvalidWindow { kmax: usize, w: usize },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
