use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("deformation parameter must be a finite positive number, got {0}")]
    InvalidQ(f64),

    #[error("spectral parameter is inexact; exact classification needs rational Re λ and Im λ in units of π/h")]
    InexactSpectral,

    #[error("imaginary spectral offsets in units of π/h are undefined at q = 1")]
    ImaginaryAtClassicalLimit,

    #[error("unsupported rank so'_q({r},{s}): both r and s must exceed 2")]
    UnsupportedRank { r: usize, s: usize },

    #[error("so'_q({0}) needs rank n >= 3")]
    RankTooSmall(usize),

    #[error("half-integer top label is only allowed for so'_q(3), got n = {n}")]
    HalfIntegerTop { n: usize },

    #[error("negative label {0} where a nonnegative one is required")]
    NegativeLabel(String),

    #[error("epsilon must be 0 or 1, got {0}")]
    InvalidEpsilon(u8),

    #[error("pattern {0} is not part of the basis")]
    PatternNotFound(String),

    #[error("negative radicand {value} in {context}")]
    NegativeRadicand { context: String, value: f64 },

    #[error("the top-generator coefficient R is defined for n >= 4; use the so'_q(3) formulas for n = 3")]
    So3PathRequired,

    #[error("primed basis undefined: factor {factor} vanishes")]
    PrimedBasisUndefined { factor: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("representations differ in {0}")]
    IncompatibleRepresentations(String),

    #[error(
        "integer λ = {lambda} for r = {r}, s = {s}, ε = {epsilon} is reducible but its decomposition is not covered by the closed-form case list"
    )]
    UnclassifiedReducibleCase {
        r: usize,
        s: usize,
        epsilon: u8,
        lambda: String,
    },

    #[error("malformed dump: {0}")]
    Dump(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
