use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by the library.
///
/// Violated internal invariants are not represented here; they panic, since they
/// indicate a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor classes live on different surfaces ({left} vs {right})")]
    SurfaceMismatch { left: String, right: String },

    #[error("expected {expected} coordinates for {surface}, got {got}")]
    WrongLength {
        surface: String,
        expected: usize,
        got: usize,
    },

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("`{op}` is not supported on {surface}")]
    Unsupported { op: &'static str, surface: String },

    #[error("parse error in `{input}`: expected {expected}")]
    Parse { input: String, expected: String },

    #[error("{0} is not a root of the form E_i-E_j or L-E_i-E_j-E_m")]
    NotARoot(String),

    #[error("{0} is not a (-1)-curve on this surface")]
    NotNegOneCurve(String),

    #[error("malformed Chern character: {0}")]
    MalformedCharacter(String),

    #[error("rank-zero characters are not supported")]
    ZeroRank,

    #[error("character has Euler characteristic {0}, expected 0")]
    NonzeroChi(BigRational),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("divisor {0} is not nef")]
    NotNef(String),

    #[error("oracle modulus {modulus} rejected: {reason}")]
    Modulus { modulus: u64, reason: String },

    #[error("cannot decide: {0}")]
    Undecidable(String),

    #[error("coefficient {0} is too large for the combinatorial search")]
    Overflow(BigInt),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
