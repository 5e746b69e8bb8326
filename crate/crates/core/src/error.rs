use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field degree {0} is outside the supported range 2..=16")]
    FieldDegree(u32),
    #[error("polynomial {poly:#x} is not primitive of degree {s}")]
    NotPrimitive { s: u32, poly: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("leading monomial of the zero pair is undefined")]
    ZeroPair,
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
