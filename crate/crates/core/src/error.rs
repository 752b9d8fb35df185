use thiserror::Error;

/// Everything that can go wrong in the arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus not prime: {0}")]
    NotPrime(u64),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("rational {value} is not {prime}-integral")]
    NotPIntegral { value: String, prime: u64 },

    #[error("coefficient rings differ: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("constant term is not a unit")]
    NonUnitConstantTerm,

    #[error("constant term must be zero")]
    NonzeroConstantTerm,

    #[error("constant term must be one")]
    ConstantTermNotOne,

    #[error("{m}! is not invertible modulo {prime}")]
    FactorialNotInvertible { m: u64, prime: u64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("odd prime required, got {0}")]
    OddPrimeRequired(u64),

    #[error("precision {got} is below the required {required}")]
    InsufficientPrecision { got: usize, required: usize },

    #[error(
        "series has a nonzero coefficient at degree {degree}, which is not a multiple of {modulus}"
    )]
    SupportViolation { degree: usize, modulus: u64 },

    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
