use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial is not squarefree over the rationals")]
    NotSquarefree,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cycle type {parts:?} does not partition {expected}")]
    BadPartition { parts: Vec<u32>, expected: u32 },

    #[error("unsupported symmetric group degree {0}")]
    UnsupportedDegree(u32),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("local condition at p = {p} exceeds the controllable bound y = {bound:.3} (only p <= c1 log X can be imposed)")]
    ConditionBeyondBound { p: u64, bound: f64 },

    #[error("empty family")]
    EmptyFamily,

    #[error("catalog mixes degrees {0} and {1}")]
    MixedDegrees(usize, usize),

    #[error("only {found} records are unramified at p = {p}; need at least {needed}")]
    TooFewUnramified { p: u64, found: usize, needed: usize },

    #[error("invalid model weights: {0}")]
    InvalidWeights(String),

    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
