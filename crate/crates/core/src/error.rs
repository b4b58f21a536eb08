use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("multidegree has {got} components, space has {expected} factors")]
    DegreeLength { expected: usize, got: usize },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("point cap exceeded: {count} points requested, cap is {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("empty field list")]
    EmptyFieldList,
    #[error("weights must be positive in every component: {0:?}")]
    NonAmple(Vec<i64>),
    #[error("invalid monad spec: {0}")]
    InvalidSpec(String),
    #[error("nonpositive rank for {bundle}: {rank}")]
    NonpositiveRank { bundle: &'static str, rank: i64 },
    #[error("exterior power {q} out of range 1..={max}")]
    WedgeOutOfRange { q: usize, max: usize },
    #[error("total degree {got} does not match dim X = {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("kernel slope is nonnegative ({0})")]
    NonnegativeSlope(String),
    #[error("coefficient {0} is not an integer that fits in 64 bits")]
    NonIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
