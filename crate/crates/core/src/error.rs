use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("polynomial is not integer-valued: binomial coefficient {coefficient} at index {index:?}")]
    NotIntegerValued { index: Vec<u32>, coefficient: BigRational },

    #[error("{what} {value} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("basis columns are linearly dependent (rank {rank} < {columns})")]
    RankDeficientBasis { rank: usize, columns: usize },

    #[error("invalid variable substitution: {0}")]
    InvalidSubstitution(String),

    #[error("polynomial {index} has nonzero constant term {value}")]
    NonzeroConstantTerm { index: usize, value: BigInt },

    #[error("hypothesis fails at b = {witness:?}: no nonzero multiple of v(b) lies in V")]
    HypothesisFailed { witness: Vec<BigInt> },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("saturation fails at b = {witness:?}: v(b) is outside the rational span of V")]
    SaturationFailed { witness: Vec<BigInt> },

    #[error("lattice must have full rank {expected}, got rank {got}")]
    NotFullRank { expected: usize, got: usize },

    #[error("sets are not block ordered at position {index}")]
    NotBlockOrdered { index: usize },

    #[error("index {index} is outside the stored prefix of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid finite set: {0}")]
    InvalidFinSet(String),

    #[error("weights sum ≠ 1 (sum is {sum})")]
    WeightsNotNormalized { sum: BigRational },

    #[error("invalid weight for point {point}: {reason}")]
    InvalidWeight { point: String, reason: String },

    #[error("map {map} is not a bijection: {reason}")]
    NotBijective { map: usize, reason: String },

    #[error("map {map} does not preserve weights at point {point}")]
    NotMeasurePreserving { map: usize, point: String },

    #[error("maps {first} and {second} do not commute at point {point}")]
    NotCommuting { first: usize, second: usize, point: String },

    #[error("unknown point {0}")]
    UnknownPoint(String),

    #[error("sweep of {points} grid points exceeds cap {cap}; reduce the degree or number of variables")]
    SweepCapExceeded { points: u64, cap: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("invalid phase: {0}")]
    InvalidPhase(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn arity(expected: usize, got: usize) -> Self {
        Error::ArityMismatch { expected, got }
    }
}
