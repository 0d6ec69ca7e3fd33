use thiserror::Error;

/// Errors raised by the counting, enumeration and decomposition routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {index} out of range for domain of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("set is not invariant under the permutation")]
    NotInvariant,

    #[error("{what} requires a positive argument")]
    ZeroArgument { what: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} cap exceeded: limit {cap}")]
    CapExceeded { what: &'static str, cap: u128 },

    #[error("permutation is not an automorphism of the graph")]
    NotAutomorphism,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("result is not integral: {0}")]
    NonIntegral(String),

    #[error("not a group cycle index: coefficients sum to {0}")]
    NotGroupIndex(String),

    #[error("inconsistent seed: {0}")]
    InconsistentSeed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
