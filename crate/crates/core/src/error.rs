use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("element is not self-adjoint")]
    NotSelfAdjoint,

    #[error("element is not positive")]
    NotPositive,

    #[error("coefficient {value} outside the domain of {function}")]
    Domain { function: String, value: String },

    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),

    #[error("level {requested} is below the element support {support}")]
    LevelTooSmall { requested: usize, support: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("lengths violate the Kraft inequality (sum {numerator}/{denominator} > 1)")]
    KraftViolated { numerator: String, denominator: String },

    #[error("code is not prefix-free")]
    NotPrefixFree,

    #[error("desk-scale guard exceeded: {required_bits:.2} bits of enumeration > limit {limit_bits:.2}")]
    GuardExceeded { required_bits: f64, limit_bits: f64 },

    #[error("no convergence after {iterations} iterations (gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },

    #[error("codebook sampling failed: {0}")]
    Codebook(String),

    #[error("channel is useless; coding experiment refused")]
    UselessChannel,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
