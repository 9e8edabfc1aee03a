use thiserror::Error;

/// Errors produced by score ingestion, cost evaluation and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: unknown class label `{label}`")]
    UnknownClass { line: usize, label: String },

    #[error("line {line}: non-finite score `{raw}`")]
    NonFiniteScore { line: usize, raw: String },

    #[error("score set has no {0} trials")]
    EmptyClass(&'static str),

    #[error("empty score list")]
    EmptyInput,

    #[error("attack id `{0}` does not occur among the spoof trials")]
    UnknownAttack(String),

    #[error("invalid cost model: {0}")]
    InvalidCostModel(String),

    /// The default (reference) cost is zero or negative, so normalization is undefined.
    #[error("degenerate cost model: default cost {0} is not positive")]
    DegenerateCost(f64),

    #[error("NIST DCF requires pi_spoof = 0, got {0}")]
    SpoofPriorNotZero(f64),

    #[error("invalid simulator configuration: {0}")]
    InvalidConfig(String),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
