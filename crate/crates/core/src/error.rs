use thiserror::Error;

/// Errors raised by the inference routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in row {row}")]
    NonFinite { row: usize },

    #[error("duplicate design point t={t} (rows {first} and {second})")]
    DuplicateDesignPoint { t: f64, first: usize, second: usize },

    #[error("dataset has no observed responses")]
    NoObservedPoints,

    #[error("point index {index} is out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("point {index} has no observed response")]
    MissingResponse { index: usize },

    #[error("point {index} has no other observed point to condition on")]
    NoNeighbors { index: usize },

    #[error("probability {0} is outside (0, 1)")]
    InvalidProbability(f64),

    #[error("infeasible mixing weights: {0}")]
    InfeasibleWeights(String),

    #[error("conditional plausibility requires a zero bound, got B={0}")]
    NonZeroBound(f64),

    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),

    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
