use thiserror::Error;

use crate::metric::Violation;

/// Errors raised while building or evaluating routing instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },

    #[error("negative distance {value} at ({u}, {v})")]
    NegativeDistance { u: usize, v: usize, value: i64 },

    #[error("duplicate location id `{0}`")]
    DuplicateLocation(String),

    #[error("unknown location `{0}`")]
    UnknownLocation(String),

    #[error("location index {0} is out of range")]
    LocationOutOfRange(usize),

    #[error("duplicate request `{0}`")]
    DuplicateRequest(String),

    #[error("distance matrix is not a metric ({} violation(s), first: {})", .0.len(), .0[0])]
    NotMetric(Vec<Violation>),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("unsupported reduction: {0}")]
    UnsupportedReduction(String),

    #[error("invalid concatenation graph: {0}")]
    InvalidConcatGraph(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("no candidate tree covers all {0} requests")]
    CoverageGap(usize),

    #[error("invalid flow network: {0}")]
    InvalidNetwork(String),

    #[error("flow of value {target} is infeasible (max flow {max_flow})")]
    InfeasibleFlow { target: u64, max_flow: u64 },

    #[error("invalid flow: {0}")]
    InvalidFlow(String),

    #[error("instance too large for exhaustive search: {what} = {value} exceeds {limit}")]
    TooLarge { what: &'static str, value: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
