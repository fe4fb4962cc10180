use thiserror::Error;

/// Errors raised by problem ingestion, graph construction, enumeration and
/// the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("probabilities sum to {sum}, expected 1 (tolerance 1e-9)")]
    Normalization { sum: f64 },

    #[error("function table is missing the triple ({x}, {y}, {z})")]
    PartialFunction { x: String, y: String, z: String },

    #[error("role error: {0}")]
    Role(String),

    #[error("size error: {what} has {size} elements, limit is {limit}")]
    Size {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("f~ is not single-valued at ({v}, {other}, {z}): the membership is not an independent-set family")]
    InconsistentFTilde { v: usize, other: String, z: String },

    #[error("membership violation: {0}")]
    MembershipViolation(String),

    #[error("mask error: {0}")]
    Mask(String),

    #[error("budget exceeded: {what} needs more than {budget}")]
    BudgetExceeded { what: String, budget: usize },

    #[error("solver hit {iterations} iterations without converging (best value {best})")]
    NonConvergence { iterations: usize, best: f64 },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("equivalence violation: {0}")]
    EquivalenceViolation(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Size { .. } | Error::BudgetExceeded { .. } | Error::NonConvergence { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
