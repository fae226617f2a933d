use thiserror::Error;

use crate::model::{InstanceViolation, NodeId, SolutionViolation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    InvalidInput,
    SizeLimit,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<InstanceViolation>),

    #[error("solution is infeasible: {}", join(.0))]
    InfeasibleSolution(Vec<SolutionViolation>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("id {0} not in matrix")]
    UnknownId(NodeId),

    #[error("vertex {0} appears more than once in the subset")]
    DuplicateVertex(NodeId),

    #[error("route is empty")]
    EmptyRoute,

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("vertex subset does not contain the depot")]
    MissingDepot,

    #[error("customer {id} has demand {demand} which exceeds max_wt {max_wt}")]
    DemandExceedsMaxWt { id: NodeId, demand: f64, max_wt: f64 },

    #[error("perfect matching needs an even vertex set, got {0} vertices")]
    OddMatchingSet(usize),

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error(
        "routing cluster {cluster} ({members} customers) failed: {source}; tighten eps or max_wt to shrink clusters"
    )]
    ClusterRouting {
        cluster: usize,
        members: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("walk {0}")]
    InvalidWalk(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::SizeLimit { .. } => ErrorCategory::SizeLimit,
            Error::ClusterRouting { source, .. } => source.category(),
            Error::Internal(_) => ErrorCategory::Internal,
            _ => ErrorCategory::InvalidInput,
        }
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
