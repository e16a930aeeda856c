use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is disconnected: node {node} is unreachable from node 0")]
    Disconnected { node: usize },
    #[error("graph is not bipartite; odd cycle {witness:?}")]
    NotBipartite { witness: Vec<usize> },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("type of node {node} is not a rational in [0, 1]")]
    InvalidType { node: usize },
    #[error("guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: &'static str, limit: u64 },
    #[error("instance is already a symmetric model")]
    AlreadySymmetric,
    #[error("weight {weight} on {{{u}, {v}}} is out of range")]
    WeightOutOfRange { u: usize, v: usize, weight: i64 },
    #[error("threshold {threshold} of node {node} is outside the admissible range")]
    ValidityViolated { node: usize, threshold: i64 },
    #[error("limit cycle of length {period} found from {witness}")]
    LongCycle { period: usize, witness: String },
    #[error("counting identity violated: {detail}")]
    IdentityViolated { detail: String },
    #[error("variable x{var} does not occur in the formula")]
    VariableMissing { var: usize },
    #[error("invalid formula: {detail}")]
    InvalidFormula { detail: String },
    #[error("fixed-point count {fixed_points} is inconsistent with {vars} variables")]
    InconsistentCount { fixed_points: u64, vars: usize },
    #[error("parameters outside the range covered by the closed form")]
    OutOfFormulaRange,
    #[error("search aborted before completion")]
    Timeout,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}
