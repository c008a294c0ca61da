use thiserror::Error;

use crate::instance::ValidationReport;
use crate::treedecomp::TdReport;

pub type Result<T> = std::result::Result<T, NkError>;

#[derive(Debug, Error)]
pub enum NkError {
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("integer overflow while summing {0}")]
    Overflow(&'static str),

    #[error("instance has {n} vertices, brute force is limited to {guard}")]
    TooLarge { n: usize, guard: usize },

    #[error("pareto lists disagree on cap or profit mode")]
    ModeMismatch,

    #[error("{0} requires a directed instance")]
    RequiresDirected(&'static str),

    #[error("{0} requires an undirected instance")]
    RequiresUndirected(&'static str),

    #[error("{0} requires unit weights and profits")]
    NonUniform(&'static str),

    #[error("{0} does not support this variant")]
    UnsupportedVariant(&'static str),

    #[error("instance contains self-loops; normalize it first")]
    SelfLoops,

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(TdReport),

    #[error("decomposition width {0} exceeds the supported maximum of 62")]
    WidthTooLarge(usize),

    #[error("join children disagree on their bag")]
    BagMismatch,

    #[error("color budget b = {0} is outside the supported range")]
    BadBudget(usize),

    #[error("exhaustive coloring needs {needed} colorings, limit is {limit}")]
    ExhaustiveBudget { needed: String, limit: u64 },

    #[error("{0}")]
    Generator(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
