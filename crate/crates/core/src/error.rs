use thiserror::Error;

use crate::graph::VertexId;
use crate::rewrite::RewriteSystem;

pub type Result<T, E = HkError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HkError {
    #[error("graph is not of type A_n")]
    NotTypeA,
    #[error("graph has unoriented edges, which this operation does not accept")]
    UnorientedEdge,
    #[error("Z_n needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("forest edges contain a cycle")]
    NotForest,
    #[error("bad orientation: {0}")]
    BadOrientation(String),
    #[error("unsupported block: {0}")]
    UnsupportedBlock(String),
    #[error("bad block: {0}")]
    BadBlock(String),
    #[error("vertex {0} is neither a source nor a sink")]
    NotSourceOrSink(VertexId),
    #[error("word is not multiplicity free")]
    NotMultiplicityFree,
    #[error(
        "completion exceeded its limits ({} rules kept); the monoid may be infinite",
        .0.rules().len()
    )]
    LimitExceeded(Box<RewriteSystem>),
    #[error("rewrite system is not complete")]
    NotComplete,
    #[error("more than {cap} elements; the monoid is likely infinite or too large")]
    CapExceeded { cap: usize },
    #[error("oracle certificate failed: {0}")]
    Unstable(String),
    #[error("content of the word spans an oriented cycle")]
    HasCycle,
    #[error("element table is incomplete")]
    TableIncomplete,
    #[error("subgraph is not path complete")]
    NotPathComplete,
    #[error("word content does not cover the cycle")]
    NotFullContent,
    #[error("bad gluing: {0}")]
    BadGluing(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl HkError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        HkError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
