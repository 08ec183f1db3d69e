use thiserror::Error;

use crate::graph::{Edge, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("vertex {vertex} outside domain [0, {domain})")]
    OutOfDomain { vertex: u32, domain: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0} already present")]
    DuplicateEdge(Edge),
    #[error("edge {0} not present")]
    AbsentEdge(Edge),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(EngineError::Precondition(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(EngineError::Internal(msg.into()))
}
