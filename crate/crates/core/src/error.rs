use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("edge {edge:?} does not have {r} distinct vertices")]
    MalformedEdge { edge: Vec<Vertex>, r: usize },

    #[error("coloring is not proper for this hypergraph")]
    ImproperColoring,

    #[error("hypergraph is not {0}-partite")]
    NotPartite(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
