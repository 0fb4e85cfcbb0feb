use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("a graph of order {requested} exceeds the 64-vertex capacity")]
    Capacity { requested: usize },

    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("{what} exceeds the supported bound ({value} > {limit})")]
    Bound {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid family specification: {0}")]
    InvalidFamily(String),

    #[error("graph is not bicyclic (order {order}, size {size}, connected: {connected})")]
    NotBicyclic {
        order: usize,
        size: usize,
        connected: bool,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graphs are not comparable: {0}")]
    Incomparable(String),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("root finder did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
