use thiserror::Error;

/// Errors raised by the library. Each variant names the operation that
/// rejected its input so CLI callers can map them to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("probability {0} is outside [0, 1]")]
    Probability(String),

    #[error("invalid number `{0}`")]
    Number(String),

    #[error("empty vertex subset")]
    EmptySubset,

    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("CRG has {order} vertices; exact solver limit is {limit} (use the iterative solver)")]
    TooLarge { order: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("field: {0}")]
    Field(String),

    #[error("construction integrity check failed: {0}")]
    Integrity(String),

    #[error("graph is not strongly regular with the declared parameters: {0}")]
    NotStronglyRegular(String),

    #[error("{0}")]
    Ineligible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
