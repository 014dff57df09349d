use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Inconsistency` is reserved for situations that contradict a proved
/// statement about these objects; hitting it means either the input was
/// forged outside the public constructors or there is a bug. Everything
/// else is an input problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph size n={0} is out of range (need n >= 3)")]
    InvalidGraphSize(usize),

    #[error("edge {edge} does not exist on the contracted zigzag graph with n={n}")]
    InvalidEdge { edge: String, n: usize },

    #[error("invalid route: {0}")]
    InvalidRoute(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed clique: {0}")]
    MalformedClique(String),

    #[error("malformed grove: {0}")]
    MalformedGrove(String),

    #[error("malformed flow: {0}")]
    MalformedFlow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("consistency fault: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
