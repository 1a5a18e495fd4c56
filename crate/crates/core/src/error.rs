// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: malformed spec, out-of-range parameter, unknown family.
    Usage,
    /// Well-formed input the model cannot answer for (asymmetric pair,
    /// disconnected graph).
    Domain,
    /// A computed state or matrix violated a physical constraint.
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("graph family `{0}` requires a size")]
    MissingSize(String),
    #[error("graph family `{family}` does not accept size {size}")]
    InvalidSize { family: String, size: usize },
    #[error("graph family `{0}` has a fixed size")]
    UnexpectedSize(String),
    #[error("malformed edge-list header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(usize, usize),
    #[error("no vertex pair at {0}")]
    NoSuchClass(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (max deviation {0:e})")]
    NotSymmetric(f64),
    #[error("potential matrix has non-positive eigenvalue {0:e}")]
    NonPositiveEigenvalue(f64),

    #[error("coupling constant must be finite and non-negative, got {0}")]
    InvalidCoupling(f64),
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("pair vertices must differ, got ({0}, {0})")]
    SamePair(usize),
    #[error("pair ({i}, {j}) is not symmetric: {diagnosis}")]
    AsymmetricPair { i: usize, j: usize, diagnosis: String },

    #[error("two-mode state is not symmetric (max deviation {0:e})")]
    AsymmetricState(f64),
    #[error("unphysical state: {0}")]
    Unphysical(String),
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Disconnected(..)
            | Error::DisconnectedGraph
            | Error::AsymmetricPair { .. }
            | Error::AsymmetricState(_) => ErrorKind::Domain,
            Error::NonPositiveEigenvalue(_)
            | Error::Unphysical(_)
            | Error::NonPositiveDelta(_) => ErrorKind::Numeric,
            _ => ErrorKind::Usage,
        }
    }
}
