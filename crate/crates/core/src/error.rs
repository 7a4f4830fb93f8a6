//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph must be connected")]
    Disconnected,

    #[error("{what} is {got}, exceeding the limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// The graph turned out to contain an induced path on `witness.len()`
    /// vertices; surfaced lazily by the separator and propagated upward.
    #[error("graph contains an induced path on {} vertices: {witness:?}", witness.len())]
    NotPtFree { witness: Vec<usize> },

    /// An induced broom certificate: `path` starting at the high-degree end,
    /// `leaves` the pendant independent set attached to `path[0]`.
    #[error("graph contains an induced broom B_{{{d},{t}}}: path {path:?}, leaves {leaves:?}")]
    NotBroomFree {
        d: usize,
        t: usize,
        path: Vec<usize>,
        leaves: Vec<usize>,
    },

    #[error("vertex weight arithmetic overflowed")]
    WeightOverflow,

    #[error("sampling budget exhausted: {0}")]
    Sampling(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
