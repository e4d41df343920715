use thiserror::Error;

use crate::graph::EdgeId;

/// Errors produced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexRange { vertex: usize, vertex_count: usize },

    #[error("edge {0:?} is not a live edge of this graph")]
    UnknownEdge(EdgeId),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("{what} exceeds the enumeration cap ({value} > {cap}){hint}")]
    Capacity {
        what: &'static str,
        value: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("missing weight for edge {0:?}")]
    MissingWeight(EdgeId),

    #[error("point lies outside the certified region: |x| = {abs_x} >= R = {radius}")]
    OutOfRegion { abs_x: f64, radius: f64 },

    #[error("truncation order cap reached before the requested accuracy (achieved bound {achieved})")]
    Truncation { achieved: f64 },

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        best: Vec<num_complex::Complex64>,
    },

    #[error("invariant is not 1-multiplicative: {0}")]
    NotOneMultiplicative(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn capacity(what: &'static str, value: usize, cap: usize) -> Self {
        Error::Capacity {
            what,
            value,
            cap,
            hint: "",
        }
    }
}
