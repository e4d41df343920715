//! Exact and approximate computation of Ising partition functions on small
//! graphs, their even-subgraph generating functions, Fisher zeros, block
//! paths and block polynomials.

pub mod block_paths;
pub mod block_poly;
pub mod complex;
pub mod error;
pub mod fisher;
pub mod fptas;
pub mod graph;
pub mod limits;
pub mod output;
pub mod partition;
pub mod poly;
pub mod regions;

pub use block_paths::BlockPath;
pub use block_poly::Invariant;
pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeSet, Graph, Vertex};
pub use limits::Limits;
pub use partition::EdgeWeightMap;
pub use poly::IntegerPolynomial;
pub use regions::DiskRegion;
