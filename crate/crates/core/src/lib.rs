//! Exact electrical networks on a disc: responses, resistance metrics,
//! circular split decompositions, Grassmannian certificates and topology
//! reconstruction from resistance data.

pub mod error;
pub mod gen;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod matrices;
pub mod metrics;
pub mod netcore;
pub mod parallel;
pub mod reconstruct;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use matrices::{DistanceMatrix, ResponseMatrix};
pub use metrics::{CircularOrder, Split, WeightedSplitSystem};
pub use netcore::{Edge, WeightedGraph};
pub use scalar::{format_scalar, parse_scalar, Scalar};
