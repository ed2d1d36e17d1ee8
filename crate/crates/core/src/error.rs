use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("interior block is singular: interior vertex {vertex} lies in a component without boundary nodes")]
    InteriorSingular { vertex: usize },
    #[error("graph is disconnected: vertices {a} and {b} lie in different components")]
    Disconnected { a: usize, b: usize },
    #[error("{what} exceeds cap: {size} > {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("move {mv} does not apply at site {site}")]
    BadSite { mv: &'static str, site: String },
    #[error("graph carries no embedding")]
    NotEmbedded,
    #[error("embedding is not planar: {0}")]
    NotPlanar(String),
    #[error("not a Kalmanson metric in the given order: {0}")]
    NotKalmanson(String),
    #[error("not an electrical resistance matrix: {0}")]
    NotElectrical(String),
    #[error("not a valid response matrix: {0}")]
    InvalidResponse(String),
    #[error("all Plücker coordinates vanish")]
    AllZero,
    #[error("degenerate column structure: {0}")]
    Degenerate(String),
    #[error("strand permutation is not a fixed-point-free involution: {0}")]
    NotInvolution(String),
    #[error("face 2-colouring failed: {0}")]
    ColoringFailure(String),
    #[error("boundary-degenerate arrangement: {0}")]
    BoundaryDegenerate(String),
    #[error("triangle elimination did not terminate within {cap} steps")]
    NotTerminated { cap: usize },
    #[error("tree system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("tree edge {edge} would need non-positive resistance {value}")]
    NonPositiveWeight { edge: usize, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by an enumeration or size cap.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}
