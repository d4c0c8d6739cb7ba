use thiserror::Error;

/// Everything that can go wrong while building or querying the structures of this crate.
///
/// Variants below `Invariant` signal inputs the caller can fix; `Invariant` and the
/// construction failures after it mean an internal contradiction and carry a diagnostic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("not a quiddity sequence: {0}")]
    NotQuiddity(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("knitting failed: {0}")]
    Knitting(String),

    #[error("mesh closure failed: {0}")]
    MeshClosure(String),

    #[error("propagation incomplete: {0}")]
    Propagation(String),

    #[error("wrap-around inconsistency at {vertex}: mesh gives {expected}, value is {actual}")]
    WrapInconsistency { vertex: String, expected: i64, actual: i64 },

    #[error("exchange partner search found {count} candidates for {vertex}")]
    ExchangePartner { vertex: String, count: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that contradict a proven statement rather than reject user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Knitting(_)
                | Error::MeshClosure(_)
                | Error::Propagation(_)
                | Error::ExchangePartner { .. }
                | Error::Invariant(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
