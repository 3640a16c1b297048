use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("duplicate vertex identifier {0:?}")]
    DuplicateVertex(String),
    #[error("quiver is not connected")]
    DisconnectedQuiver,
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Coxeter transform produced a non-integral vector")]
    NonIntegralResult,
    #[error("quiver is not of Euclidean type ({0})")]
    NotTame(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("{0} is not a base root")]
    NotABaseRoot(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("module class does not match the dimension vector {0}")]
    UnknownClass(String),
    #[error("slope of the zero dimension vector is undefined")]
    ZeroDimVector,
    #[error("dimension vector has a negative entry")]
    NegativeEntry,
    #[error("dimension vector {0} is not supported: {1}")]
    NotSupportedDim(String, String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("mu(delta) is not in the regular case")]
    NotRegularCase,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("representations live over different fields or quivers")]
    FieldMismatch,
    #[error("no generic representation found after {0} attempts")]
    GenericityNotFound(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
