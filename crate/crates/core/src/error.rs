use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    /// A diagram has more rows than the group it is supposed to label.
    #[error("diagram {diagram} has {length} rows, more than the allowed {bound}")]
    TooManyRows {
        diagram: String,
        length: usize,
        bound: usize,
    },

    #[error("diagram {diagram} is not constant on the blocks of composition {composition}")]
    NotBlockCompatible { diagram: String, composition: String },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("incompatible linearization: {0}")]
    Incompatible(String),

    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("invalid finite-field data: {0}")]
    InvalidField(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An enumeration would exceed its configured ceiling.
    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: String,
        limit: usize,
    },

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
