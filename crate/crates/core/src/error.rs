use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported ring for {op}: {ring}")]
    UnsupportedRing { op: &'static str, ring: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidMap(String),
    #[error("empty sequence")]
    EmptySequence,
    #[error("torsion computation did not stabilize below power {0}")]
    NoStabilization(u32),
    #[error("triple is not exact: {0}")]
    NotExact(String),
    #[error("instance does not reach the required levels: {0}")]
    NotStabilized(String),
    #[error("no homotopy inverse found: {0}")]
    NoSolution(String),
    #[error("element {0} is a unit")]
    UnitElement(String),
    #[error("element {0} is not nilpotent")]
    NotNilpotent(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
