use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {u} lists {v} as a neighbor but {v} does not list {u}")]
    AsymmetricRotation { u: usize, v: usize },
    #[error("vertex {v} lists neighbor {u} more than once")]
    DuplicateNeighbor { v: usize, u: usize },
    #[error("vertex {0} is its own neighbor")]
    SelfLoop(usize),
    #[error("vertex id {0} is out of range or absent")]
    InvalidVertex(usize),
    #[error("outer face cycle {0:?} does not match any traced face")]
    UnknownOuterFace(Vec<usize>),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("instance of size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph contains a triangle {0:?}")]
    NotTriangleFree([usize; 3]),
    #[error("no reducible configuration found; diagnostic dump follows\n{0}")]
    TheoremViolation(String),
    #[error("reducible block {0:?} has no coloring from the residual lists")]
    InternalNoColoring(Vec<usize>),
    #[error("4-face {face} has negative charge {charge} but no rich vertex")]
    NoRichVertexOnNegativeFace { face: usize, charge: String },
    #[error("enumeration budget exhausted after {0} colorings")]
    BudgetExceeded(usize),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable one-word code used on the command line and in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AsymmetricRotation { .. } => "asymmetric-rotation",
            Error::DuplicateNeighbor { .. } => "duplicate-neighbor",
            Error::SelfLoop(_) => "self-loop",
            Error::InvalidVertex(_) => "invalid-vertex",
            Error::UnknownOuterFace(_) => "unknown-outer-face",
            Error::PreconditionViolated(_) => "precondition-violated",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::Disconnected => "disconnected",
            Error::NotTriangleFree(_) => "not-triangle-free",
            Error::TheoremViolation(_) => "theorem-violation",
            Error::InternalNoColoring(_) => "internal-no-coloring",
            Error::NoRichVertexOnNegativeFace { .. } => "no-rich-vertex",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::Parse { .. } => "parse-error",
            Error::Io(_) => "io-error",
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
