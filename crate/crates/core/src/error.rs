use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty vertex set")]
    EmptySet,
    #[error("invalid vertex `{0}`: bit strings are nonempty, over {{0,1}}, and start with 0")]
    InvalidVertex(String),
    #[error("tree is not ancestor-closed: parent of `{0}` is missing")]
    NotAncestorClosed(String),
    #[error("height {requested} is below the tree height {actual}")]
    InvalidHeight { requested: usize, actual: usize },
    #[error("oracle input too large: {0}")]
    OracleTooLarge(String),
    #[error("tree has split number {available}, cannot prune to {requested}")]
    InsufficientSplit { requested: usize, available: usize },
    #[error("dilation factor must be positive, got {0}")]
    InvalidDilation(String),
    #[error("code (k={k}, j={j}) is out of range: need 0 <= j < 2^k")]
    InvalidCode { k: usize, j: String },
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("no verified Lassak rectangle found for generator")]
    ApproximationFailure,
    #[error("no dyadic parallelogram with k <= {max_k} satisfies all constraints")]
    ResolutionExceeded { max_k: usize },
    #[error("generator {index}: {source}")]
    Generator { index: usize, source: Box<Error> },
    #[error("point is not in K1")]
    NotInK1,
    #[error("candidate {0} does not contain the point")]
    InvalidCandidate(usize),
    #[error("invalid sticky map: {0}")]
    InvalidStickyMap(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a broken
    /// internal guarantee.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Generator { source, .. } => source.is_input_error(),
            Error::ApproximationFailure | Error::VerificationFailed(_) | Error::InvalidStickyMap(_) => false,
            _ => true,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
