use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("operation `{op}` is not supported for group {group}")]
    UnsupportedGroup { op: &'static str, group: String },
    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },
    #[error("invalid arity {0}: need m >= 2")]
    InvalidArity(usize),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("unsupported cochain degree {0}")]
    InvalidDegree(usize),
    #[error("tether segments of strands {i} and {j} come within {distance:.3e}")]
    DegenerateTether { i: usize, j: usize, distance: f64 },
    #[error("generic position failure: {0}")]
    GenericPositionFailure(String),
    #[error("braid is not pure: {0}")]
    ImpureBraid(String),
    #[error("surface {0} is not supported by this operation")]
    UnsupportedSurface(String),
    #[error(
        "epsilon {epsilon} is infeasible for the layout; feasible range is [{lower}, {upper}]"
    )]
    InfeasibleEpsilon {
        epsilon: f64,
        lower: f64,
        upper: f64,
    },
    #[error("invalid generator `{0}`")]
    InvalidGenerator(String),
    #[error("configuration is not epsilon-good; no symbolic prediction")]
    BadPointNoPrediction,
    #[error("need at least {min} samples, got {got}")]
    InsufficientSamples { got: usize, min: usize },
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
