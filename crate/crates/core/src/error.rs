use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: operands live over different rings")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("matrix is singular over the coefficient field")]
    SingularMatrix,
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("operation requires a proper ideal, got the unit ideal")]
    UnitIdeal,
    #[error("generating set is not minimal: {given} generators, minimal count {minimal}")]
    NotMinimal { given: usize, minimal: usize },
    #[error("input is not a monomial ideal")]
    NotMonomial,
    #[error("matrix is not skew-symmetric of even size")]
    NotSkewSymmetric,
    #[error("element does not lie in the ideal: {0}")]
    NotInIdeal(String),
    #[error("inconsistent action module: {0}")]
    InconsistentAction(String),
    #[error("quotient ring is not zero-dimensional")]
    PositiveDimension,
    #[error("resolution truncated at length {available}, index {requested} requested")]
    TruncationTooShort { requested: usize, available: usize },
    #[error("requirement not met: {0}")]
    Requirement(String),
    #[error("retry budget of {0} attempts exhausted")]
    RetriesExhausted(usize),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("scenario file{}: {message}", line_suffix(*line))]
    Scenario { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("timeout")]
    Timeout,
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}

fn line_suffix(line: usize) -> String {
    if line == 0 { String::new() } else { format!(" line {line}") }
}
