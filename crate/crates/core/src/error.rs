use thiserror::Error;

/// Errors raised by state validation, correlation measures and experiment I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is not unit: Tr = {trace}")]
    TraceNotUnit { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown party label `{0}`")]
    UnknownLabel(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("state has rank {rank}, at most 2 is supported")]
    RankTooHigh { rank: usize },

    #[error("state is not pure: Tr rho^2 = {purity}")]
    NotPure { purity: f64 },

    #[error("damping probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("at least two parties are required, got {0}")]
    TooFewParties(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("at p = {p}: {source}")]
    AtPoint { p: f64, source: Box<Error> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// The underlying error with grid-point context removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPoint { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors caused by an invalid state or argument rather than I/O.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self.root(),
            Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::RankTooHigh { .. }
        )
    }

    pub fn is_rank_violation(&self) -> bool {
        matches!(self.root(), Error::RankTooHigh { .. })
    }

    pub fn is_io(&self) -> bool {
        matches!(self.root(), Error::Io(_) | Error::Csv(_) | Error::Json(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
