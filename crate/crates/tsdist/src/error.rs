use thiserror::Error;

/// Errors produced by series construction, distance evaluation, and the
/// evaluation harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("time series must contain at least one observation")]
    EmptySeries,

    #[error("NaN observation at position {position}")]
    NanObservation { position: usize },

    #[error("lockstep length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("indeterminate difference at positions ({i}, {j}): both operands are infinite with the same sign")]
    IndeterminateDifference { i: usize, j: usize },

    #[error("window size {window} must be an odd integer of at least 3")]
    WindowTooSmall { window: usize },

    #[error("window exceeds series: window {window}, series length {len}")]
    WindowExceedsSeries { window: usize, len: usize },

    #[error("warping band {band} infeasible for length difference {len_diff}")]
    InfeasibleBand { band: usize, len_diff: usize },

    #[error("cannot scale a negative distance ({value})")]
    NegativeDistance { value: f64 },

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("dataset has a single class; at least two are required")]
    SingleClass,

    #[error("contamination fraction must lie in (0, 1), got {fraction}")]
    InvalidFraction { fraction: f64 },

    #[error("contamination plan needs at least one position")]
    EmptyContamination,

    #[error("contaminated position {position} out of range for series of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("imprecision bound must be positive, got {eps_max}")]
    InvalidImprecision { eps_max: f64 },

    #[error("series must be finite for this operation")]
    NonFiniteSeries,

    #[error("rank matrix requires at least {required} {what}, got {got}")]
    RankMatrixTooSmall {
        what: &'static str,
        required: usize,
        got: usize,
    },

    #[error("non-finite error rate in row {row}, column {column}")]
    NonFiniteErrorRate { row: usize, column: usize },

    #[error("critical-distance table covers 2 <= k <= 10, got k = {k}")]
    UnsupportedMethodCount { k: usize },

    #[error("line {line}: expected {expected} fields, got {got}")]
    NonuniformLength {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: invalid numeric field {token:?}")]
    InvalidField { line: usize, token: String },

    #[error("line {line}: NaN or missing value is not supported")]
    MissingValue { line: usize },

    #[error("file contains no instances")]
    EmptyFile,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
