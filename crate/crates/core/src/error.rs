use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point {0} is outside the carrier")]
    PointOutsideCarrier(String),
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error("distance table must be square with one row per point (got {rows} rows for {points} points)")]
    NotSquare { rows: usize, points: usize },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("infinite carrier needs a grid sample")]
    SampleRequired,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("base is not a quasi-metric: {0}")]
    BaseNotQuasiMetric(String),
    #[error("index mismatch: {0} vs {1}")]
    IndexMismatch(String, String),
    #[error("base element {0} is not a subset of the ground set")]
    BaseElementNotSubset(String),
    #[error("generalized topology is not strong (ground set is not open)")]
    NotStrong,
    #[error("parameter r must be positive, got {0}")]
    NonPositiveR(String),
    #[error("delta {delta} must exceed the index {index}")]
    DeltaNotAboveIndex { delta: String, index: String },
    #[error("epsilon {epsilon} must exceed the index {index}")]
    EpsilonNotAboveIndex { epsilon: String, index: String },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("operation needs a finite carrier")]
    InfiniteCarrier,
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("map is not total on the domain: {0}")]
    NotTotal(String),
    #[error("sequence index must be at least 1")]
    ZeroIndex,
    #[error("horizon {horizon} must exceed k = {k}")]
    HorizonTooSmall { k: u64, horizon: u64 },
    #[error("ground set has {0} points; at most {max} are supported", max = crate::topology::MAX_GROUND)]
    TooManyPoints(usize),
    #[error("ball boundary {0} is irrational")]
    IrrationalBoundary(String),
    #[error("unsupported space family: {0}")]
    UnsupportedSpace(String),
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
