use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate label {0}")]
    Duplicate(String),
    #[error("explicit order of size {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("no inner order for outer element {0}")]
    MissingInner(String),
    #[error("empty or missing block at {0}")]
    EmptyBlock(String),
    #[error("phase {0} is not in the order")]
    NotInOrder(String),
    #[error("infinite order cannot be enumerated")]
    Infinite,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse phase {0:?}")]
    BadPhase(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TubeError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("invalid tube object: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("malformed interval [{a},{b}] in A{n}")]
    Malformed { n: u32, a: u32, b: u32 },
    #[error("quiver size mismatch: A{left} vs A{right}")]
    SizeMismatch { left: u32, right: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmbientError {
    #[error("{0} is not in the carrier")]
    NotInCarrier(String),
    #[error("{0} is outside the validation scope")]
    OutOfScope(String),
    #[error("carrier of size {size} exceeds the bound {bound}")]
    CarrierTooLarge { size: usize, bound: usize },
    #[error("window violation: {0}")]
    Window(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error("phase {0} appears twice")]
    DuplicatePhase(String),
    #[error("no Harder-Narasimhan filtration for {0}")]
    HnFailure(String),
    #[error("several decreasing chain decompositions for {0}")]
    HnAmbiguous(String),
    #[error("phase {0} has no piece")]
    UnknownPhase(String),
    #[error("{object} is not in the piece at {phase}")]
    NotInPiece { object: String, phase: String },
    #[error("phase {0} is already Hom-connected for this object")]
    NotSplittable(String),
    #[error("cut is not down-closed: {lower} is outside but {upper} is inside")]
    CutNotDownClosed { lower: String, upper: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("family needs a non-empty point set")]
    EmptyPointSet,
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("window violation: {0}")]
    Window(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {needed} maps, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("shape or field mismatch")]
    Mismatch,
    #[error("fingerprint system inconsistent: {0}")]
    Inconsistent(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}
