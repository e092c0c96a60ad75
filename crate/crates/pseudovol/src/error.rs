use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PvError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid signature ({p},{q}): need p + q >= 1")]
    InvalidSignature { p: usize, q: usize },
    #[error("basis is rank deficient")]
    RankDeficient,
    #[error("restriction of Q to the subspace is degenerate (smallest |eigenvalue| {0:e})")]
    DegenerateSubspace(f64),
    #[error("subspace is not isotropic (max |Q| = {0:e})")]
    NotIsotropic(f64),
    #[error("wrong dimension: {0}")]
    WrongDimension(String),
    #[error("infeasible orbit label (a={a}, b={b}, r={r}) for signature ({p},{q})")]
    InfeasibleLabel { a: usize, b: usize, r: usize, p: usize, q: usize },
    #[error("linear map is singular on the subspace")]
    SingularMap,
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("Klain index {a} outside [{lo}, {hi}]")]
    IndexOutOfRange { a: usize, lo: usize, hi: usize },
    #[error("Klain vector mismatch: {0}")]
    KlainMismatch(String),
    #[error("j action needs p = q, got ({p},{q})")]
    NotSplitSignature { p: usize, q: usize },
    #[error("restriction target ({p},{q}) infeasible for degree {k}")]
    InfeasibleTarget { p: usize, q: usize, k: usize },
    #[error("Taylor subtraction depth {m} exceeds the cap {max}")]
    DepthExceeded { m: usize, max: usize },
    #[error("pole hit at lambda = {0}")]
    PoleHit(f64),
    #[error("Beta({a}, {b}) is indeterminate")]
    IndeterminateBeta { a: f64, b: f64 },
    #[error("Beta({a}, {b}) has a pole")]
    BetaPole { a: f64, b: f64 },
    #[error("difference quotients at the light cone do not converge (variation {0:e})")]
    NonSmoothAtLightCone(f64),
    #[error("boundary difference quotients do not converge (variation {0:e})")]
    NonSmoothBoundary(f64),
    #[error("plane meets the singular support (|cos 2theta| = {0:.3e})")]
    SingularSupportCollision(f64),
    #[error("degenerate body: {0}")]
    DegenerateBody(String),
    #[error("facet list is not closed (|sum area*normal| = {0:e})")]
    NotClosed(f64),
    #[error("measure/plane combination not supported: {0}")]
    UnsupportedCombination(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

pub type Result<T> = std::result::Result<T, PvError>;
