use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular (determinant 0)")]
    Singular,

    #[error("matrix is not expanding: eigenvalue modulus {modulus} <= 1 + {eps:e}")]
    NotExpanding { modulus: f64, eps: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point is not a node of the sample grid")]
    OffGrid,

    #[error("incompatible grid: {0}")]
    IncompatibleGrid(String),

    #[error("function is not F-invariant (translation residual {0:e})")]
    NotInvariant(f64),

    #[error("bank has {got} filters, dilation requires {expected}")]
    WrongCount { expected: usize, got: usize },

    #[error("matrix field is not a self-adjoint projection (residual {residual:e})")]
    NotProjection { residual: f64 },

    #[error("exact completion needs q = 2, got q = {0}")]
    NotQ2(u64),

    #[error("filter is not normalized: primed bracket residual {0:e}")]
    NotNormalized(f64),

    #[error("row is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("approximant {index} is {distance:e} from its filter, more than eps = {eps:e}")]
    ApproximantTooFar { index: usize, distance: f64, eps: f64 },

    #[error("cannot normalize filter {index}: min bracket {min} <= 1/4")]
    TooFarToNormalize { index: usize, min: f64 },

    #[error("operation needs a coefficient (trigonometric polynomial) representation")]
    NoCoefficientForm,

    #[error("filter and scaling transform use different dilation matrices")]
    MismatchedDilation,

    #[error("truncation depth must be at least 1")]
    BadDepth,

    #[error("point is off the sphere (constraint residual {0:e})")]
    OffSphere(f64),

    #[error("point is within {distance:e} of the excluded pole")]
    PoleSingularity { distance: f64 },

    #[error("bad resolution: {0}")]
    BadResolution(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
