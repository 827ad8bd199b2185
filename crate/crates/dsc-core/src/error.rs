pub type Result<T> = std::result::Result<T, DscError>;

#[derive(Debug, thiserror::Error)]
pub enum DscError {
    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported derivative order {0} (supported: 0..=4)")]
    UnsupportedOrder(usize),

    #[error("operation not supported for kernel family {0}")]
    UnsupportedFamily(&'static str),

    #[error("grid under-resolved: B*delta = {b_delta} must be below pi")]
    UnderResolved { b_delta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate boundary condition: {0}")]
    DegenerateBoundary(String),

    #[error("unsupported boundary condition: {0}")]
    UnsupportedBoundary(String),

    #[error("point outside grid hull: {0}")]
    OutsideDomain(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("time integration diverged at t = {time}")]
    Divergence { time: f64 },
}
