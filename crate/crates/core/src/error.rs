use thiserror::Error;

/// Errors reported by state constructors, transforms, and estimators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value is outside the domain of the operation
    /// (wrong mode index, empty sample set, malformed range, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A scalar parameter violates a physical bound (negative variance,
    /// thermal parameter below one, efficiency outside [0, 1], ...).
    #[error("unphysical parameter: {0}")]
    UnphysicalParameter(String),

    /// A covariance matrix violates the uncertainty principle or is not
    /// a valid symmetric matrix.
    #[error("unphysical state: {0}")]
    UnphysicalState(String),

    /// Measured data cannot be explained by any physical state under the
    /// stated measurement model.
    #[error("inconsistent measurement: {0}")]
    InconsistentMeasurement(String),

    /// The operation is defined but not supported for this input shape.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
