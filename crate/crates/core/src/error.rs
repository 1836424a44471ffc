use thiserror::Error;

/// Errors raised by the numerical routines when a precondition is violated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    #[error("not a Blaschke sequence: {0}")]
    NotBlaschke(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("(alpha, p) = ({alpha}, {p}) lies outside the scope of {theorem}")]
    OutOfScope { theorem: String, alpha: f64, p: f64 },
    #[error("zero sequence is not separated enough for the Riesz basis: constant {constant:.3e} below floor {floor:.3e}")]
    SeparationFloor { constant: f64, floor: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl LabError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        LabError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;

/// Checks `p > 0`.
pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(LabError::domain("p must be positive"))
    }
}

/// Checks `alpha > -1`.
pub(crate) fn check_weight(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > -1.0 {
        Ok(())
    } else {
        Err(LabError::domain("alpha must be greater than -1"))
    }
}
