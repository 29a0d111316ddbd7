use thiserror::Error;

/// Errors raised by the algebra and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no inverse in the octonions")]
    ZeroDivisor,
    #[error("expected a unit octonion, norm^2 = {norm_sq}")]
    NotUnit { norm_sq: f64 },
    #[error("expected a unit imaginary octonion (real part {real}, norm^2 {norm_sq})")]
    NotImaginaryUnit { real: f64, norm_sq: f64 },
    #[error("matrix {which} is not special orthogonal (orthogonality residual {residual}, det {det})")]
    NotOrthogonal { which: &'static str, residual: f64, det: f64 },
    #[error("triality B(xy) = (Cx)(Ay) violated at x = e{x}, y = e{y} (residual {residual})")]
    TrialityViolated { x: usize, y: usize, residual: f64 },
    #[error("matrix is not of the form w^ for an octonion w: {0}")]
    NotVectorShaped(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("antipodality violated: {0}")]
    AntipodalityViolated(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
