use thiserror::Error;

/// Errors raised by geometry evaluation, dynamics and the verification oracles.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type so the
/// error stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({x1}, {x2}) outside chart domain: {reason}")]
    Domain { x1: f64, x2: f64, reason: String },

    #[error("metric is not positive definite at ({x1}, {x2}): det = {det}")]
    DegenerateMetric { x1: f64, x2: f64, det: f64 },

    #[error("operation requires an orthogonal chart")]
    NonOrthogonalChart,

    #[error("operation requires a chart with an embedding")]
    MissingEmbedding,

    #[error("mass matrix is singular")]
    SingularMassMatrix,

    #[error("boundary quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("non-finite state at step {step}")]
    NonFiniteState { step: usize },

    #[error("speed {speed} below curvature floor")]
    SpeedFloor { speed: f64 },

    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("loop is not closed")]
    OpenLoop,

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("trajectory time grids differ")]
    GridMismatch,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("expression error: {0}")]
    Expression(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {value}"),
        })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite, got {value}"),
        })
    }
}
