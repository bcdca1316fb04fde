use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::linalg::Vec2;
use crate::scalar::{central_diff, Real};
use crate::surfaces::SurfaceChart;

/// Position-dependent potential energy `V(x)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Potential<T> {
    #[default]
    None,
    /// `V = c·cos x1`, e.g. gravity on a sphere with `x1` the colatitude.
    AxisCosine {
        c: T,
    },
    Custom(Expr),
}

impl<T: Real> Potential<T> {
    pub fn value(&self, x: Vec2<T>) -> T {
        match self {
            Potential::None => T::zero(),
            Potential::AxisCosine { c } => *c * x[0].cos(),
            Potential::Custom(e) => e.eval(x[0], x[1]),
        }
    }

    /// `∂V/∂x`. Custom expressions are differentiated with the chart's step.
    pub fn gradient(&self, chart: &SurfaceChart<T>, x: Vec2<T>) -> Result<Vec2<T>> {
        let grad = match self {
            Potential::None => [T::zero(); 2],
            Potential::AxisCosine { c } => [-*c * x[0].sin(), T::zero()],
            Potential::Custom(e) => {
                let h1 = chart.fd_step(x, 0);
                let h2 = chart.fd_step(x, 1);
                [
                    central_diff(|s| e.eval(s, x[1]), x[0], h1),
                    central_diff(|s| e.eval(x[0], s), x[1], h2),
                ]
            }
        };
        if grad.iter().all(|g| g.is_finite()) {
            Ok(grad)
        } else {
            Err(Error::Domain {
                x1: x[0].to_f64_lossy(),
                x2: x[1].to_f64_lossy(),
                reason: "potential gradient is not finite".into(),
            })
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Potential::None)
    }
}
