use crate::error::{Error, Result};
use crate::integrate::Trajectory;
use crate::linalg::bilinear;
use crate::scalar::Real;
use crate::surfaces::SurfaceChart;

use super::report::ResidualReport;

/// How two positions are compared.
#[derive(Debug, Clone, Copy)]
pub enum DeviationMetric<'a, T> {
    /// `max_i |x_i − y_i|`.
    CoordinateSup,
    /// `√(Δxᵀ g(midpoint) Δx)`, with periodic differences taken the short way.
    ChartDistance(&'a SurfaceChart<T>),
}

/// Pointwise deviation of the `(x1, x2)` components of two trajectories on
/// the same time grid.
pub fn compare_trajectories<T: Real>(
    a: &Trajectory<T>,
    b: &Trajectory<T>,
    metric: DeviationMetric<'_, T>,
    tolerance: T,
) -> Result<ResidualReport<T>> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch);
    }
    let slack = T::lit(1e-9);
    for (&s, &t) in a.times.iter().zip(&b.times) {
        if (s - t).abs() > slack * T::one().max(s.abs()) {
            return Err(Error::GridMismatch);
        }
    }
    let samples = (0..a.len()).map(|i| {
        let (p, q) = (a.position(i), b.position(i));
        let d = match metric {
            DeviationMetric::CoordinateSup => (p[0] - q[0]).abs().max((p[1] - q[1]).abs()),
            DeviationMetric::ChartDistance(chart) => {
                let dom = chart.domain();
                let mut dx = [p[0] - q[0], p[1] - q[1]];
                for (axis, d) in dx.iter_mut().enumerate() {
                    if let Some(period) = dom.period(axis) {
                        *d = *d - period * (*d / period).round();
                    }
                }
                let two = T::lit(2.0);
                let mid = [(p[0] + q[0]) / two, (p[1] + q[1]) / two];
                bilinear(&chart.metric(mid), &dx, &dx).max(T::zero()).sqrt()
            }
        };
        (i, d)
    });
    Ok(ResidualReport::from_samples(samples, tolerance))
}
