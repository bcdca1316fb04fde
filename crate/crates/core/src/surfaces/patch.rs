use super::chart::SurfaceChart;
use super::jet::geometry_jet;
use crate::error::{Error, Result};
use crate::linalg::Vec2;
use crate::quadrature::{integrate_checked, GaussLegendre};
use crate::scalar::Real;

const SIDE_NODES: usize = 8;
const AREA_NODES: usize = 12;

/// Boundary data of the coordinate rectangle `[x1, x1+ε] × [x2, x2+δ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchBalance<T> {
    /// `∮ k ds` over the counterclockwise boundary.
    pub boundary_curvature: T,
    /// Sum of exterior angles at the corners.
    pub corner_turns: T,
    /// `∫∫ √(a11·a22) dx1 dx2`.
    pub area: T,
}

impl<T: Real> PatchBalance<T> {
    /// `∫∫ K dA` implied by Gauss–Bonnet.
    pub fn total_curvature(&self) -> T {
        T::TAU() - self.corner_turns - self.boundary_curvature
    }
}

/// Gauss–Bonnet balance for a small coordinate rectangle of an orthogonal
/// chart. Opposite sides are paired so each pair reduces to a difference of
/// `k·√a` integrals along one coordinate.
pub fn gauss_bonnet_balance<T: Real>(
    chart: &SurfaceChart<T>,
    x: Vec2<T>,
    eps: T,
    delta: T,
) -> Result<PatchBalance<T>> {
    if !chart.is_orthogonal() {
        return Err(Error::NonOrthogonalChart);
    }
    if !(eps > T::zero() && delta > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "patch",
            reason: "ε and δ must be positive".into(),
        });
    }
    for corner in [
        x,
        [x[0] + eps, x[1]],
        [x[0], x[1] + delta],
        [x[0] + eps, x[1] + delta],
    ] {
        chart.domain().check(corner)?;
    }
    let tol = T::lit(1e3) * T::epsilon();
    // ds along x1-lines is √a11 dx1, so k1 ds = f1 dx1; likewise for x2-lines.
    let f1 = |s: T, t: T| -> Result<T> {
        let j = geometry_jet(chart, [s, t])?;
        Ok(j.k1 * j.a11.sqrt())
    };
    let f2 = |s: T, t: T| -> Result<T> {
        let j = geometry_jet(chart, [s, t])?;
        Ok(j.k2 * j.a22.sqrt())
    };
    // bottom (forward) minus top (traversed backward)
    let horizontal = integrate_checked(
        |s| Ok(f1(s, x[1])? - f1(s, x[1] + delta)?),
        x[0],
        x[0] + eps,
        SIDE_NODES,
        tol,
    )?;
    // right (forward) minus left (traversed backward)
    let vertical = integrate_checked(
        |t| Ok(f2(x[0] + eps, t)? - f2(x[0], t)?),
        x[1],
        x[1] + delta,
        SIDE_NODES,
        tol,
    )?;
    let rule = GaussLegendre::<T>::new(AREA_NODES);
    let mut area = T::zero();
    for (s, ws) in rule.mapped(x[0], x[0] + eps) {
        for (t, wt) in rule.mapped(x[1], x[1] + delta) {
            let j = geometry_jet(chart, [s, t])?;
            area += ws * wt * (j.a11 * j.a22).sqrt();
        }
    }
    Ok(PatchBalance {
        boundary_curvature: horizontal + vertical,
        corner_turns: T::lit(4.0) * T::FRAC_PI_2(),
        area,
    })
}

/// Estimate of `K` at `x` from the Gauss–Bonnet balance on the patch
/// `[x1, x1+ε] × [x2, x2+δ]`. First-order accurate in `max(ε, δ)`.
#[allow(non_snake_case)]
pub fn gauss_bonnet_patch_K<T: Real>(
    chart: &SurfaceChart<T>,
    x: Vec2<T>,
    eps: T,
    delta: T,
) -> Result<T> {
    let b = gauss_bonnet_balance(chart, x, eps, delta)?;
    Ok(b.total_curvature() / b.area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn plane_patch_is_flat() {
        let k = gauss_bonnet_patch_K(&SurfaceChart::<f64>::plane(), [1.0, 2.0], 0.1, 0.1).unwrap();
        assert!(k.abs() < 1e-12);
    }

    #[test]
    fn unit_sphere_patch() {
        let c = SurfaceChart::sphere(1.0).unwrap();
        let k = gauss_bonnet_patch_K(&c, [FRAC_PI_2, 0.0], 0.01, 0.01).unwrap();
        assert!((k - 1.0).abs() < 1e-3, "{k}");
    }

    #[test]
    fn torus_patch_matches_analytic() {
        let c = SurfaceChart::torus(2.0f64, 1.0).unwrap();
        let k = gauss_bonnet_patch_K(&c, [0.0, 0.0], 0.01, 0.01).unwrap();
        assert!((k - 1.0 / 3.0).abs() < 1e-3, "{k}");
    }

    #[test]
    fn rejects_saddle_and_out_of_domain() {
        let s = SurfaceChart::saddle(1.0).unwrap();
        assert_eq!(
            gauss_bonnet_patch_K(&s, [0.0, 0.0], 0.1, 0.1),
            Err(Error::NonOrthogonalChart)
        );
        let c = SurfaceChart::sphere(1.0).unwrap();
        assert!(matches!(
            gauss_bonnet_patch_K(&c, [std::f64::consts::PI - 1e-4, 0.0], 0.1, 0.1),
            Err(Error::Domain { .. })
        ));
    }
}
