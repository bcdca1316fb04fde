//! Parallel transport around closed coordinate loops against the enclosed
//! curvature.

use crate::error::{Error, Result};
use crate::linalg::{dot2, Vec2};
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;
use crate::surfaces::{geometry_jet, geometry_jet_unchecked, SurfaceChart};

/// Closed path in coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedLoop<T> {
    /// Counterclockwise boundary of `[x1, x1+ε] × [x2, x2+δ]`.
    Rectangle { corner: Vec2<T>, eps: T, delta: T },
    /// One circuit of `x1 = const` in the direction of increasing `x2`. It
    /// bounds the cap between the line and the chart's polar edge, so the
    /// chart needs periodic `x2` and a pole guard at the lower end of `x1`.
    Parallel { x1: T },
    /// Straight coordinate segments through the vertices; the last vertex must
    /// repeat the first. The enclosed region is fanned from the first vertex,
    /// so it must be star-shaped about it.
    Polygon(Vec<Vec2<T>>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomyReport<T> {
    /// `∮ θ̇ dt` with `θ̇` the parallel-transport rate.
    pub transport: T,
    /// `∫∫ K √(a11a22) dx1 dx2` over the enclosed region.
    pub area_integral: T,
    /// Net rotation of the tangent relative to the coordinate frame.
    pub boundary_turning: T,
    /// `transport + boundary_turning` reduced to `(−π, π]`.
    pub holonomy: T,
    /// `∫∫ √(a11a22) dx1 dx2`.
    pub enclosed_area: T,
}

impl<T: Real> HolonomyReport<T> {
    /// Distance between holonomy and area integral modulo 2π.
    pub fn mismatch(&self) -> T {
        wrap_pi(self.holonomy - self.area_integral).abs()
    }
}

/// Representative of `a` modulo 2π in `(−π, π]`.
pub fn wrap_pi<T: Real>(a: T) -> T {
    a - T::TAU() * ((a - T::PI()) / T::TAU()).ceil()
}

/// Transports a vector around `lp` and integrates the curvature it encloses,
/// both with `n_quad` Gauss–Legendre nodes per segment and direction.
pub fn holonomy_loop<T: Real>(
    chart: &SurfaceChart<T>,
    lp: &ClosedLoop<T>,
    n_quad: usize,
) -> Result<HolonomyReport<T>> {
    if !chart.is_orthogonal() {
        return Err(Error::NonOrthogonalChart);
    }
    if n_quad == 0 {
        return Err(Error::InvalidParameter {
            name: "n_quad",
            reason: "must be at least 1".into(),
        });
    }
    let rule = GaussLegendre::<T>::new(n_quad);
    match lp {
        ClosedLoop::Rectangle { corner, eps, delta } => {
            let [a, b] = *corner;
            let vertices = vec![
                [a, b],
                [a + *eps, b],
                [a + *eps, b + *delta],
                [a, b + *delta],
                [a, b],
            ];
            polygon(chart, &vertices, &rule)
        }
        ClosedLoop::Polygon(v) => polygon(chart, v, &rule),
        ClosedLoop::Parallel { x1 } => parallel(chart, *x1, &rule),
    }
}

fn transport_rate<T: Real>(chart: &SurfaceChart<T>, x: Vec2<T>, dx: &Vec2<T>) -> Result<T> {
    let jet = geometry_jet(chart, x)?;
    Ok(-dot2(&jet.connection_form()?, dx))
}

/// `(K·W, W)` without the domain guard, for quadrature nodes near a pole.
fn area_density<T: Real>(chart: &SurfaceChart<T>, x: Vec2<T>) -> Result<(T, T)> {
    let jet = geometry_jet_unchecked(chart, chart.domain().wrap(x))?;
    let w = jet.area_factor();
    Ok((jet.gaussian_curvature * w, w))
}

fn finish<T: Real>(
    transport: T,
    area_integral: T,
    turning: T,
    enclosed_area: T,
) -> HolonomyReport<T> {
    HolonomyReport {
        transport,
        area_integral,
        boundary_turning: turning,
        holonomy: wrap_pi(transport + turning),
        enclosed_area,
    }
}

fn polygon<T: Real>(
    chart: &SurfaceChart<T>,
    v: &[Vec2<T>],
    rule: &GaussLegendre<T>,
) -> Result<HolonomyReport<T>> {
    if v.len() < 4 {
        return Err(Error::InvalidParameter {
            name: "loop",
            reason: "polygon needs at least three distinct vertices".into(),
        });
    }
    let (first, last) = (v[0], v[v.len() - 1]);
    let scale = v
        .iter()
        .fold(T::one(), |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let tol = T::lit(1e3) * T::epsilon() * scale;
    if (first[0] - last[0]).abs() > tol || (first[1] - last[1]).abs() > tol {
        return Err(Error::OpenLoop);
    }
    let mut transport = T::zero();
    for seg in v.windows(2) {
        let d = [seg[1][0] - seg[0][0], seg[1][1] - seg[0][1]];
        for (s, w) in rule.mapped(T::zero(), T::one()) {
            let p = [seg[0][0] + s * d[0], seg[0][1] + s * d[1]];
            transport += w * transport_rate(chart, p, &d)?;
        }
    }
    // Fan triangulation; each triangle through a collapsed square (Duffy map).
    let (mut curv, mut area, mut signed) = (T::zero(), T::zero(), T::zero());
    let o = v[0];
    for tri in v[1..v.len() - 1].windows(2) {
        let e1 = [tri[0][0] - o[0], tri[0][1] - o[1]];
        let e2 = [tri[1][0] - tri[0][0], tri[1][1] - tri[0][1]];
        let det = e1[0] * e2[1] - e1[1] * e2[0];
        signed += det / T::lit(2.0);
        for (u, wu) in rule.mapped(T::zero(), T::one()) {
            for (s, ws) in rule.mapped(T::zero(), T::one()) {
                let p = [
                    o[0] + u * e1[0] + u * s * e2[0],
                    o[1] + u * e1[1] + u * s * e2[1],
                ];
                let (kw, w) = area_density(chart, p)?;
                let jac = wu * ws * u * det;
                curv += jac * kw;
                area += jac * w;
            }
        }
    }
    let turning = if signed >= T::zero() {
        T::TAU()
    } else {
        -T::TAU()
    };
    Ok(finish(transport, curv, turning, area.abs()))
}

fn parallel<T: Real>(
    chart: &SurfaceChart<T>,
    x1: T,
    rule: &GaussLegendre<T>,
) -> Result<HolonomyReport<T>> {
    let dom = chart.domain();
    let period = dom.period(1).ok_or(Error::OpenLoop)?;
    if !(dom.guard[0] > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "loop",
            reason: "x1 line bounds no region of this chart".into(),
        });
    }
    let (lo2, hi2) = (dom.lo[1], dom.lo[1] + period);
    let mut transport = T::zero();
    for (t, w) in rule.mapped(lo2, hi2) {
        transport += w * transport_rate(chart, [x1, t], &[T::zero(), T::one()])?;
    }
    let (mut curv, mut area) = (T::zero(), T::zero());
    for (s, ws) in rule.mapped(dom.lo[0], x1) {
        for (t, wt) in rule.mapped(lo2, hi2) {
            let (kw, w) = area_density(chart, [s, t])?;
            curv += ws * wt * kw;
            area += ws * wt * w;
        }
    }
    Ok(finish(transport, curv, T::TAU(), area))
}
