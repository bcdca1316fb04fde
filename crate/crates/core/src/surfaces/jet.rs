use super::chart::{Mutation, SurfaceChart};
use crate::error::{Error, Result};
use crate::linalg::{
    bilinear, cross3, dot3, mat2_det, mat2_inv, mat2_mul, mat2_real_eigenvalues, mat2_vec, norm3,
    Mat2, Vec2,
};
use crate::scalar::Real;

/// Pointwise geometric data of a chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryJet<T> {
    /// Wrapped coordinates the jet was evaluated at.
    pub x: Vec2<T>,
    pub a11: T,
    pub a12: T,
    pub a22: T,
    /// `(∂a11/∂x1, ∂a11/∂x2)`.
    pub da11: Vec2<T>,
    pub da12: Vec2<T>,
    pub da22: Vec2<T>,
    /// Gaussian curvature `K`.
    pub gaussian_curvature: T,
    /// Signed geodesic curvature of the line `{x2 = const}` in the direction of
    /// increasing `x1`.
    pub k1: T,
    /// Signed geodesic curvature of the line `{x1 = const}` in the direction of
    /// increasing `x2`.
    pub k2: T,
    /// Second fundamental form `h_ij = ⟨∂_i∂_j r, n⟩` with `n ∥ ∂1r × ∂2r`.
    pub second_form: Option<Mat2<T>>,
    /// Shape operator `S = g⁻¹ h`.
    pub shape_operator: Option<Mat2<T>>,
    /// `christoffel[k][i][j] = Γ^k_ij`.
    pub christoffel: [[[T; 2]; 2]; 2],
    pub orthogonal: bool,
    connection: Vec2<T>,
    connection_jacobian: Mat2<T>,
}

impl<T: Real> GeometryJet<T> {
    pub fn metric(&self) -> Mat2<T> {
        [[self.a11, self.a12], [self.a12, self.a22]]
    }

    pub fn metric_det(&self) -> T {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    /// `√det g`; equals `√(a11·a22)` on orthogonal charts.
    pub fn area_factor(&self) -> T {
        self.metric_det().sqrt()
    }

    pub fn metric_inverse(&self) -> Result<Mat2<T>> {
        self.check_metric()?;
        mat2_inv(&self.metric()).ok_or(self.degenerate())
    }

    pub fn inner(&self, u: &Vec2<T>, v: &Vec2<T>) -> T {
        bilinear(&self.metric(), u, v)
    }

    pub fn norm(&self, v: &Vec2<T>) -> T {
        self.inner(v, v).max(T::zero()).sqrt()
    }

    /// `f(x) = (k1·√a11, k2·√a22)`; `θ̇ + f·ẋ` is the axial spin.
    pub fn connection_form(&self) -> Result<Vec2<T>> {
        if !self.orthogonal {
            return Err(Error::NonOrthogonalChart);
        }
        Ok(self.connection)
    }

    /// `J_f[i][j] = ∂f_i/∂x_j`.
    pub fn connection_form_jacobian(&self) -> Result<Mat2<T>> {
        if !self.orthogonal {
            return Err(Error::NonOrthogonalChart);
        }
        Ok(self.connection_jacobian)
    }

    /// Third fundamental form `III = h g⁻¹ h`, i.e. `⟨Su, Sv⟩_g`.
    pub fn third_form(&self) -> Option<Mat2<T>> {
        let h = self.second_form?;
        let s = self.shape_operator?;
        Some(mat2_mul(&h, &s))
    }

    /// Operator norm of `S` with respect to the metric: the largest absolute
    /// principal curvature.
    pub fn shape_operator_norm(&self) -> Option<T> {
        let s = self.shape_operator?;
        let (lo, hi) = mat2_real_eigenvalues(&s)?;
        Some(lo.abs().max(hi.abs()))
    }

    /// Covariant acceleration `ẍ^k + Γ^k_ij v^i v^j`.
    pub fn covariant_acceleration(&self, v: &Vec2<T>, accel: &Vec2<T>) -> Vec2<T> {
        let mut out = *accel;
        for (k, o) in out.iter_mut().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    *o += self.christoffel[k][i][j] * v[i] * v[j];
                }
            }
        }
        out
    }

    fn check_metric(&self) -> Result<()> {
        let det = self.metric_det();
        if det > T::zero() && self.a11 + self.a22 > T::zero() && det.is_finite() {
            Ok(())
        } else {
            Err(self.degenerate())
        }
    }

    fn degenerate(&self) -> Error {
        Error::DegenerateMetric {
            x1: self.x[0].to_f64_lossy(),
            x2: self.x[1].to_f64_lossy(),
            det: self.metric_det().to_f64_lossy(),
        }
    }
}

/// Evaluates every pointwise geometric quantity of `chart` at `x`.
pub fn geometry_jet<T: Real>(chart: &SurfaceChart<T>, x: Vec2<T>) -> Result<GeometryJet<T>> {
    let x = chart.domain().check(x)?;
    geometry_jet_unchecked(chart, x)
}

/// Same as [`geometry_jet`] without the domain check. Used for stencil points
/// of finite differences that may poke slightly past a pole guard.
pub(crate) fn geometry_jet_unchecked<T: Real>(
    chart: &SurfaceChart<T>,
    x: Vec2<T>,
) -> Result<GeometryJet<T>> {
    let mj = chart.metric_jet(x);
    let g = mj.g;
    let det = mat2_det(&g);
    if !(det > T::zero() && g[0][0] + g[1][1] > T::zero() && det.is_finite()) {
        return Err(Error::DegenerateMetric {
            x1: x[0].to_f64_lossy(),
            x2: x[1].to_f64_lossy(),
            det: det.to_f64_lossy(),
        });
    }
    let ginv = mat2_inv(&g).ok_or(Error::DegenerateMetric {
        x1: x[0].to_f64_lossy(),
        x2: x[1].to_f64_lossy(),
        det: det.to_f64_lossy(),
    })?;
    let half = T::lit(0.5);
    let two = T::lit(2.0);

    let mut christoffel = [[[T::zero(); 2]; 2]; 2];
    for (k, gk) in christoffel.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = T::zero();
                for l in 0..2 {
                    acc += ginv[k][l] * (mj.d[i][l][j] + mj.d[j][l][i] - mj.d[l][i][j]);
                }
                gk[i][j] = half * acc;
            }
        }
    }

    let emb = chart.embedding_jet(x);
    let (second_form, shape_operator) = match emb {
        Some(e) => {
            let n_raw = cross3(&e.d[0], &e.d[1]);
            let n_len = norm3(&n_raw);
            if n_len > T::zero() {
                let n = [n_raw[0] / n_len, n_raw[1] / n_len, n_raw[2] / n_len];
                let mut h = [[T::zero(); 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        h[i][j] = dot3(&e.d2[i][j], &n);
                    }
                }
                let off = half * (h[0][1] + h[1][0]);
                h[0][1] = off;
                h[1][0] = off;
                (Some(h), Some(mat2_mul(&ginv, &h)))
            } else {
                (None, None)
            }
        }
        None => (None, None),
    };

    let orthogonal = chart.is_orthogonal();
    let (a11, a22) = (g[0][0], g[1][1]);
    let (da11, da22, da12) = (
        [mj.d[0][0][0], mj.d[1][0][0]],
        [mj.d[0][1][1], mj.d[1][1][1]],
        [mj.d[0][0][1], mj.d[1][0][1]],
    );

    let k1;
    let (mut k2, mut kg);
    let mut connection = [T::zero(); 2];
    let mut connection_jacobian = [[T::zero(); 2]; 2];
    if orthogonal {
        let s11 = a11.sqrt();
        let s22 = a22.sqrt();
        let w = s11 * s22;
        // Liouville formulas
        k1 = -da11[1] / (two * a11 * s22);
        k2 = da22[0] / (two * a22 * s11);
        // W_j = ∂_j √(a11 a22)
        let wd = [
            (da11[0] * a22 + a11 * da22[0]) / (two * w),
            (da11[1] * a22 + a11 * da22[1]) / (two * w),
        ];
        let d2a11 = [mj.d2[0][0][0][0], mj.d2[0][1][0][0], mj.d2[1][1][0][0]];
        let d2a22 = [mj.d2[0][0][1][1], mj.d2[0][1][1][1], mj.d2[1][1][1][1]];
        // ∂1((a22)_1 / W) + ∂2((a11)_2 / W)
        let p1 = d2a22[0] / w - da22[0] * wd[0] / (w * w);
        let q2 = d2a11[2] / w - da11[1] * wd[1] / (w * w);
        kg = -(p1 + q2) / (two * w);
        // f1 = -(a11)_2 / (2W), f2 = (a22)_1 / (2W)
        connection = [-da11[1] / (two * w), da22[0] / (two * w)];
        let d2a11_2j = [d2a11[1], d2a11[2]];
        let d2a22_1j = [d2a22[0], d2a22[1]];
        for j in 0..2 {
            connection_jacobian[0][j] = -(d2a11_2j[j] - da11[1] * wd[j] / w) / (two * w);
            connection_jacobian[1][j] = (d2a22_1j[j] - da22[0] * wd[j] / w) / (two * w);
        }
    } else {
        // Signed geodesic curvature ⟨D ∂_i, J ∂_i⟩ / |∂_i|³ of each coordinate line.
        let sqrt_det = det.sqrt();
        let jv = |v: Vec2<T>| -> Vec2<T> {
            let ev = [-v[1], v[0]];
            let r = mat2_vec(&ginv, &ev);
            [sqrt_det * r[0], sqrt_det * r[1]]
        };
        let e1 = [T::one(), T::zero()];
        let e2 = [T::zero(), T::one()];
        let acc1 = [christoffel[0][0][0], christoffel[1][0][0]];
        let acc2 = [christoffel[0][1][1], christoffel[1][1][1]];
        k1 = bilinear(&g, &acc1, &jv(e1)) / (a11 * a11.sqrt());
        k2 = bilinear(&g, &acc2, &jv(e2)) / (a22 * a22.sqrt());
        kg = match shape_operator {
            Some(s) => mat2_det(&s),
            None => return Err(Error::MissingEmbedding),
        };
    }

    match chart.mutation() {
        Mutation::FlipK2Sign => {
            k2 = -k2;
            connection[1] = -connection[1];
            connection_jacobian[1] = [-connection_jacobian[1][0], -connection_jacobian[1][1]];
        }
        Mutation::AbsCurvature => kg = kg.abs(),
        Mutation::None | Mutation::DropAreaFactor => {}
    }

    Ok(GeometryJet {
        x,
        a11,
        a12: g[0][1],
        a22,
        da11,
        da12,
        da22,
        gaussian_curvature: kg,
        k1,
        k2,
        second_form,
        shape_operator,
        christoffel,
        orthogonal,
        connection,
        connection_jacobian,
    })
}

/// Counterclockwise rotation by π/2 in the tangent plane, in coordinate
/// components: `(Jv)^i = √det g · g^{ik} ε_{kj} v^j`.
pub fn rotate90<T: Real>(jet: &GeometryJet<T>, v: &Vec2<T>) -> Result<Vec2<T>> {
    let ginv = jet.metric_inverse()?;
    let s = jet.area_factor();
    let ev = [-v[1], v[0]];
    let r = mat2_vec(&ginv, &ev);
    Ok([s * r[0], s * r[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::chart::Domain;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sphere_curvature_is_inverse_radius_squared() {
        let chart = SurfaceChart::sphere(2.0).unwrap();
        for x in [[0.3, 0.0], [FRAC_PI_2, 4.0], [2.9, -1.0]] {
            let j = geometry_jet(&chart, x).unwrap();
            assert!(
                close(j.gaussian_curvature, 0.25, 1e-12),
                "{}",
                j.gaussian_curvature
            );
        }
    }

    #[test]
    fn plane_is_flat() {
        let j = geometry_jet(&SurfaceChart::plane(), [3.0, -7.0]).unwrap();
        assert_eq!((j.a11, j.a22, j.a12), (1.0, 1.0, 0.0));
        assert_eq!((j.gaussian_curvature, j.k1, j.k2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn torus_outer_equator() {
        let chart = SurfaceChart::torus(2.0, 1.0).unwrap();
        let j = geometry_jet(&chart, [0.0, 1.234]).unwrap();
        assert!(close(j.gaussian_curvature, 1.0 / 3.0, 1e-14));
        // closed form cos u / (r (R0 + r cos u)) elsewhere
        let u: f64 = 2.5;
        let j = geometry_jet(&chart, [u, 0.0]).unwrap();
        assert!(close(
            j.gaussian_curvature,
            u.cos() / (2.0 + u.cos()),
            1e-12
        ));
    }

    #[test]
    fn saddle_origin() {
        let j = geometry_jet(&SurfaceChart::saddle(0.5).unwrap(), [0.0, 0.0]).unwrap();
        assert!(close(j.gaussian_curvature, -0.25, 1e-15));
        assert!(!j.orthogonal);
        assert!(j.connection_form().is_err());
        // closed form -κ² / (1 + κ²(x² + y²))²
        let j = geometry_jet(&SurfaceChart::saddle(0.5).unwrap(), [0.4, -1.0]).unwrap();
        let expect = -0.25 / (1.0 + 0.25 * 1.16f64).powi(2);
        assert!(close(j.gaussian_curvature, expect, 1e-13));
    }

    #[test]
    fn det_shape_operator_matches_k_on_embedded_charts() {
        let charts = [
            SurfaceChart::sphere(1.5).unwrap(),
            SurfaceChart::torus(2.0, 0.7).unwrap(),
            SurfaceChart::cylinder(0.4).unwrap(),
        ];
        for c in &charts {
            for x in [[0.5, 0.2], [2.0, 1.0], [1.1, 5.0]] {
                let j = geometry_jet(c, x).unwrap();
                let s = j.shape_operator.unwrap();
                assert!(
                    close(mat2_det(&s), j.gaussian_curvature, 1e-12),
                    "{}",
                    c.name()
                );
            }
        }
    }

    #[test]
    fn liouville_convention_on_sphere() {
        let chart = SurfaceChart::sphere(1.0).unwrap();
        let j = geometry_jet(&chart, [PI / 3.0, 0.0]).unwrap();
        assert!(close(j.k1, 0.0, 1e-15));
        // latitude circle at colatitude π/3 curves toward the north pole: cot(π/3)
        assert!(close(j.k2, (PI / 3.0).cos() / (PI / 3.0).sin(), 1e-14));
        let f = j.connection_form().unwrap();
        assert!(close(f[1], 0.5, 1e-15));
    }

    #[test]
    fn general_geodesic_curvature_matches_liouville() {
        // The general formula used for non-orthogonal charts reduces to Liouville's.
        let chart = SurfaceChart::torus(2.0, 1.0).unwrap();
        let j = geometry_jet(&chart, [0.8, 0.3]).unwrap();
        let g = j.metric();
        let ginv = mat2_inv(&g).unwrap();
        let s = j.area_factor();
        let jv = |v: Vec2<f64>| {
            let r = mat2_vec(&ginv, &[-v[1], v[0]]);
            [s * r[0], s * r[1]]
        };
        let acc2 = [j.christoffel[0][1][1], j.christoffel[1][1][1]];
        let k2 = bilinear(&g, &acc2, &jv([0.0, 1.0])) / j.a22.powf(1.5);
        assert!(close(k2, j.k2, 1e-14));
    }

    #[test]
    fn rotate90_examples() {
        let j = geometry_jet(&SurfaceChart::plane(), [0.0, 0.0]).unwrap();
        assert_eq!(rotate90(&j, &[1.0, 0.0]).unwrap(), [0.0, 1.0]);
        let j = geometry_jet(&SurfaceChart::sphere(1.0).unwrap(), [PI / 6.0, 0.0]).unwrap();
        let r = rotate90(&j, &[0.0, 2.0]).unwrap();
        assert!(close(r[0], -1.0, 1e-15) && close(r[1], 0.0, 1e-15));
        assert!(close(j.inner(&r, &[0.0, 2.0]), 0.0, 1e-15));
        assert!(close(j.norm(&r), j.norm(&[0.0, 2.0]), 1e-15));
    }

    #[test]
    fn rotate90_on_non_orthogonal_metric() {
        let j = geometry_jet(&SurfaceChart::saddle(0.9).unwrap(), [0.7, -0.4]).unwrap();
        let v = [0.3, 1.1];
        let r = rotate90(&j, &v).unwrap();
        assert!(close(j.inner(&r, &v), 0.0, 1e-14));
        assert!(close(j.norm(&r), j.norm(&v), 1e-14));
        let rr = rotate90(&j, &r).unwrap();
        assert!(close(rr[0], -v[0], 1e-14) && close(rr[1], -v[1], 1e-14));
    }

    #[test]
    fn metric_only_custom_chart_has_no_second_form() {
        use crate::expr::Expr;
        use crate::surfaces::chart::CustomChart;
        let c = CustomChart {
            a11: Expr::parse("1").unwrap(),
            a22: Expr::parse("sin(x1)^2").unwrap(),
            embedding: None,
        };
        let d = Domain::new([0.1, 0.0], [3.0, 6.0], [false, true]).unwrap();
        let chart = SurfaceChart::custom(c, d, None).unwrap();
        let j = geometry_jet(&chart, [1.0, 2.0]).unwrap();
        assert!(j.second_form.is_none() && j.shape_operator.is_none());
        assert!(
            close(j.gaussian_curvature, 1.0, 1e-6),
            "{}",
            j.gaussian_curvature
        );
    }

    #[test]
    fn out_of_domain_is_an_error() {
        let chart = SurfaceChart::sphere(1.0).unwrap();
        assert!(matches!(
            geometry_jet(&chart, [1e-4, 0.0]),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn works_in_single_precision() {
        let chart = SurfaceChart::<f32>::sphere(1.0).unwrap();
        let j = geometry_jet(&chart, [1.0, 0.5]).unwrap();
        assert!((j.gaussian_curvature - 1.0).abs() < 1e-5);
        let fd = chart.with_finite_differences(<f32 as Real>::FD_STEP);
        let j = geometry_jet(&fd, [1.0, 0.5]).unwrap();
        assert!(
            (j.gaussian_curvature - 1.0).abs() < 1e-2,
            "{}",
            j.gaussian_curvature
        );
    }
}
