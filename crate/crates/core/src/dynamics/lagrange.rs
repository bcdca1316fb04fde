//! Euler–Lagrange equations for Lagrangians quadratic in the velocities.
//!
//! For `ℒ = ½ q̇ᵀ M(q) q̇ − V(q)` plus a generalized force `Q` on the right
//! hand side, the equations read
//!
//! ```text
//! M q̈ = Q − Σ_k (∂_k M) q̇ q̇_k + ½ q̇ᵀ (∂_i M) q̇
//! ```
//!
//! where `Q` collects the gyroscopic covector and `−∇V`.

use crate::error::{Error, Result};
use crate::linalg::{solve, Mat2, Vec2};
use crate::scalar::{central_diff, Real};
use crate::surfaces::{geometry_jet_unchecked, GeometryJet, SurfaceChart};

use super::params::DiametralForm;

/// Solves the Euler–Lagrange equations for `q̈`.
///
/// `dmass[k]` is `∂M/∂q_k`; `force` is the generalized force covector.
pub fn quadratic_el_acceleration<T: Real, const N: usize>(
    mass: &[[T; N]; N],
    dmass: &[[[T; N]; N]; N],
    qdot: &[T; N],
    force: &[T; N],
) -> Result<[T; N]> {
    let half = T::lit(0.5);
    let mut rhs = *force;
    for i in 0..N {
        let mut acc = T::zero();
        for j in 0..N {
            for k in 0..N {
                acc += dmass[k][i][j] * qdot[j] * qdot[k];
                acc -= half * dmass[i][j][k] * qdot[j] * qdot[k];
            }
        }
        rhs[i] -= acc;
    }
    solve(*mass, rhs).ok_or(Error::SingularMassMatrix)
}

/// The quadratic form giving `ω_d²` at a jet.
pub(crate) fn diametral_quadratic<T: Real>(
    jet: &GeometryJet<T>,
    form: DiametralForm,
) -> Result<Mat2<T>> {
    match form {
        DiametralForm::ThirdForm => jet.third_form(),
        DiametralForm::SecondForm => jet.second_form,
    }
    .ok_or(Error::MissingEmbedding)
}

/// Position-dependent translational mass matrix `m·g + I_d·D(x)` of a disk and
/// its coordinate partials.
///
/// Metric partials come from the jet. When `I_d > 0` the partials of `D` are
/// taken by 4th-order central differences of the pointwise form.
pub(crate) fn disk_mass_matrix<T: Real>(
    chart: &SurfaceChart<T>,
    jet: &GeometryJet<T>,
    mass: T,
    inertia_d: T,
    form: DiametralForm,
) -> Result<(Mat2<T>, [Mat2<T>; 2])> {
    let mut m = jet.metric();
    let mut dm = [
        [[jet.da11[0], jet.da12[0]], [jet.da12[0], jet.da22[0]]],
        [[jet.da11[1], jet.da12[1]], [jet.da12[1], jet.da22[1]]],
    ];
    for row in m.iter_mut().chain(dm.iter_mut().flatten()) {
        for v in row.iter_mut() {
            *v *= mass;
        }
    }
    if inertia_d > T::zero() {
        let d = diametral_quadratic(jet, form)?;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += inertia_d * d[i][j];
            }
        }
        for axis in 0..2 {
            let h = chart.fd_step_second(jet.x, axis);
            for i in 0..2 {
                for j in i..2 {
                    let mut failed = None;
                    let deriv = central_diff(
                        |s| {
                            let mut p = jet.x;
                            p[axis] = s;
                            match geometry_jet_unchecked(chart, p)
                                .and_then(|jp| diametral_quadratic(&jp, form))
                            {
                                Ok(q) => q[i][j],
                                Err(e) => {
                                    failed = Some(e);
                                    T::nan()
                                }
                            }
                        },
                        jet.x[axis],
                        h,
                    );
                    if let Some(e) = failed {
                        return Err(e);
                    }
                    dm[axis][i][j] += inertia_d * deriv;
                    if i != j {
                        dm[axis][j][i] += inertia_d * deriv;
                    }
                }
            }
        }
    }
    Ok((m, dm))
}

/// `½ ẋᵀ M ẋ` convenience.
pub(crate) fn quadratic<T: Real>(m: &Mat2<T>, v: &Vec2<T>) -> T {
    T::lit(0.5) * crate::linalg::bilinear(m, v, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_particle_in_polar_coordinates() {
        // ℒ = ½(ṙ² + r² φ̇²): r̈ = r φ̇², φ̈ = −2 ṙ φ̇ / r
        let (r, rd, pd) = (2.0f64, 0.3, 0.7);
        let mass = [[1.0, 0.0], [0.0, r * r]];
        let dmass = [[[0.0, 0.0], [0.0, 2.0 * r]], [[0.0, 0.0], [0.0, 0.0]]];
        let a = quadratic_el_acceleration(&mass, &dmass, &[rd, pd], &[0.0, 0.0]).unwrap();
        assert!((a[0] - r * pd * pd).abs() < 1e-15);
        assert!((a[1] + 2.0 * rd * pd / r).abs() < 1e-15);
    }

    #[test]
    fn singular_mass_is_reported() {
        let z = [[0.0; 2]; 2];
        assert_eq!(
            quadratic_el_acceleration(&z, &[z, z], &[1.0, 0.0], &[0.0, 0.0]),
            Err(Error::SingularMassMatrix)
        );
    }
}
