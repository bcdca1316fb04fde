//! Right-hand sides of the equations of motion.

use crate::error::{require_finite, require_positive, Error, Result};
use crate::linalg::{bilinear, dot2, mat2_vec, Vec2};
use crate::scalar::Real;
use crate::surfaces::{geometry_jet, rotate90, GeometryJet, Mutation, SurfaceChart, POLE_GUARD};

use super::lagrange::{disk_mass_matrix, quadratic_el_acceleration};
use super::params::{DiametralForm, DiskParams, TopParams};
use super::potential::Potential;
use super::state::{FullState, ReducedState};

/// Rate of the marker angle, measured from the `{x2 = const}` lines, for a
/// tangent vector carried by parallel transport along velocity `v`:
/// `θ̇ = −√a11·k1·v1 − √a22·k2·v2`.
pub fn parallel_transport_rate<T: Real>(jet: &GeometryJet<T>, v: &Vec2<T>) -> Result<T> {
    if !jet.orthogonal {
        return Err(Error::NonOrthogonalChart);
    }
    Ok(-jet.a11.sqrt() * jet.k1 * v[0] - jet.a22.sqrt() * jet.k2 * v[1])
}

/// Axial angular velocity `ω_a = θ̇ + f(x)·ẋ`: the marker's rotation relative
/// to a parallel-transported radius.
pub fn axial_spin<T: Real>(jet: &GeometryJet<T>, s: &FullState<T>) -> Result<T> {
    Ok(s.theta_dot - parallel_transport_rate(jet, &s.v)?)
}

/// `√(a11·a22)·L·K·J_flat·ẋ`, the force the axial spin adds to the momentum equation.
fn gyroscopic_covector<T: Real>(
    chart: &SurfaceChart<T>,
    jet: &GeometryJet<T>,
    charge: T,
    v: &Vec2<T>,
) -> Vec2<T> {
    let area = match chart.mutation() {
        Mutation::DropAreaFactor => T::one(),
        _ => jet.area_factor(),
    };
    let c = area * charge * jet.gaussian_curvature;
    [-c * v[1], c * v[0]]
}

fn require_orthogonal<T: Real>(chart: &SurfaceChart<T>) -> Result<()> {
    if chart.is_orthogonal() {
        Ok(())
    } else {
        Err(Error::NonOrthogonalChart)
    }
}

/// Time derivative of the full spinning-disk state.
///
/// The `x` equations use the conserved-spin reduction with the gyroscopic
/// covector; `θ̈` keeps `θ̇ + f(x)·ẋ` constant.
pub fn full_disk_rhs<T: Real>(
    chart: &SurfaceChart<T>,
    disk: &DiskParams<T>,
    pot: &Potential<T>,
    form: DiametralForm,
    s: &FullState<T>,
) -> Result<FullState<T>> {
    require_orthogonal(chart)?;
    if !chart.has_embedding() {
        return Err(Error::MissingEmbedding);
    }
    let jet = geometry_jet(chart, s.x)?;
    let f = jet.connection_form()?;
    let df = jet.connection_form_jacobian()?;
    let charge = disk.inertia_axial * (s.theta_dot + dot2(&f, &s.v));
    let (mass, dmass) = disk_mass_matrix(chart, &jet, disk.mass, disk.inertia_diametral, form)?;
    let gyro = gyroscopic_covector(chart, &jet, charge, &s.v);
    let grad = pot.gradient(chart, jet.x)?;
    let force = [gyro[0] - grad[0], gyro[1] - grad[1]];
    let accel = quadratic_el_acceleration(&mass, &dmass, &s.v, &force)?;
    let theta_ddot = -(bilinear(&df, &s.v, &s.v) + dot2(&f, &accel));
    Ok(FullState {
        x: s.v,
        v: accel,
        theta: s.theta_dot,
        theta_dot: theta_ddot,
    })
}

/// Parameters of the reduced disk: the spin has been eliminated and enters
/// only through its conserved angular momentum `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDiskParams<T> {
    pub mass: T,
    /// `I_d`; zero gives the small, rapidly spinning disk.
    pub inertia_diametral: T,
    /// Axial angular momentum `L = I_a ω_a`.
    pub charge: T,
    pub form: DiametralForm,
}

impl<T: Real> ReducedDiskParams<T> {
    pub fn new(mass: T, inertia_diametral: T, charge: T) -> Result<Self> {
        require_positive("m", mass.to_f64_lossy())?;
        require_finite("I_d", inertia_diametral.to_f64_lossy())?;
        if inertia_diametral < T::zero() {
            return Err(Error::InvalidParameter {
                name: "I_d",
                reason: "must be non-negative".into(),
            });
        }
        require_finite("L", charge.to_f64_lossy())?;
        Ok(Self {
            mass,
            inertia_diametral,
            charge,
            form: DiametralForm::default(),
        })
    }

    pub fn with_form(mut self, form: DiametralForm) -> Self {
        self.form = form;
        self
    }
}

/// `d/dt T_ẋ − T_x + V_x = √(a11·a22)·L·K·J_flat·ẋ` solved for `ẍ`.
pub fn reduced_disk_rhs<T: Real>(
    chart: &SurfaceChart<T>,
    params: &ReducedDiskParams<T>,
    pot: &Potential<T>,
    s: &ReducedState<T>,
) -> Result<ReducedState<T>> {
    require_orthogonal(chart)?;
    if params.inertia_diametral > T::zero() && !chart.has_embedding() {
        return Err(Error::MissingEmbedding);
    }
    let jet = geometry_jet(chart, s.x)?;
    let (mass, dmass) = disk_mass_matrix(
        chart,
        &jet,
        params.mass,
        params.inertia_diametral,
        params.form,
    )?;
    let gyro = gyroscopic_covector(chart, &jet, params.charge, &s.v);
    let grad = pot.gradient(chart, jet.x)?;
    let force = [gyro[0] - grad[0], gyro[1] - grad[1]];
    let accel = quadratic_el_acceleration(&mass, &dmass, &s.v, &force)?;
    Ok(ReducedState { x: s.v, v: accel })
}

/// Intrinsic magnetic geodesic: `m D_t γ̇ = L K J γ̇ − grad V`.
///
/// Works on any chart; orthogonality is not needed.
pub fn magnetic_geodesic_rhs<T: Real>(
    chart: &SurfaceChart<T>,
    mass: T,
    charge: T,
    pot: &Potential<T>,
    s: &ReducedState<T>,
) -> Result<ReducedState<T>> {
    let jet = geometry_jet(chart, s.x)?;
    let jv = rotate90(&jet, &s.v)?;
    let ginv = jet.metric_inverse()?;
    let grad = pot.gradient(chart, jet.x)?;
    let grad_up = mat2_vec(&ginv, &grad);
    let lorentz = charge * jet.gaussian_curvature / mass;
    let mut accel = [T::zero(); 2];
    for (k, a) in accel.iter_mut().enumerate() {
        let mut geo = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                geo += jet.christoffel[k][i][j] * s.v[i] * s.v[j];
            }
        }
        *a = -geo + lorentz * jv[k] - grad_up[k] / mass;
    }
    Ok(ReducedState { x: s.v, v: accel })
}

/// Checks the top's polar angle stays clear of the Euler-angle singularity.
pub(crate) fn check_top_domain<T: Real>(x: Vec2<T>) -> Result<()> {
    let guard = T::lit(POLE_GUARD);
    if x[0].is_finite() && x[1].is_finite() && x[0] >= guard && x[0] <= T::PI() - guard {
        Ok(())
    } else {
        Err(Error::Domain {
            x1: x[0].to_f64_lossy(),
            x2: x[1].to_f64_lossy(),
            reason: "top axis within pole guard of the vertical".into(),
        })
    }
}

/// Lagrange top in Euler angles `(x1, x2, θ)`:
/// `ℒ = ½I1(ẋ1² + ẋ2² sin²x1) + ½I3(θ̇ + ẋ2 cos x1)² − M g ℓ cos x1`.
pub fn top_rhs<T: Real>(top: &TopParams<T>, s: &FullState<T>) -> Result<FullState<T>> {
    check_top_domain(s.x)?;
    let (sn, cs) = s.x[0].sin_cos();
    let (i1, i3) = (top.inertia_transverse, top.inertia_axial);
    let z = T::zero();
    let two = T::lit(2.0);
    let mass = [
        [i1, z, z],
        [z, i1 * sn * sn + i3 * cs * cs, i3 * cs],
        [z, i3 * cs, i3],
    ];
    let d1 = [
        [z, z, z],
        [z, two * (i1 - i3) * sn * cs, -i3 * sn],
        [z, -i3 * sn, z],
    ];
    let zero3 = [[z; 3]; 3];
    let dmass = [d1, zero3, zero3];
    let qdot = [s.v[0], s.v[1], s.theta_dot];
    let force = [top.mass * top.gravity * top.arm * sn, z, z];
    let a = quadratic_el_acceleration(&mass, &dmass, &qdot, &force)?;
    Ok(FullState {
        x: s.v,
        v: [a[0], a[1]],
        theta: s.theta_dot,
        theta_dot: a[2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn parallel_transport_examples() {
        let plane = SurfaceChart::plane();
        let j = geometry_jet(&plane, [0.0, 0.0]).unwrap();
        assert_eq!(parallel_transport_rate(&j, &[3.0, -1.0]).unwrap(), 0.0);
        let sphere = SurfaceChart::sphere(1.0).unwrap();
        let j = geometry_jet(&sphere, [FRAC_PI_2, 0.0]).unwrap();
        assert!(parallel_transport_rate(&j, &[0.0, 2.0]).unwrap().abs() < 1e-15);
        let j = geometry_jet(&sphere, [PI / 3.0, 0.0]).unwrap();
        let rate = parallel_transport_rate(&j, &[0.0, 1.0]).unwrap();
        assert!((rate + 0.5).abs() < 1e-15);
        let s = FullState {
            x: [PI / 3.0, 0.0],
            v: [0.0, 1.0],
            theta: 0.0,
            theta_dot: rate,
        };
        assert!(axial_spin(&j, &s).unwrap().abs() < 1e-15);
    }

    #[test]
    fn plane_full_disk_moves_straight() {
        let plane = SurfaceChart::plane();
        let disk = DiskParams::uniform(1.0, 0.2).unwrap();
        let s = FullState {
            x: [0.3, 0.1],
            v: [1.0, -2.0],
            theta: 0.0,
            theta_dot: 5.0,
        };
        let d = full_disk_rhs(
            &plane,
            &disk,
            &Potential::None,
            DiametralForm::ThirdForm,
            &s,
        )
        .unwrap();
        assert_eq!(d.v, [0.0, 0.0]);
        assert_eq!(d.theta_dot, 0.0);
        let j = geometry_jet(&plane, s.x).unwrap();
        assert_eq!(axial_spin(&j, &s).unwrap(), 5.0);
    }

    #[test]
    fn magnetic_reduces_to_geodesic_without_charge() {
        let chart = SurfaceChart::torus(2.0f64, 1.0).unwrap();
        let s = ReducedState {
            x: [0.4, 1.0],
            v: [0.5, -0.3],
        };
        let p = ReducedDiskParams::new(1.3, 0.0, 0.0).unwrap();
        let a = magnetic_geodesic_rhs(&chart, 1.3, 0.0, &Potential::None, &s).unwrap();
        let b = reduced_disk_rhs(&chart, &p, &Potential::None, &s).unwrap();
        for k in 0..2 {
            assert!((a.v[k] - b.v[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn magnetic_force_is_perpendicular() {
        let chart = SurfaceChart::saddle(0.7f64).unwrap();
        let s = ReducedState {
            x: [0.2, -0.5],
            v: [1.0, 0.4],
        };
        let free = magnetic_geodesic_rhs(&chart, 1.0, 0.0, &Potential::None, &s).unwrap();
        let charged = magnetic_geodesic_rhs(&chart, 1.0, 2.0, &Potential::None, &s).unwrap();
        let j = geometry_jet(&chart, s.x).unwrap();
        let diff = [charged.v[0] - free.v[0], charged.v[1] - free.v[1]];
        assert!(j.inner(&diff, &s.v).abs() < 1e-14);
        // magnitude |L K v| / m
        let expect = 2.0 * j.gaussian_curvature.abs() * j.norm(&s.v);
        assert!((j.norm(&diff) - expect).abs() < 1e-13);
    }

    #[test]
    fn structural_errors() {
        let saddle = SurfaceChart::saddle(1.0).unwrap();
        let s = ReducedState {
            x: [0.0, 0.0],
            v: [1.0, 0.0],
        };
        let p = ReducedDiskParams::new(1.0, 0.0, 1.0).unwrap();
        assert_eq!(
            reduced_disk_rhs(&saddle, &p, &Potential::None, &s),
            Err(Error::NonOrthogonalChart)
        );
        let j = geometry_jet(&saddle, s.x).unwrap();
        assert_eq!(
            parallel_transport_rate(&j, &s.v),
            Err(Error::NonOrthogonalChart)
        );
        let top = TopParams::new(1.0, 0.5, 2.0, 1.0, 9.8).unwrap();
        let near_pole = FullState {
            x: [1e-4, 0.0],
            ..Default::default()
        };
        assert!(matches!(
            top_rhs(&top, &near_pole),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn top_without_gravity_at_rest_axis_stays() {
        let top = TopParams::new(1.0, 0.5, 2.0, 1.0, 0.0).unwrap();
        let s = FullState {
            x: [0.8, 0.3],
            v: [0.0, 0.0],
            theta: 0.0,
            theta_dot: 40.0,
        };
        let d = top_rhs(&top, &s).unwrap();
        assert_eq!(d.v, [0.0, 0.0]);
        assert_eq!(d.theta_dot, 0.0);
    }
}
