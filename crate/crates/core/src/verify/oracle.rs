//! Discrete Euler–Lagrange residuals from scalar Lagrangians.
//!
//! The oracle never calls the equations of motion. Each model's Lagrangian is
//! written out here from the chart's metric and embedding values alone and
//! its partials come from central differences. Only sampled positions are
//! used: between consecutive samples the midpoint rule gives
//! `L_d(q_k, q_{k+1}) = h·ℒ((q_k + q_{k+1})/2, (q_{k+1} − q_k)/h)`, and the
//! residual at `k` is `−(D2 L_d(q_{k−1}, q_k) + D1 L_d(q_k, q_{k+1}))/h`.

use crate::dynamics::{DiametralForm, Model, ModelKind};
use crate::error::{Error, Result};
use crate::integrate::Trajectory;
use crate::linalg::{cross3, dot3, norm3, Vec2, Vec3};
use crate::scalar::{central_diff, scaled_step, Real};
use crate::surfaces::SurfaceChart;

use super::report::ResidualReport;

/// Relative position step. The Lagrangian already nests up to two difference
/// quotients of the embedding, so a smaller step would drown in round-off.
const POSITION_STEP: f64 = 1e-3;
/// Relative velocity step. The Lagrangian is quadratic in the velocities, so
/// central differences are exact there and a unit step minimises round-off.
const VELOCITY_STEP: f64 = 1.0;

pub const MIN_SAMPLES: usize = 5;

/// Geometry rebuilt from metric and embedding values.
struct Geometry<'a, T> {
    chart: &'a SurfaceChart<T>,
}

impl<T: Real> Geometry<'_, T> {
    fn kinetic(&self, x: Vec2<T>, v: Vec2<T>) -> T {
        let g = self.chart.metric(x);
        g[0][0] * v[0] * v[0] + T::lit(2.0) * g[0][1] * v[0] * v[1] + g[1][1] * v[1] * v[1]
    }

    fn partial<F: Fn(Vec2<T>) -> T>(&self, f: F, x: Vec2<T>, axis: usize) -> T {
        central_diff(
            |s| {
                let mut p = x;
                p[axis] = s;
                f(p)
            },
            x[axis],
            scaled_step(POSITION_STEP, x[axis]),
        )
    }

    /// `(−∂2 a11, ∂1 a22) / (2√(a11 a22))`.
    fn connection(&self, x: Vec2<T>) -> Vec2<T> {
        let g = self.chart.metric(x);
        let w = (g[0][0] * g[1][1]).sqrt();
        let two = T::lit(2.0);
        [
            -self.partial(|p| self.chart.metric(p)[0][0], x, 1) / (two * w),
            self.partial(|p| self.chart.metric(p)[1][1], x, 0) / (two * w),
        ]
    }

    fn tangent(&self, x: Vec2<T>, axis: usize) -> Vec3<T> {
        let mut t = [T::zero(); 3];
        for (c, tc) in t.iter_mut().enumerate() {
            *tc = self.partial(
                |p| self.chart.embedding(p).map_or(T::nan(), |r| r[c]),
                x,
                axis,
            );
        }
        t
    }

    fn normal(&self, x: Vec2<T>) -> Vec3<T> {
        let n = cross3(&self.tangent(x, 0), &self.tangent(x, 1));
        let len = norm3(&n);
        [n[0] / len, n[1] / len, n[2] / len]
    }

    /// `ω_d²` as the squared rate of the normal, or as `h(v, v)`.
    fn diametral(&self, x: Vec2<T>, v: Vec2<T>, form: DiametralForm) -> T {
        let mut dn = [[T::zero(); 3]; 2];
        for (axis, d) in dn.iter_mut().enumerate() {
            for (c, dc) in d.iter_mut().enumerate() {
                *dc = self.partial(|p| self.normal(p)[c], x, axis);
            }
        }
        let rate: Vec3<T> = std::array::from_fn(|c| v[0] * dn[0][c] + v[1] * dn[1][c]);
        match form {
            DiametralForm::ThirdForm => dot3(&rate, &rate),
            DiametralForm::SecondForm => {
                let (t1, t2) = (self.tangent(x, 0), self.tangent(x, 1));
                let vel: Vec3<T> = std::array::from_fn(|c| v[0] * t1[c] + v[1] * t2[c]);
                -dot3(&vel, &rate)
            }
        }
    }
}

/// Scalar Lagrangian of `model` at `(q, q̇)`. `q` has two or three entries.
fn lagrangian<T: Real>(model: &Model<T>, q: &[T], qd: &[T]) -> T {
    let geo = Geometry {
        chart: model.chart(),
    };
    let half = T::lit(0.5);
    let x = [q[0], q[1]];
    let v = [qd[0], qd[1]];
    let pot = model.potential().value(x);
    match model.kind() {
        ModelKind::Top(top) => {
            let (sn, cs) = q[0].sin_cos();
            let spin = qd[2] + qd[1] * cs;
            half * top.inertia_transverse * (qd[0] * qd[0] + qd[1] * qd[1] * sn * sn)
                + half * top.inertia_axial * spin * spin
                - top.mass * top.gravity * top.arm * cs
        }
        ModelKind::FullDisk { disk, form } => {
            let spin = qd[2] + crate::linalg::dot2(&geo.connection(x), &v);
            half * disk.inertia_axial * spin * spin
                + half * disk.mass * geo.kinetic(x, v)
                + half * disk.inertia_diametral * geo.diametral(x, v, *form)
                - pot
        }
        ModelKind::ReducedDisk(p) => {
            let mut l = half * p.mass * geo.kinetic(x, v)
                + p.charge * crate::linalg::dot2(&geo.connection(x), &v)
                - pot;
            if p.inertia_diametral > T::zero() {
                l += half * p.inertia_diametral * geo.diametral(x, v, p.form);
            }
            l
        }
        ModelKind::Magnetic { mass, charge } => {
            half * *mass * geo.kinetic(x, v) + *charge * crate::linalg::dot2(&geo.connection(x), &v)
                - pot
        }
        ModelKind::Geodesic { mass } => half * *mass * geo.kinetic(x, v) - pot,
    }
}

/// `(∂ℒ/∂q̇, ∂ℒ/∂q)` at one sample.
fn partials<T: Real>(model: &Model<T>, q: &[T], qd: &[T]) -> (Vec<T>, Vec<T>) {
    let n = q.len();
    let mut p = vec![T::zero(); n];
    let mut f = vec![T::zero(); n];
    for i in 0..n {
        p[i] = central_diff(
            |s| {
                let mut w = qd.to_vec();
                w[i] = s;
                lagrangian(model, q, &w)
            },
            qd[i],
            scaled_step(VELOCITY_STEP, qd[i]),
        );
        f[i] = central_diff(
            |s| {
                let mut w = q.to_vec();
                w[i] = s;
                lagrangian(model, &w, qd)
            },
            q[i],
            scaled_step(POSITION_STEP, q[i]),
        );
    }
    (p, f)
}

fn coordinates<T: Real>(state: &[T], spin: bool) -> Vec<T> {
    if spin {
        vec![state[0], state[1], state[4]]
    } else {
        vec![state[0], state[1]]
    }
}

/// Largest component of the discrete Euler–Lagrange residual
/// `(p_{k+½} − p_{k−½})/h − (F_{k−½} + F_{k+½})/2` at every interior sample,
/// as `(sample index, residual)`. `p` and `F` are `∂ℒ/∂q̇` and `∂ℒ/∂q` at the
/// midpoint of each sample interval.
pub fn el_residuals<T: Real>(model: &Model<T>, traj: &Trajectory<T>) -> Result<Vec<(usize, T)>> {
    let n = traj.len();
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_SAMPLES,
            got: n,
        });
    }
    let charged_non_orthogonal = match model.kind() {
        ModelKind::Magnetic { charge, .. } => *charge != T::zero(),
        _ => false,
    };
    if charged_non_orthogonal && !model.chart().is_orthogonal() {
        return Err(Error::NonOrthogonalChart);
    }
    let spin = model.kind().has_spin_angle();
    let h = traj.dt * T::from_usize(traj.sample_every).unwrap_or_else(T::nan);
    let half = T::lit(0.5);
    let q: Vec<Vec<T>> = traj.states.iter().map(|s| coordinates(s, spin)).collect();
    let parts: Vec<_> = q
        .windows(2)
        .map(|w| {
            let mid: Vec<T> = w[0]
                .iter()
                .zip(&w[1])
                .map(|(&a, &b)| half * (a + b))
                .collect();
            let vel: Vec<T> = w[0].iter().zip(&w[1]).map(|(&a, &b)| (b - a) / h).collect();
            partials(model, &mid, &vel)
        })
        .collect();
    Ok((1..n - 1)
        .map(|k| {
            let (before, after) = (&parts[k - 1], &parts[k]);
            let r = (0..before.0.len()).fold(T::zero(), |m, i| {
                let v = ((after.0[i] - before.0[i]) / h - half * (before.1[i] + after.1[i])).abs();
                if v.is_nan() || m.is_nan() {
                    T::nan()
                } else {
                    m.max(v)
                }
            });
            (k, r)
        })
        .collect())
}

/// Discrete Euler–Lagrange residual of `traj` under `model`'s Lagrangian.
/// `O(Δt²)` for a true solution.
pub fn el_residual_oracle<T: Real>(
    model: &Model<T>,
    traj: &Trajectory<T>,
    tolerance: T,
) -> Result<ResidualReport<T>> {
    Ok(ResidualReport::from_samples(
        el_residuals(model, traj)?,
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Potential;
    use crate::integrate::{integrate, IntegratorSettings};

    #[test]
    fn straight_line_has_zero_residual() {
        let model = Model::new(
            SurfaceChart::plane(),
            ModelKind::Geodesic { mass: 2.0 },
            Potential::None,
        )
        .unwrap();
        let s = IntegratorSettings::new(0.1, 20).unwrap();
        let traj = integrate(&model, &[0.0, 1.0, 1.0, -0.5], &s).unwrap();
        let r = el_residual_oracle(&model, &traj, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn too_few_samples() {
        let model = Model::new(
            SurfaceChart::plane(),
            ModelKind::Geodesic { mass: 1.0 },
            Potential::None,
        )
        .unwrap();
        let s = IntegratorSettings::new(0.1, 3).unwrap();
        let traj = integrate(&model, &[0.0, 0.0, 1.0, 0.0], &s).unwrap();
        assert_eq!(
            el_residual_oracle(&model, &traj, 1.0),
            Err(Error::InsufficientSamples { needed: 5, got: 4 })
        );
    }

    #[test]
    fn diametral_form_on_sphere() {
        let chart = SurfaceChart::sphere(2.0f64).unwrap();
        let geo = Geometry { chart: &chart };
        let (x, v) = ([1.0, 0.5], [0.3, -0.2]);
        let speed2 = geo.kinetic(x, v);
        // both forms equal |v|²/R² on a sphere (up to the normal's sign)
        let third = geo.diametral(x, v, DiametralForm::ThirdForm);
        let second = geo.diametral(x, v, DiametralForm::SecondForm);
        assert!((third - speed2 / 4.0).abs() < 1e-9, "{third}");
        assert!((second.abs() - speed2 / 2.0).abs() < 1e-9, "{second}");
    }
}
