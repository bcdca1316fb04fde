//! Fixed-step explicit integration with per-sample monitors.

use crate::dynamics::ReducedState;
use crate::error::{Error, Result};
use crate::linalg::Vec2;
use crate::scalar::Real;
use crate::surfaces::{geometry_jet, rotate90, SurfaceChart};

/// Speeds below this make the geodesic curvature meaningless.
pub const CURVATURE_SPEED_FLOOR: f64 = 1e-8;

/// An autonomous first-order system on a flat state vector.
pub trait OdeSystem<T: Real> {
    fn dim(&self) -> usize;

    fn derivative(&self, y: &[T]) -> Result<Vec<T>>;

    /// Rejects states outside the system's domain.
    fn check_state(&self, _y: &[T]) -> Result<()> {
        Ok(())
    }

    fn monitor(&self, _y: &[T]) -> Result<MonitorSample<T>> {
        Err(Error::InvalidParameter {
            name: "monitors",
            reason: "system has no monitors".into(),
        })
    }
}

/// Diagnostic values recorded at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorSample<T> {
    pub energy: T,
    /// `|ẋ|_g`.
    pub speed: T,
    pub omega_a: Option<T>,
    /// `None` when the speed is below [`CURVATURE_SPEED_FLOOR`].
    pub geodesic_curvature: Option<T>,
    pub gaussian_curvature: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Rk4,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings<T> {
    pub dt: T,
    pub n_steps: usize,
    pub sample_every: usize,
    pub scheme: Scheme,
    pub monitors: bool,
}

impl<T: Real> IntegratorSettings<T> {
    pub fn new(dt: T, n_steps: usize) -> Result<Self> {
        let s = Self {
            dt,
            n_steps,
            sample_every: 1,
            scheme: Scheme::Rk4,
            monitors: true,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_sample_every(mut self, every: usize) -> Self {
        self.sample_every = every;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_monitors(mut self, on: bool) -> Self {
        self.monitors = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        crate::error::require_positive("dt", self.dt.to_f64_lossy())?;
        if self.n_steps == 0 {
            return Err(Error::InvalidParameter {
                name: "n_steps",
                reason: "must be at least 1".into(),
            });
        }
        if self.sample_every == 0 {
            return Err(Error::InvalidParameter {
                name: "sample_every",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Complete,
    /// The step from `step` to `step + 1` left the domain; samples stop at the
    /// last valid one.
    Truncated {
        step: usize,
        error: Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
    /// Empty when monitors were switched off.
    pub monitors: Vec<MonitorSample<T>>,
    pub status: Status,
    pub dt: T,
    pub sample_every: usize,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self.status, Status::Truncated { .. })
    }

    pub fn last_state(&self) -> Option<&[T]> {
        self.states.last().map(Vec::as_slice)
    }

    pub fn position(&self, i: usize) -> Vec2<T> {
        [self.states[i][0], self.states[i][1]]
    }
}

fn is_domain(e: &Error) -> bool {
    matches!(e, Error::Domain { .. })
}

fn axpy<T: Real>(y: &[T], a: T, k: &[T]) -> Vec<T> {
    y.iter().zip(k).map(|(&y, &k)| y + a * k).collect()
}

fn step<T: Real, S: OdeSystem<T> + ?Sized>(
    sys: &S,
    y: &[T],
    dt: T,
    scheme: Scheme,
) -> Result<Vec<T>> {
    let half = T::lit(0.5);
    match scheme {
        Scheme::Midpoint => {
            let k1 = sys.derivative(y)?;
            let k2 = sys.derivative(&axpy(y, half * dt, &k1))?;
            Ok(axpy(y, dt, &k2))
        }
        Scheme::Rk4 => {
            let k1 = sys.derivative(y)?;
            let k2 = sys.derivative(&axpy(y, half * dt, &k1))?;
            let k3 = sys.derivative(&axpy(y, half * dt, &k2))?;
            let k4 = sys.derivative(&axpy(y, dt, &k3))?;
            let sixth = dt / T::lit(6.0);
            let two = T::lit(2.0);
            Ok((0..y.len())
                .map(|i| y[i] + sixth * (k1[i] + two * (k2[i] + k3[i]) + k4[i]))
                .collect())
        }
    }
}

/// Integrates `sys` from `y0`.
///
/// Leaving the domain truncates the trajectory; any other failure, including
/// a non-finite state, is an error.
pub fn integrate<T: Real, S: OdeSystem<T> + ?Sized>(
    sys: &S,
    y0: &[T],
    settings: &IntegratorSettings<T>,
) -> Result<Trajectory<T>> {
    settings.validate()?;
    if y0.len() != sys.dim() {
        return Err(Error::InvalidParameter {
            name: "initial",
            reason: format!("state has {} entries, model needs {}", y0.len(), sys.dim()),
        });
    }
    if !y0.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFiniteState { step: 0 });
    }
    sys.check_state(y0)?;
    let capacity = settings.n_steps / settings.sample_every + 1;
    let mut traj = Trajectory {
        times: Vec::with_capacity(capacity),
        states: Vec::with_capacity(capacity),
        monitors: Vec::new(),
        status: Status::Complete,
        dt: settings.dt,
        sample_every: settings.sample_every,
    };
    let record = |traj: &mut Trajectory<T>, n: usize, y: &[T]| -> Result<()> {
        if settings.monitors {
            traj.monitors.push(sys.monitor(y)?);
        }
        traj.times
            .push(T::from_usize(n).unwrap_or_else(T::nan) * settings.dt);
        traj.states.push(y.to_vec());
        Ok(())
    };
    record(&mut traj, 0, y0)?;
    let mut y = y0.to_vec();
    for n in 0..settings.n_steps {
        let next = step(sys, &y, settings.dt, settings.scheme).and_then(|next| {
            if !next.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFiniteState { step: n + 1 });
            }
            sys.check_state(&next)?;
            Ok(next)
        });
        y = match next {
            Ok(next) => next,
            Err(e) if is_domain(&e) => {
                traj.status = Status::Truncated { step: n, error: e };
                return Ok(traj);
            }
            Err(e) => return Err(e),
        };
        if (n + 1) % settings.sample_every == 0 {
            record(&mut traj, n + 1, &y)?;
        }
    }
    Ok(traj)
}

/// Signed geodesic curvature `⟨D_tγ̇, Jγ̇⟩_g / |γ̇|³_g`, positive when the
/// curve turns left.
pub fn geodesic_curvature_monitor<T: Real>(
    chart: &SurfaceChart<T>,
    state: &ReducedState<T>,
    accel: &Vec2<T>,
) -> Result<T> {
    let jet = geometry_jet(chart, state.x)?;
    let speed = jet.norm(&state.v);
    if !(speed > T::lit(CURVATURE_SPEED_FLOOR)) {
        return Err(Error::SpeedFloor {
            speed: speed.to_f64_lossy(),
        });
    }
    let dv = jet.covariant_acceleration(&state.v, accel);
    let jv = rotate90(&jet, &state.v)?;
    Ok(jet.inner(&dv, &jv) / (speed * speed * speed))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Oscillator;

    impl OdeSystem<f64> for Oscillator {
        fn dim(&self) -> usize {
            2
        }
        fn derivative(&self, y: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![y[1], -y[0]])
        }
    }

    fn error_at_one(dt: f64, scheme: Scheme) -> f64 {
        let n = (1.0 / dt).round() as usize;
        let s = IntegratorSettings::new(dt, n)
            .unwrap()
            .with_scheme(scheme)
            .with_monitors(false);
        let t = integrate(&Oscillator, &[1.0, 0.0], &s).unwrap();
        let y = t.last_state().unwrap();
        ((y[0] - 1f64.cos()).powi(2) + (y[1] + 1f64.sin()).powi(2)).sqrt()
    }

    #[test]
    fn rk4_is_fourth_order() {
        let ratio = error_at_one(0.02, Scheme::Rk4) / error_at_one(0.01, Scheme::Rk4);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn midpoint_is_second_order() {
        let ratio = error_at_one(0.02, Scheme::Midpoint) / error_at_one(0.01, Scheme::Midpoint);
        assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn sampling_grid() {
        let s = IntegratorSettings::new(0.1, 10)
            .unwrap()
            .with_sample_every(3)
            .with_monitors(false);
        let t = integrate(&Oscillator, &[1.0, 0.0], &s).unwrap();
        assert_eq!(t.len(), 4);
        assert!((t.times[3] - 0.9).abs() < 1e-15);
        assert_eq!(t.status, Status::Complete);
    }

    #[test]
    fn invalid_settings() {
        assert!(IntegratorSettings::new(0.0, 10).is_err());
        assert!(IntegratorSettings::new(0.1, 0).is_err());
        let s = IntegratorSettings::new(0.1, 1)
            .unwrap()
            .with_sample_every(0);
        assert!(s.validate().is_err());
    }

    struct Blowup;

    impl OdeSystem<f64> for Blowup {
        fn dim(&self) -> usize {
            1
        }
        fn derivative(&self, y: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![y[0] * y[0] * 1e200])
        }
    }

    #[test]
    fn overflow_is_an_error() {
        let s = IntegratorSettings::new(1.0, 5)
            .unwrap()
            .with_monitors(false);
        assert!(matches!(
            integrate(&Blowup, &[1e200], &s),
            Err(Error::NonFiniteState { .. })
        ));
    }

    #[test]
    fn latitude_curvature() {
        let chart = SurfaceChart::sphere(1.0).unwrap();
        let x1 = std::f64::consts::FRAC_PI_3;
        let state = ReducedState {
            x: [x1, 0.0],
            v: [0.0, 1.0],
        };
        let k = geodesic_curvature_monitor(&chart, &state, &[0.0, 0.0]).unwrap();
        assert!((k.abs() - 1.0 / x1.tan()).abs() < 1e-12);
        let slow = ReducedState {
            x: [x1, 0.0],
            v: [0.0, 1e-12],
        };
        assert!(matches!(
            geodesic_curvature_monitor(&chart, &slow, &[0.0, 0.0]),
            Err(Error::SpeedFloor { .. })
        ));
    }
}
