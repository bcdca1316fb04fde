use crate::linalg::Vec2;
use crate::scalar::Real;

/// Phase-space point of the full disk (or the top, with `theta` the Euler spin angle).
///
/// Flattened as `[x1, x2, v1, v2, theta, theta_dot]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FullState<T> {
    pub x: Vec2<T>,
    pub v: Vec2<T>,
    pub theta: T,
    pub theta_dot: T,
}

/// Phase-space point of the reduced models. Flattened as `[x1, x2, v1, v2]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReducedState<T> {
    pub x: Vec2<T>,
    pub v: Vec2<T>,
}

impl<T: Real> FullState<T> {
    pub const DIM: usize = 6;

    pub fn to_vec(&self) -> Vec<T> {
        vec![
            self.x[0],
            self.x[1],
            self.v[0],
            self.v[1],
            self.theta,
            self.theta_dot,
        ]
    }

    /// Reads the first six entries of `y`.
    pub fn from_slice(y: &[T]) -> Self {
        Self {
            x: [y[0], y[1]],
            v: [y[2], y[3]],
            theta: y[4],
            theta_dot: y[5],
        }
    }

    pub fn reduced(&self) -> ReducedState<T> {
        ReducedState {
            x: self.x,
            v: self.v,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_vec().iter().all(|v| v.is_finite())
    }
}

impl<T: Real> ReducedState<T> {
    pub const DIM: usize = 4;

    pub fn to_vec(&self) -> Vec<T> {
        vec![self.x[0], self.x[1], self.v[0], self.v[1]]
    }

    pub fn from_slice(y: &[T]) -> Self {
        Self {
            x: [y[0], y[1]],
            v: [y[2], y[3]],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.v.iter()).all(|v| v.is_finite())
    }
}
