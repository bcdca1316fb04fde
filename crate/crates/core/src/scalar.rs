//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point scalar the geometry and dynamics are generic over.
///
/// Implemented for `f32` and `f64`. The finite-difference steps are tied to
/// the precision of the type: a step that is well balanced between truncation
/// and round-off for `f64` is far too small for `f32`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative step for first derivatives by 4th-order central differences.
    const FD_STEP: f64;
    /// Relative step for second derivatives by 4th-order central differences.
    const FD_STEP_SECOND: f64;

    /// Converts an `f64` literal. Every finite `f64` is representable (possibly
    /// rounded) in both implementors, so this never fails for literals.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const FD_STEP: f64 = 5e-3;
    const FD_STEP_SECOND: f64 = 3e-2;
}

impl Real for f64 {
    const FD_STEP: f64 = 1e-5;
    const FD_STEP_SECOND: f64 = 1e-3;
}

/// Step `h = base * (1 + |x|)` used by all finite-difference helpers.
#[inline]
pub(crate) fn scaled_step<T: Real>(base: f64, x: T) -> T {
    T::lit(base) * (T::one() + x.abs())
}

/// 4th-order central first derivative of `f` at `x` with step `h`.
#[inline]
pub(crate) fn central_diff<T: Real, F: FnMut(T) -> T>(mut f: F, x: T, h: T) -> T {
    let two = T::lit(2.0);
    let eight = T::lit(8.0);
    let twelve = T::lit(12.0);
    (f(x - two * h) - eight * f(x - h) + eight * f(x + h) - f(x + two * h)) / (twelve * h)
}

/// [`central_diff`] for a fallible function; the first error aborts.
pub(crate) fn try_central_diff<T: Real, E, F: FnMut(T) -> Result<T, E>>(
    mut f: F,
    x: T,
    h: T,
) -> Result<T, E> {
    let two = T::lit(2.0);
    let eight = T::lit(8.0);
    let twelve = T::lit(12.0);
    Ok((f(x - two * h)? - eight * f(x - h)? + eight * f(x + h)? - f(x + two * h)?) / (twelve * h))
}

/// 4th-order central second derivative of `f` at `x` with step `h`.
#[inline]
pub(crate) fn central_diff2<T: Real, F: FnMut(T) -> T>(mut f: F, x: T, h: T) -> T {
    let two = T::lit(2.0);
    let sixteen = T::lit(16.0);
    let thirty = T::lit(30.0);
    let twelve = T::lit(12.0);
    (-f(x - two * h) + sixteen * f(x - h) - thirty * f(x) + sixteen * f(x + h) - f(x + two * h))
        / (twelve * h * h)
}
