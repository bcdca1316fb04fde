//! Gauss–Legendre quadrature on intervals and tensor-product rectangles.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// `n`-point rule. Nodes are found by Newton iteration on `P_n` in `f64`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d.is_finite() {
                dp = d;
            }
            nodes.push(T::lit(x));
            weights.push(T::lit(2.0 / ((1.0 - x * x) * dp * dp)));
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes mapped to `[a, b]`, paired with their scaled weights.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = T::lit(0.5);
        let mid = (a + b) * half;
        let rad = (b - a) * half;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + rad * x, w * rad))
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        self.mapped(a, b)
            .fold(T::zero(), |acc, (x, w)| acc + w * f(x))
    }

    /// Tensor-product rule over `[a1, b1] × [a2, b2]`.
    pub fn integrate_2d<F: FnMut(T, T) -> T>(&self, mut f: F, a1: T, b1: T, a2: T, b2: T) -> T {
        let mut acc = T::zero();
        for (x, wx) in self.mapped(a1, b1) {
            for (y, wy) in self.mapped(a2, b2) {
                acc += wx * wy * f(x, y);
            }
        }
        acc
    }
}

/// `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates with `n` and `2n` points and fails if they disagree beyond
/// `tol · max(1, |I|)`. A fallible integrand aborts the whole integral.
pub fn integrate_checked<T: Real, F: FnMut(T) -> Result<T>>(
    mut f: F,
    a: T,
    b: T,
    n: usize,
    tol: T,
) -> Result<T> {
    let coarse = GaussLegendre::<T>::new(n);
    let fine = GaussLegendre::<T>::new(2 * n);
    let mut sum = |rule: &GaussLegendre<T>| -> Result<T> {
        let mut acc = T::zero();
        for (x, w) in rule.mapped(a, b) {
            acc += w * f(x)?;
        }
        Ok(acc)
    };
    let i1 = sum(&coarse)?;
    let i2 = sum(&fine)?;
    if !i2.is_finite() || (i2 - i1).abs() > tol * T::one().max(i2.abs()) {
        return Err(Error::Quadrature(format!(
            "{n}-point and {}-point rules disagree: {} vs {}",
            2 * n,
            i1.to_f64_lossy(),
            i2.to_f64_lossy()
        )));
    }
    Ok(i2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::<f64>::new(5);
        let got = rule.integrate(|x| x.powi(9) + 3.0 * x.powi(4), -1.0, 2.0);
        let exact = (2f64.powi(10) - 1.0) / 10.0 + 3.0 * (2f64.powi(5) + 1.0) / 5.0;
        assert!((got - exact).abs() < 1e-11, "{got} {exact}");
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 7, 20, 40] {
            let rule = GaussLegendre::<f64>::new(n);
            let s: f64 = rule.mapped(0.0, 3.0).map(|(_, w)| w).sum();
            assert!((s - 3.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn checked_rejects_unresolved_integrand() {
        let r = integrate_checked(|x: f64| Ok((200.0 * x).sin()), 0.0, 1.0, 4, 1e-10);
        assert!(matches!(r, Err(Error::Quadrature(_))));
        let ok = integrate_checked(|x: f64| Ok(x.sin()), 0.0, 1.0, 8, 1e-10).unwrap();
        assert!((ok - (1.0 - 1f64.cos())).abs() < 1e-14);
    }
}
