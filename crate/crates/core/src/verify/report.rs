use std::fmt;

use crate::scalar::Real;

/// Summary of a residual or deviation series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport<T> {
    pub max_abs: T,
    pub rms: T,
    /// Sample index of the largest residual.
    pub location: usize,
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Real> ResidualReport<T> {
    /// Builds a report from `(index, residual)` pairs. An empty series passes
    /// with zero residual; a NaN anywhere fails.
    pub fn from_samples<I: IntoIterator<Item = (usize, T)>>(samples: I, tolerance: T) -> Self {
        let mut max_abs = T::zero();
        let mut sum_sq = T::zero();
        let mut location = 0;
        let mut count = 0usize;
        let mut saw_nan = false;
        for (i, r) in samples {
            let a = r.abs();
            if a.is_nan() {
                saw_nan = true;
                location = i;
                continue;
            }
            if a > max_abs || count == 0 {
                max_abs = a;
                location = i;
            }
            sum_sq += a * a;
            count += 1;
        }
        if saw_nan {
            max_abs = T::nan();
        }
        let rms = if count == 0 {
            T::zero()
        } else {
            (sum_sq / T::from_usize(count).unwrap_or_else(T::one)).sqrt()
        };
        Self {
            max_abs,
            rms,
            location,
            tolerance,
            pass: max_abs <= tolerance,
        }
    }
}

/// One line of a verification suite: `name,status,max_abs,rms,tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub max_abs: f64,
    pub rms: f64,
    pub tolerance: f64,
    /// Error that prevented the check from running.
    pub error: Option<String>,
}

impl CheckResult {
    pub fn from_report<T: Real>(name: &str, report: &ResidualReport<T>) -> Self {
        Self {
            name: name.to_string(),
            pass: report.pass,
            max_abs: report.max_abs.to_f64_lossy(),
            rms: report.rms.to_f64_lossy(),
            tolerance: report.tolerance.to_f64_lossy(),
            error: None,
        }
    }

    pub fn failed(name: &str, tolerance: f64, error: impl ToString) -> Self {
        Self {
            name: name.to_string(),
            pass: false,
            max_abs: f64::NAN,
            rms: f64::NAN,
            tolerance,
            error: Some(error.to_string()),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{:.6e},{:.6e},{:.1e}",
            self.name,
            if self.pass { "pass" } else { "fail" },
            self.max_abs,
            self.rms,
            self.tolerance
        )
    }
}
