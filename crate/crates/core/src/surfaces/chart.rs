use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::linalg::{Mat2, Vec2, Vec3};
use crate::scalar::{central_diff, central_diff2, scaled_step, Real};

/// Built-in surfaces and metric/embedding expressions for custom ones.
#[derive(Debug, Clone, PartialEq)]
pub enum ChartKind<T> {
    /// `r = (x1, x2, 0)`.
    Plane,
    /// `x1` colatitude, `x2` longitude: `ds² = R² dx1² + R² sin²x1 dx2²`.
    Sphere {
        radius: T,
    },
    /// `x1` angle around the tube (0 on the outer equator), `x2` angle around
    /// the axis: `ds² = r² dx1² + (R0 + r cos x1)² dx2²`.
    Torus {
        major: T,
        minor: T,
    },
    /// `x1` angle, `x2` height: `ds² = r² dx1² + dx2²`.
    Cylinder {
        radius: T,
    },
    /// Graph `z = κ x1 x2`; the coordinates are not orthogonal.
    Saddle {
        kappa: T,
    },
    Custom(CustomChart),
}

/// Orthogonal metric `a11 dx1² + a22 dx2²` given by expressions, with an
/// optional embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomChart {
    pub a11: Expr,
    pub a22: Expr,
    pub embedding: Option<[Expr; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    Analytic,
    /// 4th-order central differences with step `base · (1 + |x|)`.
    FiniteDifference {
        base: f64,
    },
}

/// Deliberate convention faults, used to check that the verification battery
/// notices a wrong sign or a missing factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Negate the geodesic curvature `k2` of the `x1 = const` lines.
    FlipK2Sign,
    /// Drop the `√(a11·a22)` factor from the gyroscopic covector.
    DropAreaFactor,
    /// Report `|K|` instead of `K`.
    AbsCurvature,
}

impl Mutation {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(Self::None),
            "flip-k2" => Some(Self::FlipK2Sign),
            "drop-area-factor" => Some(Self::DropAreaFactor),
            "abs-curvature" => Some(Self::AbsCurvature),
            _ => None,
        }
    }
}

/// Coordinate rectangle with per-axis periodicity.
///
/// `guard` shrinks the admissible interval at both ends of an axis where the
/// metric degenerates (the sphere's poles).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    pub lo: Vec2<T>,
    pub hi: Vec2<T>,
    pub periodic: [bool; 2],
    pub guard: Vec2<T>,
}

pub const POLE_GUARD: f64 = 1e-3;
const FAR: f64 = 1e3;

impl<T: Real> Domain<T> {
    pub fn new(lo: Vec2<T>, hi: Vec2<T>, periodic: [bool; 2]) -> Result<Self> {
        for i in 0..2 {
            if !(lo[i].is_finite() && hi[i].is_finite() && lo[i] < hi[i]) {
                return Err(Error::InvalidParameter {
                    name: "domain",
                    reason: format!(
                        "axis {} needs finite lo < hi, got [{}, {}]",
                        i + 1,
                        lo[i],
                        hi[i]
                    ),
                });
            }
        }
        Ok(Self {
            lo,
            hi,
            periodic,
            guard: [T::zero(); 2],
        })
    }

    fn unbounded() -> Self {
        let far = T::lit(FAR);
        Self {
            lo: [-far, -far],
            hi: [far, far],
            periodic: [false; 2],
            guard: [T::zero(); 2],
        }
    }

    pub fn period(&self, axis: usize) -> Option<T> {
        self.periodic[axis].then(|| self.hi[axis] - self.lo[axis])
    }

    /// Wraps periodic coordinates into `[lo, hi)`.
    pub fn wrap(&self, x: Vec2<T>) -> Vec2<T> {
        let mut out = x;
        for i in 0..2 {
            if self.periodic[i] && x[i].is_finite() {
                let p = self.hi[i] - self.lo[i];
                let mut y = (x[i] - self.lo[i]) % p;
                if y < T::zero() {
                    y += p;
                }
                out[i] = self.lo[i] + y;
            }
        }
        out
    }

    pub fn contains(&self, x: Vec2<T>) -> bool {
        self.check(x).is_ok()
    }

    /// Wraps `x` and verifies it lies inside the guarded rectangle.
    pub fn check(&self, x: Vec2<T>) -> Result<Vec2<T>> {
        let domain_err = |reason: String| Error::Domain {
            x1: x[0].to_f64_lossy(),
            x2: x[1].to_f64_lossy(),
            reason,
        };
        if !(x[0].is_finite() && x[1].is_finite()) {
            return Err(domain_err("non-finite coordinate".into()));
        }
        let w = self.wrap(x);
        for i in 0..2 {
            if self.periodic[i] {
                continue;
            }
            let lo = self.lo[i] + self.guard[i];
            let hi = self.hi[i] - self.guard[i];
            if w[i] < lo || w[i] > hi {
                let why = if self.guard[i] > T::zero() {
                    format!(
                        "x{} = {} within pole guard of [{}, {}]",
                        i + 1,
                        w[i],
                        self.lo[i],
                        self.hi[i]
                    )
                } else {
                    format!("x{} = {} outside [{}, {}]", i + 1, w[i], lo, hi)
                };
                return Err(domain_err(why));
            }
        }
        Ok(w)
    }
}

/// Metric value with first and second coordinate partials.
///
/// `d[k]` is `∂g/∂x_k`; `d2[k][l]` is `∂²g/∂x_k∂x_l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricJet<T> {
    pub g: Mat2<T>,
    pub d: [Mat2<T>; 2],
    pub d2: [[Mat2<T>; 2]; 2],
}

/// Embedding value with first and second partials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingJet<T> {
    pub r: Vec3<T>,
    pub d: [Vec3<T>; 2],
    pub d2: [[Vec3<T>; 2]; 2],
}

/// A parametric surface patch.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceChart<T> {
    kind: ChartKind<T>,
    domain: Domain<T>,
    mode: DerivativeMode,
    mutation: Mutation,
}

impl<T: Real> SurfaceChart<T> {
    pub fn plane() -> Self {
        Self::builtin(ChartKind::Plane, Domain::unbounded())
    }

    pub fn sphere(radius: T) -> Result<Self> {
        crate::error::require_positive("R", radius.to_f64_lossy())?;
        let mut domain = Domain::new([T::zero(), T::zero()], [T::PI(), T::TAU()], [false, true])?;
        domain.guard = [T::lit(POLE_GUARD), T::zero()];
        Ok(Self::builtin(ChartKind::Sphere { radius }, domain))
    }

    pub fn torus(major: T, minor: T) -> Result<Self> {
        crate::error::require_positive("R0", major.to_f64_lossy())?;
        crate::error::require_positive("r", minor.to_f64_lossy())?;
        if minor >= major {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: "tube radius must be smaller than R0".into(),
            });
        }
        let domain = Domain::new([T::zero(); 2], [T::TAU(), T::TAU()], [true, true])?;
        Ok(Self::builtin(ChartKind::Torus { major, minor }, domain))
    }

    pub fn cylinder(radius: T) -> Result<Self> {
        crate::error::require_positive("r", radius.to_f64_lossy())?;
        let far = T::lit(FAR);
        let domain = Domain::new([T::zero(), -far], [T::TAU(), far], [true, false])?;
        Ok(Self::builtin(ChartKind::Cylinder { radius }, domain))
    }

    pub fn saddle(kappa: T) -> Result<Self> {
        crate::error::require_finite("kappa", kappa.to_f64_lossy())?;
        Ok(Self::builtin(
            ChartKind::Saddle { kappa },
            Domain::unbounded(),
        ))
    }

    /// Custom orthogonal chart. Always uses finite differences. The metric is
    /// checked for positivity on a 9×9 grid over the domain.
    pub fn custom(custom: CustomChart, domain: Domain<T>, fd_base: Option<f64>) -> Result<Self> {
        let base = fd_base.unwrap_or(T::FD_STEP);
        crate::error::require_positive("fd_step", base)?;
        let chart = Self {
            kind: ChartKind::Custom(custom),
            domain,
            mode: DerivativeMode::FiniteDifference { base },
            mutation: Mutation::None,
        };
        let n = 9;
        for i in 0..n {
            for j in 0..n {
                let t = |k: usize, axis: usize| {
                    let f = T::lit(k as f64 / (n - 1) as f64);
                    domain.lo[axis]
                        + domain.guard[axis]
                        + f * (domain.hi[axis] - domain.lo[axis] - T::lit(2.0) * domain.guard[axis])
                };
                let x = [t(i, 0), t(j, 1)];
                let g = chart.metric(x);
                let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                if !(det > T::zero() && g[0][0] + g[1][1] > T::zero()) {
                    return Err(Error::DegenerateMetric {
                        x1: x[0].to_f64_lossy(),
                        x2: x[1].to_f64_lossy(),
                        det: det.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(chart)
    }

    fn builtin(kind: ChartKind<T>, domain: Domain<T>) -> Self {
        Self {
            kind,
            domain,
            mode: DerivativeMode::Analytic,
            mutation: Mutation::None,
        }
    }

    /// Switches a built-in chart to finite-difference derivatives.
    pub fn with_finite_differences(mut self, base: f64) -> Self {
        self.mode = DerivativeMode::FiniteDifference { base };
        self
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn kind(&self) -> &ChartKind<T> {
        &self.kind
    }

    pub fn domain(&self) -> &Domain<T> {
        &self.domain
    }

    pub fn derivative_mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ChartKind::Plane => "plane",
            ChartKind::Sphere { .. } => "sphere",
            ChartKind::Torus { .. } => "torus",
            ChartKind::Cylinder { .. } => "cylinder",
            ChartKind::Saddle { .. } => "saddle",
            ChartKind::Custom(_) => "custom",
        }
    }

    /// True iff `a12 ≡ 0` on the domain.
    pub fn is_orthogonal(&self) -> bool {
        !matches!(self.kind, ChartKind::Saddle { .. })
    }

    pub fn has_embedding(&self) -> bool {
        match &self.kind {
            ChartKind::Custom(c) => c.embedding.is_some(),
            _ => true,
        }
    }

    /// Metric coefficients at `x` (no domain check).
    pub fn metric(&self, x: Vec2<T>) -> Mat2<T> {
        let z = T::zero();
        let one = T::one();
        let [x1, x2] = x;
        match &self.kind {
            ChartKind::Plane => [[one, z], [z, one]],
            ChartKind::Sphere { radius } => {
                let r2 = *radius * *radius;
                let s = x1.sin();
                [[r2, z], [z, r2 * s * s]]
            }
            ChartKind::Torus { major, minor } => {
                let rho = *major + *minor * x1.cos();
                [[*minor * *minor, z], [z, rho * rho]]
            }
            ChartKind::Cylinder { radius } => [[*radius * *radius, z], [z, one]],
            ChartKind::Saddle { kappa } => {
                let k2 = *kappa * *kappa;
                let off = k2 * x1 * x2;
                [[one + k2 * x2 * x2, off], [off, one + k2 * x1 * x1]]
            }
            ChartKind::Custom(c) => [[c.a11.eval(x1, x2), z], [z, c.a22.eval(x1, x2)]],
        }
    }

    /// Embedding point at `x`, if the chart has one.
    pub fn embedding(&self, x: Vec2<T>) -> Option<Vec3<T>> {
        let [x1, x2] = x;
        Some(match &self.kind {
            ChartKind::Plane => [x1, x2, T::zero()],
            ChartKind::Sphere { radius } => {
                let s = x1.sin();
                [
                    *radius * s * x2.cos(),
                    *radius * s * x2.sin(),
                    *radius * x1.cos(),
                ]
            }
            ChartKind::Torus { major, minor } => {
                let rho = *major + *minor * x1.cos();
                [rho * x2.cos(), rho * x2.sin(), *minor * x1.sin()]
            }
            ChartKind::Cylinder { radius } => [*radius * x1.cos(), *radius * x1.sin(), x2],
            ChartKind::Saddle { kappa } => [x1, x2, *kappa * x1 * x2],
            ChartKind::Custom(c) => {
                let e = c.embedding.as_ref()?;
                [e[0].eval(x1, x2), e[1].eval(x1, x2), e[2].eval(x1, x2)]
            }
        })
    }

    pub(crate) fn metric_jet(&self, x: Vec2<T>) -> MetricJet<T> {
        match self.mode {
            DerivativeMode::Analytic => match self.analytic_metric_jet(x) {
                Some(j) => j,
                None => self.fd_metric_jet(x, T::FD_STEP),
            },
            DerivativeMode::FiniteDifference { base } => self.fd_metric_jet(x, base),
        }
    }

    pub(crate) fn embedding_jet(&self, x: Vec2<T>) -> Option<EmbeddingJet<T>> {
        if !self.has_embedding() {
            return None;
        }
        match self.mode {
            DerivativeMode::Analytic => self
                .analytic_embedding_jet(x)
                .or_else(|| self.fd_embedding_jet(x, T::FD_STEP)),
            DerivativeMode::FiniteDifference { base } => self.fd_embedding_jet(x, base),
        }
    }

    /// First-derivative step at `x` along `axis` under the chart's mode.
    pub(crate) fn fd_step(&self, x: Vec2<T>, axis: usize) -> T {
        let base = match self.mode {
            DerivativeMode::FiniteDifference { base } => base,
            DerivativeMode::Analytic => T::FD_STEP,
        };
        scaled_step(base, x[axis])
    }

    /// Second-derivative step: the first-derivative base scaled up by the same
    /// ratio that separates the two type defaults.
    pub(crate) fn fd_step_second(&self, x: Vec2<T>, axis: usize) -> T {
        let base = match self.mode {
            DerivativeMode::FiniteDifference { base } => base,
            DerivativeMode::Analytic => T::FD_STEP,
        };
        scaled_step(base * (T::FD_STEP_SECOND / T::FD_STEP), x[axis])
    }

    fn fd_metric_jet(&self, x: Vec2<T>, base: f64) -> MetricJet<T> {
        let h1 = [scaled_step(base, x[0]), scaled_step(base, x[1])];
        let ratio = T::FD_STEP_SECOND / T::FD_STEP;
        let h2 = [
            scaled_step(base * ratio, x[0]),
            scaled_step(base * ratio, x[1]),
        ];
        let g = self.metric(x);
        let mut d = [[[T::zero(); 2]; 2]; 2];
        let mut d2 = [[[[T::zero(); 2]; 2]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let comp = |p: Vec2<T>| self.metric(p)[a][b];
                d[0][a][b] = central_diff(|s| comp([s, x[1]]), x[0], h1[0]);
                d[1][a][b] = central_diff(|s| comp([x[0], s]), x[1], h1[1]);
                d2[0][0][a][b] = central_diff2(|s| comp([s, x[1]]), x[0], h2[0]);
                d2[1][1][a][b] = central_diff2(|s| comp([x[0], s]), x[1], h2[1]);
                let mixed =
                    central_diff(|s| central_diff(|t| comp([s, t]), x[1], h2[1]), x[0], h2[0]);
                d2[0][1][a][b] = mixed;
                d2[1][0][a][b] = mixed;
            }
        }
        MetricJet { g, d, d2 }
    }

    fn fd_embedding_jet(&self, x: Vec2<T>, base: f64) -> Option<EmbeddingJet<T>> {
        let r = self.embedding(x)?;
        let h1 = [scaled_step(base, x[0]), scaled_step(base, x[1])];
        let ratio = T::FD_STEP_SECOND / T::FD_STEP;
        let h2 = [
            scaled_step(base * ratio, x[0]),
            scaled_step(base * ratio, x[1]),
        ];
        let mut d = [[T::zero(); 3]; 2];
        let mut d2 = [[[T::zero(); 3]; 2]; 2];
        for c in 0..3 {
            let comp = |p: Vec2<T>| self.embedding(p).map(|v| v[c]).unwrap_or(T::nan());
            d[0][c] = central_diff(|s| comp([s, x[1]]), x[0], h1[0]);
            d[1][c] = central_diff(|s| comp([x[0], s]), x[1], h1[1]);
            d2[0][0][c] = central_diff2(|s| comp([s, x[1]]), x[0], h2[0]);
            d2[1][1][c] = central_diff2(|s| comp([x[0], s]), x[1], h2[1]);
            let mixed = central_diff(|s| central_diff(|t| comp([s, t]), x[1], h2[1]), x[0], h2[0]);
            d2[0][1][c] = mixed;
            d2[1][0][c] = mixed;
        }
        Some(EmbeddingJet { r, d, d2 })
    }

    fn analytic_metric_jet(&self, x: Vec2<T>) -> Option<MetricJet<T>> {
        let z = T::zero();
        let zero_m = [[z; 2]; 2];
        let two = T::lit(2.0);
        let [x1, x2] = x;
        let g = self.metric(x);
        let mut d = [zero_m; 2];
        let mut d2 = [[zero_m; 2]; 2];
        match &self.kind {
            ChartKind::Plane | ChartKind::Cylinder { .. } => {}
            ChartKind::Sphere { radius } => {
                let r2 = *radius * *radius;
                d[0][1][1] = r2 * (two * x1).sin();
                d2[0][0][1][1] = two * r2 * (two * x1).cos();
            }
            ChartKind::Torus { major, minor } => {
                let (s, c) = x1.sin_cos();
                let rho = *major + *minor * c;
                d[0][1][1] = -two * *minor * rho * s;
                d2[0][0][1][1] = two * *minor * *minor * s * s - two * *minor * rho * c;
            }
            ChartKind::Saddle { kappa } => {
                let k2 = *kappa * *kappa;
                d[0] = [[z, k2 * x2], [k2 * x2, two * k2 * x1]];
                d[1] = [[two * k2 * x2, k2 * x1], [k2 * x1, z]];
                d2[0][0] = [[z, z], [z, two * k2]];
                d2[0][1] = [[z, k2], [k2, z]];
                d2[1][0] = d2[0][1];
                d2[1][1] = [[two * k2, z], [z, z]];
            }
            ChartKind::Custom(_) => return None,
        }
        Some(MetricJet { g, d, d2 })
    }

    fn analytic_embedding_jet(&self, x: Vec2<T>) -> Option<EmbeddingJet<T>> {
        let z = T::zero();
        let one = T::one();
        let zv = [z; 3];
        let [x1, x2] = x;
        let r = self.embedding(x)?;
        let (d, d2) = match &self.kind {
            ChartKind::Plane => ([[one, z, z], [z, one, z]], [[zv; 2]; 2]),
            ChartKind::Sphere { radius } => {
                let rr = *radius;
                let (s, c) = x1.sin_cos();
                let (s2, c2) = x2.sin_cos();
                let r1 = [rr * c * c2, rr * c * s2, -rr * s];
                let r2 = [-rr * s * s2, rr * s * c2, z];
                let r11 = [-rr * s * c2, -rr * s * s2, -rr * c];
                let r12 = [-rr * c * s2, rr * c * c2, z];
                let r22 = [-rr * s * c2, -rr * s * s2, z];
                ([r1, r2], [[r11, r12], [r12, r22]])
            }
            ChartKind::Torus { major, minor } => {
                let (s, c) = x1.sin_cos();
                let (sv, cv) = x2.sin_cos();
                let rho = *major + *minor * c;
                let m = *minor;
                let r1 = [-m * s * cv, -m * s * sv, m * c];
                let r2 = [-rho * sv, rho * cv, z];
                let r11 = [-m * c * cv, -m * c * sv, -m * s];
                let r12 = [m * s * sv, -m * s * cv, z];
                let r22 = [-rho * cv, -rho * sv, z];
                ([r1, r2], [[r11, r12], [r12, r22]])
            }
            ChartKind::Cylinder { radius } => {
                let (s, c) = x1.sin_cos();
                let rr = *radius;
                let r1 = [-rr * s, rr * c, z];
                let r2 = [z, z, one];
                let r11 = [-rr * c, -rr * s, z];
                ([r1, r2], [[r11, zv], [zv, zv]])
            }
            ChartKind::Saddle { kappa } => {
                let k = *kappa;
                let r1 = [one, z, k * x2];
                let r2 = [z, one, k * x1];
                let r12 = [z, z, k];
                ([r1, r2], [[zv, r12], [r12, zv]])
            }
            ChartKind::Custom(_) => return None,
        };
        Some(EmbeddingJet { r, d, d2 })
    }
}
