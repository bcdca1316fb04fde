//! Built-in verification batteries over the standard charts.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::dynamics::{
    magnetic_geodesic_rhs, reduced_disk_rhs, top_to_sphere, DiametralForm, DiskParams, FullState,
    Model, ModelKind, Potential, ReducedDiskParams, ReducedState, TopParams,
};
use crate::error::Result;
use crate::integrate::{integrate, IntegratorSettings, Trajectory};
use crate::surfaces::{gauss_bonnet_patch_K, geometry_jet, rotate90, Mutation, SurfaceChart};

use super::compare::{compare_trajectories, DeviationMetric};
use super::holonomy::{holonomy_loop, ClosedLoop};
use super::identities::{
    hjh_identity, lemma2_residual, pullback_residual, shape_determinant_residual,
};
use super::oracle::el_residual_oracle;
use super::report::{CheckResult, ResidualReport};

const SEED: u64 = 0x005e_ed0f_d15c;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Geometry,
    Dynamics,
    Top,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Geometry, Suite::Dynamics, Suite::Top];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Dynamics => "dynamics",
            Suite::Top => "top",
        }
    }

    pub fn run(self, mutation: Mutation) -> Vec<CheckResult> {
        match self {
            Suite::Geometry => geometry_suite(mutation),
            Suite::Dynamics => dynamics_suite(mutation),
            Suite::Top => top_suite(mutation),
        }
    }
}

fn check(
    name: &str,
    tolerance: f64,
    f: impl FnOnce() -> Result<ResidualReport<f64>>,
) -> CheckResult {
    match f() {
        Ok(r) => CheckResult::from_report(name, &r),
        Err(e) => CheckResult::failed(name, tolerance, e),
    }
}

/// Order line: the value column holds the observed order and the tolerance
/// column the required minimum.
fn order_check(name: &str, min_order: f64, f: impl FnOnce() -> Result<f64>) -> CheckResult {
    match f() {
        Ok(order) => CheckResult {
            name: name.to_string(),
            pass: order >= min_order,
            max_abs: order,
            rms: order,
            tolerance: min_order,
            error: None,
        },
        Err(e) => CheckResult::failed(name, min_order, e),
    }
}

fn samples<F: FnMut(usize) -> Result<f64>>(
    n: usize,
    mut f: F,
    tolerance: f64,
) -> Result<ResidualReport<f64>> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push((i, f(i)?));
    }
    Ok(ResidualReport::from_samples(out, tolerance))
}

/// Orthogonal built-in charts with the coordinate box random points are drawn from.
pub fn orthogonal_charts(mutation: Mutation) -> Vec<(SurfaceChart<f64>, [[f64; 2]; 2])> {
    vec![
        (SurfaceChart::plane(), [[-3.0, 3.0], [-3.0, 3.0]]),
        (
            SurfaceChart::sphere(1.0).expect("valid radius"),
            [[0.1, PI - 0.1], [0.0, TAU]],
        ),
        (
            SurfaceChart::torus(2.0, 1.0).expect("valid radii"),
            [[0.0, TAU], [0.0, TAU]],
        ),
        (
            SurfaceChart::cylinder(1.0).expect("valid radius"),
            [[0.0, TAU], [-3.0, 3.0]],
        ),
    ]
    .into_iter()
    .map(|(c, b)| (c.with_mutation(mutation), b))
    .collect()
}

fn draw(rng: &mut StdRng, b: &[[f64; 2]; 2]) -> [f64; 2] {
    [
        rng.gen_range(b[0][0]..b[0][1]),
        rng.gen_range(b[1][0]..b[1][1]),
    ]
}

/// Largest residual of the curvature identity `∂2(k1√a11) − ∂1(k2√a22) = √(a11a22)·K` over `n` random points of every orthogonal chart.
pub fn lemma2_sweep(mutation: Mutation, n: usize, tolerance: f64) -> Result<ResidualReport<f64>> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (chart, b) in orthogonal_charts(mutation) {
        for _ in 0..n {
            let x = draw(&mut rng, &b);
            out.push((out.len(), lemma2_residual(&chart, x)?));
        }
    }
    Ok(ResidualReport::from_samples(out, tolerance))
}

pub fn geometry_suite(mutation: Mutation) -> Vec<CheckResult> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for _ in 0..100 {
        pts.push([rng.gen_range(0.1..PI - 0.1), rng.gen_range(0.0..TAU)]);
    }
    let mut out = vec![
        check("sphere_curvature", 1e-10, || {
            let mut r = Vec::new();
            for radius in [0.5, 1.0, 2.0] {
                let c = SurfaceChart::sphere(radius)?.with_mutation(mutation);
                for &x in &pts {
                    r.push((
                        r.len(),
                        geometry_jet(&c, x)?.gaussian_curvature - 1.0 / (radius * radius),
                    ));
                }
            }
            Ok(ResidualReport::from_samples(r, 1e-10))
        }),
        check("saddle_curvature_origin", 1e-10, || {
            let ks = [0.3, 0.5, 1.0];
            samples(
                ks.len(),
                |i| {
                    let c = SurfaceChart::saddle(ks[i])?.with_mutation(mutation);
                    Ok(geometry_jet(&c, [0.0, 0.0])?.gaussian_curvature + ks[i] * ks[i])
                },
                1e-10,
            )
        }),
        check("gauss_bonnet_patch_sphere", 1e-3, || {
            let c = SurfaceChart::sphere(1.0)?.with_mutation(mutation);
            samples(
                1,
                |_| Ok(gauss_bonnet_patch_K(&c, [FRAC_PI_2, 0.0], 0.01, 0.01)? - 1.0),
                1e-3,
            )
        }),
        check("gauss_bonnet_patch_torus", 1e-3, || {
            let c = SurfaceChart::torus(2.0, 1.0)?.with_mutation(mutation);
            let k = geometry_jet(&c, [0.0, 0.0])?.gaussian_curvature;
            samples(
                1,
                |_| Ok(gauss_bonnet_patch_K(&c, [0.0, 0.0], 0.01, 0.01)? - k),
                1e-3,
            )
        }),
        check("lemma2_identity", 1e-6, || {
            lemma2_sweep(mutation, 100, 1e-6)
        }),
        check("shape_operator_determinant", 1e-6, || {
            let mut charts = orthogonal_charts(mutation);
            charts.push((
                SurfaceChart::saddle(0.5)?.with_mutation(mutation),
                [[-2.0, 2.0], [-2.0, 2.0]],
            ));
            let mut r = Vec::new();
            let mut rng = StdRng::seed_from_u64(SEED + 1);
            for (c, b) in &charts {
                for _ in 0..20 {
                    r.push((r.len(), shape_determinant_residual(c, draw(&mut rng, b))?));
                }
            }
            Ok(ResidualReport::from_samples(r, 1e-6))
        }),
        check("pullback_metric", 1e-8, || {
            let mut charts = orthogonal_charts(mutation);
            charts.push((SurfaceChart::saddle(0.5)?, [[-2.0, 2.0], [-2.0, 2.0]]));
            let mut r = Vec::new();
            let mut rng = StdRng::seed_from_u64(SEED + 2);
            for (c, b) in &charts {
                for _ in 0..100 {
                    r.push((r.len(), pullback_residual(c, draw(&mut rng, b))?));
                }
            }
            Ok(ResidualReport::from_samples(r, 1e-8))
        }),
        check("rotate90_isometry", 1e-12, || {
            let mut charts = orthogonal_charts(mutation);
            charts.push((SurfaceChart::saddle(0.5)?, [[-2.0, 2.0], [-2.0, 2.0]]));
            let mut r = Vec::new();
            let mut rng = StdRng::seed_from_u64(SEED + 3);
            for (c, b) in &charts {
                for _ in 0..20 {
                    let jet = geometry_jet(c, draw(&mut rng, b))?;
                    let v = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
                    let jv = rotate90(&jet, &v)?;
                    let jjv = rotate90(&jet, &jv)?;
                    let scale = jet.inner(&v, &v).max(1e-300);
                    let e = (jet.inner(&jv, &v).abs() / scale)
                        .max((jet.inner(&jv, &jv) - jet.inner(&v, &v)).abs() / scale)
                        .max(jet.norm(&[jjv[0] + v[0], jjv[1] + v[1]]) / scale.sqrt());
                    r.push((r.len(), e));
                }
            }
            Ok(ResidualReport::from_samples(r, 1e-12))
        }),
        check("hjh_identity", 1e-12, || {
            let mut rng = StdRng::seed_from_u64(SEED + 4);
            samples(
                1000,
                |_| {
                    let (a, b, c): (f64, f64, f64) = (
                        rng.gen_range(-10.0..10.0),
                        rng.gen_range(-10.0..10.0),
                        rng.gen_range(-10.0..10.0),
                    );
                    let h = [[a, b], [b, c]];
                    let norm = f64::max(a.abs().max(b.abs()).max(c.abs()), 1e-300);
                    Ok(hjh_identity(&h)? / (norm * norm))
                },
                1e-12,
            )
        }),
        check("holonomy_latitude", 1e-6, || {
            let c = SurfaceChart::sphere(1.0)?.with_mutation(mutation);
            let h = holonomy_loop(&c, &ClosedLoop::Parallel { x1: FRAC_PI_3 }, 32)?;
            let r = [(0, h.holonomy - PI), (1, h.mismatch())];
            Ok(ResidualReport::from_samples(r, 1e-6))
        }),
        check("holonomy_rectangle", 1e-3, || {
            let c = SurfaceChart::sphere(1.0)?.with_mutation(mutation);
            let lp = ClosedLoop::Rectangle {
                corner: [FRAC_PI_2, 0.0],
                eps: 0.01,
                delta: 0.01,
            };
            let h = holonomy_loop(&c, &lp, 8)?;
            samples(1, |_| Ok(h.holonomy / h.enclosed_area - 1.0), 1e-3)
        }),
    ];
    out.shrink_to_fit();
    out
}

/// Unit sphere, equator start heading east, unit speed.
pub const EQUATOR_START: [f64; 4] = [FRAC_PI_2, 0.0, 0.0, 1.0];

fn run(model: &Model<f64>, y0: &[f64], dt: f64, n: usize) -> Result<Trajectory<f64>> {
    integrate(model, y0, &IntegratorSettings::new(dt, n)?)
}

fn relative_drift<F: Fn(usize) -> f64>(
    traj: &Trajectory<f64>,
    f: F,
    tolerance: f64,
) -> ResidualReport<f64> {
    let f0 = f(0);
    let scale = f0.abs().max(f64::MIN_POSITIVE);
    ResidualReport::from_samples((0..traj.len()).map(|i| (i, (f(i) - f0) / scale)), tolerance)
}

/// Geodesic-curvature law `k = L K / (m v)` along magnetic and reduced
/// (`I_d = 0`) orbits on the unit sphere with `m = 1`, `v = 1`, `L = 0.5`.
pub fn curvature_law(
    mutation: Mutation,
    reduced: bool,
    tolerance: f64,
) -> Result<ResidualReport<f64>> {
    let chart = SurfaceChart::sphere(1.0)?.with_mutation(mutation);
    let (mass, charge) = (1.0, 0.5);
    let kind = if reduced {
        ModelKind::ReducedDisk(ReducedDiskParams::new(mass, 0.0, charge)?)
    } else {
        ModelKind::Magnetic { mass, charge }
    };
    let model = Model::new(chart, kind, Potential::None)?;
    let traj = run(&model, &EQUATOR_START, 1e-3, 10_000)?;
    let expected = charge / mass;
    Ok(ResidualReport::from_samples(
        traj.monitors.iter().enumerate().map(|(i, m)| {
            let k = m.geodesic_curvature.unwrap_or(f64::NAN);
            let law = charge * m.gaussian_curvature / (mass * m.speed);
            // measured against both the closed form and the pointwise law
            (i, (k - expected).abs().max((k - law).abs()))
        }),
        tolerance,
    ))
}

/// Magnetic versus geodesic motion on the unit cylinder over `t ∈ [0, 10]`.
pub fn cylinder_null(mutation: Mutation, tolerance: f64) -> Result<ResidualReport<f64>> {
    let chart = SurfaceChart::cylinder(1.0)?.with_mutation(mutation);
    let y0 = [0.0, 0.0, 1.0, 0.5];
    let charged = Model::new(
        chart.clone(),
        ModelKind::Magnetic {
            mass: 1.0,
            charge: 0.5,
        },
        Potential::None,
    )?;
    let free = Model::new(chart, ModelKind::Geodesic { mass: 1.0 }, Potential::None)?;
    let a = run(&charged, &y0, 1e-3, 10_000)?;
    let b = run(&free, &y0, 1e-3, 10_000)?;
    compare_trajectories(&a, &b, DeviationMetric::CoordinateSup, tolerance)
}

/// Full disk on the unit sphere: `m = 1`, `I_a = 0.02`, `I_d = 0.01`,
/// equator start heading east at `speed` with `ω_a = 50`.
///
/// At unit speed the orbit grazes the pole; half speed keeps it above 36°
/// colatitude, where fixed steps stay accurate.
pub fn sphere_full_disk(mutation: Mutation, speed: f64) -> Result<(Model<f64>, Vec<f64>)> {
    let chart = SurfaceChart::sphere(1.0)?.with_mutation(mutation);
    let disk = DiskParams::new(1.0, 0.02, 0.01, 0.2)?;
    let model = Model::new(
        chart,
        ModelKind::FullDisk {
            disk,
            form: DiametralForm::ThirdForm,
        },
        Potential::None,
    )?;
    // f vanishes on the equator, so θ̇ = ω_a there
    let y0 = vec![FRAC_PI_2, 0.0, 0.0, speed, 0.0, 50.0];
    Ok((model, y0))
}

fn model_agreement(mutation: Mutation, tolerance: f64) -> Result<ResidualReport<f64>> {
    let mut rng = StdRng::seed_from_u64(SEED + 5);
    let charts = [
        (
            SurfaceChart::sphere(1.0)?.with_mutation(mutation),
            [[0.2, PI - 0.2], [0.0, TAU]],
        ),
        (
            SurfaceChart::torus(2.0, 1.0)?.with_mutation(mutation),
            [[0.0, TAU], [0.0, TAU]],
        ),
    ];
    let mut r = Vec::new();
    for (chart, b) in &charts {
        for _ in 0..100 {
            let s = ReducedState {
                x: draw(&mut rng, b),
                v: [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
            };
            let (m, l) = (rng.gen_range(0.5..2.0), rng.gen_range(-2.0..2.0));
            let p = ReducedDiskParams::new(m, 0.0, l)?;
            let a = reduced_disk_rhs(chart, &p, &Potential::None, &s)?;
            let b = magnetic_geodesic_rhs(chart, m, l, &Potential::None, &s)?;
            r.push((
                r.len(),
                (a.v[0] - b.v[0]).abs().max((a.v[1] - b.v[1]).abs()),
            ));
        }
    }
    Ok(ResidualReport::from_samples(r, tolerance))
}

/// Generic off-equator start for the residual oracle.
const OFF_AXIS: [f64; 4] = [1.2, 0.3, 0.4, 0.9];

/// The four model families on the unit sphere, ready for the residual oracle.
pub fn oracle_models(mutation: Mutation) -> Result<Vec<(&'static str, Model<f64>, Vec<f64>)>> {
    let sphere = SurfaceChart::sphere(1.0)?.with_mutation(mutation);
    let (full, _) = sphere_full_disk(mutation, 1.0)?;
    let mut full_y0 = OFF_AXIS.to_vec();
    let f2 = OFF_AXIS[0].cos();
    full_y0.extend([0.0, 50.0 - f2 * OFF_AXIS[3]]);
    let reduced = Model::new(
        sphere.clone(),
        ModelKind::ReducedDisk(ReducedDiskParams::new(1.0, 0.01, 1.0)?),
        Potential::AxisCosine { c: 0.3 },
    )?;
    let magnetic = Model::new(
        sphere,
        ModelKind::Magnetic {
            mass: 1.0,
            charge: 0.5,
        },
        Potential::AxisCosine { c: 0.3 },
    )?;
    let top = Model::top(TopParams::new(1.0, 0.5, 2.0, 1.0, 9.8)?)?;
    let top_y0 = vec![FRAC_PI_3, 0.0, 0.3, 0.5, 0.0, 30.0 - 0.5 * FRAC_PI_3.cos()];
    Ok(vec![
        ("full_disk", full, full_y0),
        ("reduced_disk", reduced, OFF_AXIS.to_vec()),
        ("magnetic", magnetic, OFF_AXIS.to_vec()),
        ("top", top, top_y0),
    ])
}

/// Oracle residual of a run of `span` time units at step `dt`.
pub fn oracle_residual(
    model: &Model<f64>,
    y0: &[f64],
    dt: f64,
    span: f64,
    tolerance: f64,
) -> Result<ResidualReport<f64>> {
    let n = (span / dt).round() as usize;
    let s = IntegratorSettings::new(dt, n)?.with_monitors(false);
    el_residual_oracle(model, &integrate(model, y0, &s)?, tolerance)
}

/// Smallest observed order of the oracle residual over successive halvings.
pub fn oracle_order(model: &Model<f64>, y0: &[f64], dts: &[f64], span: f64) -> Result<f64> {
    let mut res = Vec::new();
    for &dt in dts {
        res.push(oracle_residual(model, y0, dt, span, f64::INFINITY)?.max_abs);
    }
    Ok(res
        .windows(2)
        .zip(dts.windows(2))
        .map(|(r, d)| (r[0] / r[1]).ln() / (d[0] / d[1]).ln())
        .fold(f64::INFINITY, f64::min))
}

pub const ORDER_STEPS: [f64; 3] = [0.01, 0.005, 0.0025];

pub fn dynamics_suite(mutation: Mutation) -> Vec<CheckResult> {
    let mut out = vec![
        check("magnetic_curvature_law", 1e-5, || {
            curvature_law(mutation, false, 1e-5)
        }),
        check("reduced_curvature_law", 1e-5, || {
            curvature_law(mutation, true, 1e-5)
        }),
        check("cylinder_null", 1e-8, || cylinder_null(mutation, 1e-8)),
        check("model_agreement", 1e-10, || {
            model_agreement(mutation, 1e-10)
        }),
    ];

    let sphere = SurfaceChart::sphere(1.0).map(|c| c.with_mutation(mutation));
    let magnetic = sphere.clone().and_then(|c| {
        let m = Model::new(
            c,
            ModelKind::Magnetic {
                mass: 1.0,
                charge: 0.5,
            },
            Potential::None,
        )?;
        let t = run(&m, &EQUATOR_START, 1e-3, 10_000)?;
        Ok((m, t))
    });
    match &magnetic {
        Ok((_, t)) => {
            out.push(CheckResult::from_report(
                "energy_conservation_magnetic",
                &relative_drift(t, |i| t.monitors[i].energy, 1e-8),
            ));
            out.push(CheckResult::from_report(
                "speed_conservation_magnetic",
                &relative_drift(t, |i| t.monitors[i].speed, 1e-9),
            ));
        }
        Err(e) => {
            out.push(CheckResult::failed("energy_conservation_magnetic", 1e-8, e));
            out.push(CheckResult::failed("speed_conservation_magnetic", 1e-9, e));
        }
    }
    out.push(check("energy_conservation_reduced", 1e-8, || {
        let m = Model::new(
            sphere.clone()?,
            ModelKind::ReducedDisk(ReducedDiskParams::new(1.0, 0.01, 1.0)?),
            Potential::AxisCosine { c: 0.3 },
        )?;
        let t = run(&m, &OFF_AXIS, 1e-3, 10_000)?;
        Ok(relative_drift(&t, |i| t.monitors[i].energy, 1e-8))
    }));
    match sphere_full_disk(mutation, 0.5).and_then(|(m, y0)| run(&m, &y0, 1e-3, 10_000)) {
        Ok(t) => {
            out.push(CheckResult::from_report(
                "energy_conservation_full",
                &relative_drift(&t, |i| t.monitors[i].energy, 1e-8),
            ));
            out.push(CheckResult::from_report(
                "spin_conservation_full",
                &relative_drift(&t, |i| t.monitors[i].omega_a.unwrap_or(f64::NAN), 1e-8),
            ));
        }
        Err(e) => {
            out.push(CheckResult::failed("energy_conservation_full", 1e-8, &e));
            out.push(CheckResult::failed("spin_conservation_full", 1e-8, e));
        }
    }
    out.push(check("el_residual_full_disk", 1e-6, || {
        let (m, y0) = sphere_full_disk(mutation, 1.0)?;
        oracle_residual(&m, &y0, 1e-4, 0.05, 1e-6)
    }));
    match oracle_models(mutation) {
        Ok(models) => {
            for (name, model, y0) in models.iter().filter(|(n, ..)| *n != "top") {
                out.push(order_check(&format!("el_order_{name}"), 1.9, || {
                    oracle_order(model, y0, &ORDER_STEPS, 0.4)
                }));
            }
        }
        Err(e) => out.push(CheckResult::failed("el_order", 1.9, e)),
    }
    out
}

/// Slow steady-precession rate: the smaller root of
/// `I1 Ω² cos x1 − I3 ω3 Ω + M g ℓ = 0`, found by bisection.
pub fn steady_precession_rate(top: &TopParams<f64>, x1: f64, omega3: f64) -> Option<f64> {
    let (c, b, a0) = (
        top.inertia_transverse * x1.cos(),
        top.inertia_axial * omega3,
        top.mass * top.gravity * top.arm,
    );
    let f = |w: f64| c * w * w - b * w + a0;
    if c <= 0.0 || b <= 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (0.0, b / (2.0 * c));
    if f(lo) * f(hi) > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Parameters used by the top checks.
pub fn reference_top() -> TopParams<f64> {
    TopParams::new(1.0, 0.5, 2.0, 1.0, 9.8).expect("valid top")
}

/// Euler-angle top and the mapped magnetic particle from the same start,
/// over ten nutation periods.
pub fn top_vs_magnetic(
    mutation: Mutation,
    omega_a: f64,
    tolerance: f64,
) -> Result<ResidualReport<f64>> {
    let top = reference_top();
    let eq = top_to_sphere(&top);
    let sphere = SurfaceChart::sphere(eq.radius)?.with_mutation(mutation);
    let magnetic = Model::new(
        sphere.clone(),
        ModelKind::Magnetic {
            mass: eq.mass,
            charge: eq.charge(omega_a),
        },
        Potential::AxisCosine {
            c: eq.mass * top.gravity * eq.radius,
        },
    )?;
    let period = TAU * top.inertia_transverse / (top.inertia_axial * omega_a);
    let dt = 1e-3;
    let n = (10.0 * period / dt).ceil() as usize;
    let x = [FRAC_PI_3, 0.0];
    let v = [0.0, 0.0];
    let top_run = run(
        &Model::top(top)?,
        &[x[0], x[1], v[0], v[1], 0.0, omega_a - v[1] * x[0].cos()],
        dt,
        n,
    )?;
    let mag_run = run(&magnetic, &[x[0], x[1], v[0], v[1]], dt, n)?;
    compare_trajectories(
        &top_run,
        &mag_run,
        DeviationMetric::ChartDistance(&sphere),
        tolerance,
    )
}

/// `|x1(t) − x1(0)|` at the slow steady precession over `t ∈ [0, 10]`.
pub fn steady_precession(tolerance: f64) -> Result<ResidualReport<f64>> {
    let top = reference_top();
    let (x1, omega3) = (FRAC_PI_3, 30.0);
    let rate =
        steady_precession_rate(&top, x1, omega3).ok_or(crate::error::Error::InvalidParameter {
            name: "omega3",
            reason: "no steady precession".into(),
        })?;
    let y0 = [x1, 0.0, 0.0, rate, 0.0, omega3 - rate * x1.cos()];
    let t = run(&Model::top(top)?, &y0, 1e-3, 10_000)?;
    Ok(ResidualReport::from_samples(
        t.states.iter().enumerate().map(|(i, s)| (i, s[0] - x1)),
        tolerance,
    ))
}

pub fn top_suite(mutation: Mutation) -> Vec<CheckResult> {
    let top = reference_top();
    let mut out = vec![
        check("top_vs_magnetic", 1e-6, || {
            top_vs_magnetic(mutation, 30.0, 1e-6)
        }),
        check("steady_precession", 1e-8, || steady_precession(1e-8)),
        check("top_mapping", 1e-14, || {
            let e = top_to_sphere(&top);
            let r = [
                (
                    0,
                    (e.mass * e.radius * e.radius - top.inertia_transverse)
                        / top.inertia_transverse,
                ),
                (
                    1,
                    (e.mass * e.radius - top.mass * top.arm) / (top.mass * top.arm),
                ),
            ];
            Ok(ResidualReport::from_samples(r, 1e-14))
        }),
    ];
    let y0 = FullState {
        x: [FRAC_PI_3, 0.0],
        v: [0.3, 0.5],
        theta: 0.0,
        theta_dot: 30.0 - 0.5 * FRAC_PI_3.cos(),
    };
    match Model::top(top).and_then(|m| run(&m, &y0.to_vec(), 1e-3, 10_000)) {
        Ok(t) => {
            out.push(CheckResult::from_report(
                "top_energy_conservation",
                &relative_drift(&t, |i| t.monitors[i].energy, 1e-8),
            ));
            out.push(CheckResult::from_report(
                "top_spin_conservation",
                &relative_drift(&t, |i| t.monitors[i].omega_a.unwrap_or(f64::NAN), 1e-8),
            ));
            let p2 = |i: usize| {
                let s = &t.states[i];
                let (sn, cs) = s[0].sin_cos();
                top.inertia_transverse * s[3] * sn * sn
                    + top.inertia_axial * (s[5] + s[3] * cs) * cs
            };
            out.push(CheckResult::from_report(
                "top_azimuthal_momentum",
                &relative_drift(&t, p2, 1e-8),
            ));
        }
        Err(e) => out.push(CheckResult::failed("top_conservation", 1e-8, e)),
    }
    match oracle_models(mutation) {
        Ok(models) => {
            if let Some((_, model, y0)) = models.iter().find(|(n, ..)| *n == "top") {
                // momenta here are ~30 times those of the disk scenarios
                out.push(check("el_residual_top", 1e-5, || {
                    oracle_residual(model, y0, 1e-4, 0.05, 1e-5)
                }));
                out.push(order_check("el_order_top", 1.9, || {
                    oracle_order(model, y0, &ORDER_STEPS, 0.4)
                }));
            }
        }
        Err(e) => out.push(CheckResult::failed("el_order_top", 1.9, e)),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precession_root() {
        let top = reference_top();
        let w = steady_precession_rate(&top, FRAC_PI_3, 30.0).unwrap();
        // Ω² − 30Ω + 4.9 = 0
        let exact = 15.0 - (225.0f64 - 4.9).sqrt();
        assert!((w - exact).abs() < 1e-12, "{w}");
    }
}
