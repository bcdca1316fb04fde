//! Building models from configs and writing trajectories.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gyrosurf::dynamics::{DiskParams, TopParams};
use gyrosurf::surfaces::{CustomChart, Domain};
use gyrosurf::{
    geometry_jet, integrate, top_to_sphere, Chart, DiametralForm, Expr, Model, ModelKind,
    OdeSystem, Potential, ReducedDiskParams, Scheme, Settings, Status, Trajectory,
};

use crate::config::{
    ModelName, OmegaDForm, OutputConfig, OutputFormat, Params, PotentialKind, ScenarioConfig,
    SchemeName, SurfaceConfig,
};
use crate::error::{at_key, CliError};

pub const BASE_COLUMNS: [&str; 9] = ["t", "x1", "x2", "v1", "v2", "E", "speed", "k_geo", "K"];
pub const SPIN_COLUMNS: [&str; 3] = ["theta", "theta_dot", "omega_a"];

/// A model ready to integrate.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: ModelName,
    pub model: Model,
    pub y0: Vec<f64>,
    pub settings: Settings,
}

impl Scenario {
    pub fn run(&self) -> Result<Trajectory, CliError> {
        Ok(integrate(&self.model, &self.y0, &self.settings)?)
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let mut c = BASE_COLUMNS.to_vec();
        if self.name.has_spin() {
            c.extend(SPIN_COLUMNS);
        }
        c
    }

    /// Magnetic particle on the top's equivalent sphere, from the same start
    /// and on the same grid.
    pub fn mapped_from_top(&self) -> Result<Scenario, CliError> {
        let ModelKind::Top(top) = self.model.kind() else {
            return Err(CliError::config("model", "--map-top needs a top scenario"));
        };
        let eq = top_to_sphere(top);
        let omega_a = self
            .model
            .omega_a(&self.y0)?
            .ok_or_else(|| CliError::Numeric("top has no spin".into()))?;
        let chart = Chart::sphere(eq.radius)?;
        let model = Model::new(
            chart,
            ModelKind::Magnetic {
                mass: eq.mass,
                charge: eq.charge(omega_a),
            },
            Potential::AxisCosine {
                c: eq.mass * top.gravity * eq.radius,
            },
        )?;
        Ok(Scenario {
            name: ModelName::Magnetic,
            model,
            y0: self.y0[..4].to_vec(),
            settings: self.settings,
        })
    }
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::config(
            key,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn finite(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(key, format!("must be finite, got {v}")))
    }
}

fn expr(key: &str, src: &str) -> Result<Expr, CliError> {
    Expr::parse(src).map_err(|e| CliError::config(key, e))
}

pub fn build_chart(surface: &SurfaceConfig) -> Result<Chart, CliError> {
    let with_fd = |chart: Chart, fd: &Option<f64>| -> Result<Chart, CliError> {
        match fd {
            Some(h) => Ok(chart.with_finite_differences(positive("surface.fd_step", *h)?)),
            None => Ok(chart),
        }
    };
    let key = |e| at_key("surface", e);
    match surface {
        SurfaceConfig::Plane { fd_step } => with_fd(Chart::plane(), fd_step),
        SurfaceConfig::Sphere { radius, fd_step } => {
            with_fd(Chart::sphere(*radius).map_err(key)?, fd_step)
        }
        SurfaceConfig::Torus {
            major,
            minor,
            fd_step,
        } => with_fd(Chart::torus(*major, *minor).map_err(key)?, fd_step),
        SurfaceConfig::Cylinder { radius, fd_step } => {
            with_fd(Chart::cylinder(*radius).map_err(key)?, fd_step)
        }
        SurfaceConfig::Saddle { kappa, fd_step } => {
            with_fd(Chart::saddle(*kappa).map_err(key)?, fd_step)
        }
        SurfaceConfig::Custom {
            a11,
            a22,
            embedding,
            domain,
            fd_step,
        } => {
            let custom = CustomChart {
                a11: expr("surface.a11", a11)?,
                a22: expr("surface.a22", a22)?,
                embedding: match embedding {
                    Some([e1, e2, e3]) => Some([
                        expr("surface.embedding[0]", e1)?,
                        expr("surface.embedding[1]", e2)?,
                        expr("surface.embedding[2]", e3)?,
                    ]),
                    None => None,
                },
            };
            let dom = Domain::new(
                [domain.x1[0], domain.x2[0]],
                [domain.x1[1], domain.x2[1]],
                domain.periodic,
            )
            .map_err(|e| at_key("surface", e))?;
            if let Some(h) = fd_step {
                positive("surface.fd_step", *h)?;
            }
            Chart::custom(custom, dom, *fd_step).map_err(key)
        }
    }
}

/// Keys each model reads from `params`.
fn allowed_params(model: ModelName) -> &'static [&'static str] {
    match model {
        ModelName::FullDisk => &["m", "I_a", "I_d", "R_disk"],
        ModelName::ReducedDisk => &["m", "I_d", "L"],
        ModelName::Magnetic => &["m", "L"],
        ModelName::Geodesic => &["m"],
        ModelName::Top => &["M", "ell", "I1", "I3", "g"],
    }
}

fn require(v: Option<f64>, key: &str, model: ModelName) -> Result<f64, CliError> {
    v.ok_or_else(|| {
        CliError::config(
            &format!("params.{key}"),
            format!("required by model {}", model.as_str()),
        )
    })
}

fn build_kind(cfg: &ScenarioConfig) -> Result<ModelKind<f64>, CliError> {
    let p: &Params = &cfg.params;
    let name = cfg.model;
    for (key, _) in p.present() {
        if !allowed_params(name).contains(&key) {
            return Err(CliError::config(
                &format!("params.{key}"),
                format!("not used by model {}", name.as_str()),
            ));
        }
    }
    let form = match cfg.omega_d_form {
        Some(_) if !matches!(name, ModelName::FullDisk | ModelName::ReducedDisk) => {
            return Err(CliError::config(
                "omega_d_form",
                format!("not used by model {}", name.as_str()),
            ));
        }
        Some(OmegaDForm::SecondForm) => DiametralForm::SecondForm,
        _ => DiametralForm::ThirdForm,
    };
    Ok(match name {
        ModelName::FullDisk => {
            let m = positive("params.m", require(p.m, "m", name)?)?;
            let r = positive("params.R_disk", require(p.r_disk, "R_disk", name)?)?;
            let uniform = DiskParams::uniform(m, r).map_err(|e| at_key("params", e))?;
            let i_a = positive("params.I_a", p.i_a.unwrap_or(uniform.inertia_axial))?;
            let i_d = positive("params.I_d", p.i_d.unwrap_or(uniform.inertia_diametral))?;
            let disk = DiskParams::new(m, i_a, i_d, r).map_err(|e| at_key("params", e))?;
            ModelKind::FullDisk { disk, form }
        }
        ModelName::ReducedDisk => {
            let m = positive("params.m", require(p.m, "m", name)?)?;
            let l = finite("params.L", require(p.l, "L", name)?)?;
            let i_d = p.i_d.unwrap_or(0.0);
            if !(i_d.is_finite() && i_d >= 0.0) {
                return Err(CliError::config(
                    "params.I_d",
                    format!("must be non-negative and finite, got {i_d}"),
                ));
            }
            let params = ReducedDiskParams::new(m, i_d, l).map_err(|e| at_key("params", e))?;
            ModelKind::ReducedDisk(params.with_form(form))
        }
        ModelName::Magnetic => ModelKind::Magnetic {
            mass: positive("params.m", require(p.m, "m", name)?)?,
            charge: finite("params.L", require(p.l, "L", name)?)?,
        },
        ModelName::Geodesic => ModelKind::Geodesic {
            mass: positive("params.m", require(p.m, "m", name)?)?,
        },
        ModelName::Top => {
            let top = TopParams::new(
                positive("params.M", require(p.big_m, "M", name)?)?,
                positive("params.ell", require(p.ell, "ell", name)?)?,
                positive("params.I1", require(p.i1, "I1", name)?)?,
                positive("params.I3", require(p.i3, "I3", name)?)?,
                finite("params.g", require(p.g, "g", name)?)?,
            )
            .map_err(|e| at_key("params", e))?;
            ModelKind::Top(top)
        }
    })
}

fn build_potential(cfg: &ScenarioConfig) -> Result<Potential, CliError> {
    let Some(pot) = &cfg.potential else {
        return Ok(Potential::None);
    };
    let unused = |key: &str, present: bool| -> Result<(), CliError> {
        if present {
            Err(CliError::config(
                &format!("potential.{key}"),
                "not used by this potential kind",
            ))
        } else {
            Ok(())
        }
    };
    let potential = match pot.kind {
        PotentialKind::None => {
            unused("c", pot.c.is_some())?;
            unused("expression", pot.expression.is_some())?;
            Potential::None
        }
        PotentialKind::AxisCosine => {
            unused("expression", pot.expression.is_some())?;
            let c = pot
                .c
                .ok_or_else(|| CliError::config("potential.c", "required by axis_cosine"))?;
            Potential::AxisCosine {
                c: finite("potential.c", c)?,
            }
        }
        PotentialKind::Expression => {
            unused("c", pot.c.is_some())?;
            let src = pot.expression.as_deref().ok_or_else(|| {
                CliError::config("potential.expression", "required by expression")
            })?;
            Potential::Custom(expr("potential.expression", src)?)
        }
    };
    if cfg.model == ModelName::Top && !potential.is_none() {
        return Err(CliError::config(
            "potential",
            "the top carries its own gravity; use params.g",
        ));
    }
    Ok(potential)
}

fn build_settings(cfg: &ScenarioConfig) -> Result<Settings, CliError> {
    let i = &cfg.integrator;
    positive("integrator.dt", i.dt)?;
    if i.n_steps == 0 {
        return Err(CliError::config("integrator.n_steps", "must be at least 1"));
    }
    if i.sample_every == 0 {
        return Err(CliError::config(
            "integrator.sample_every",
            "must be at least 1",
        ));
    }
    let scheme = match i.scheme {
        SchemeName::Rk4 => Scheme::Rk4,
        SchemeName::Midpoint => Scheme::Midpoint,
    };
    Ok(Settings::new(i.dt, i.n_steps)
        .map_err(|e| at_key("integrator", e))?
        .with_sample_every(i.sample_every)
        .with_scheme(scheme))
}

fn initial_state(cfg: &ScenarioConfig, model: &Model) -> Result<Vec<f64>, CliError> {
    let init = &cfg.initial;
    for (k, v) in init.x.iter().chain(&init.v).enumerate() {
        let key = if k < 2 {
            format!("initial.x[{k}]")
        } else {
            format!("initial.v[{}]", k - 2)
        };
        finite(&key, *v)?;
    }
    let mut y = vec![init.x[0], init.x[1], init.v[0], init.v[1]];
    model
        .check_state(&y)
        .map_err(|e| CliError::config("initial.x", e))?;
    if !cfg.model.has_spin() {
        for (key, present) in [
            ("theta", init.theta.is_some()),
            ("theta_dot", init.theta_dot.is_some()),
            ("omega_a", init.omega_a.is_some()),
        ] {
            if present {
                return Err(CliError::config(
                    &format!("initial.{key}"),
                    format!("model {} has no spin angle", cfg.model.as_str()),
                ));
            }
        }
        return Ok(y);
    }
    let theta = finite("initial.theta", init.theta.unwrap_or(0.0))?;
    let theta_dot = match (init.theta_dot, init.omega_a) {
        (Some(_), Some(_)) => {
            return Err(CliError::config(
                "initial.omega_a",
                "give theta_dot or omega_a, not both",
            ))
        }
        (None, None) => {
            return Err(CliError::config(
                "initial.theta_dot",
                "spin required: give theta_dot or omega_a",
            ))
        }
        (Some(td), None) => finite("initial.theta_dot", td)?,
        (None, Some(w)) => {
            let w = finite("initial.omega_a", w)?;
            match model.kind() {
                ModelKind::Top(_) => w - init.v[1] * init.x[0].cos(),
                _ => {
                    let f = geometry_jet(model.chart(), init.x)
                        .and_then(|j| j.connection_form())
                        .map_err(|e| CliError::config("initial.x", e))?;
                    w - (f[0] * init.v[0] + f[1] * init.v[1])
                }
            }
        }
    };
    y.extend([theta, theta_dot]);
    Ok(y)
}

pub fn build(cfg: &ScenarioConfig) -> Result<Scenario, CliError> {
    let kind = build_kind(cfg)?;
    let potential = build_potential(cfg)?;
    let model = match (&kind, &cfg.surface) {
        (ModelKind::Top(top), None) => Model::top(*top).map_err(|e| at_key("params", e))?,
        (ModelKind::Top(_), Some(_)) => {
            return Err(CliError::config(
                "surface",
                "the top lives on its equivalent sphere; omit the surface block",
            ))
        }
        (_, None) => {
            return Err(CliError::config(
                "surface",
                format!("required by model {}", cfg.model.as_str()),
            ))
        }
        (_, Some(s)) => Model::new(build_chart(s)?, kind, potential).map_err(|e| match e {
            gyrosurf::Error::NonOrthogonalChart | gyrosurf::Error::MissingEmbedding => {
                CliError::config("surface", format!("{e} (model {})", cfg.model.as_str()))
            }
            other => at_key("params", other),
        })?,
    };
    let y0 = initial_state(cfg, &model)?;
    Ok(Scenario {
        name: cfg.model,
        model,
        y0,
        settings: build_settings(cfg)?,
    })
}

/// Column subset from `output.fields`.
pub fn select_columns(
    scenario: &Scenario,
    output: Option<&OutputConfig>,
) -> Result<Vec<&'static str>, CliError> {
    let all = scenario.columns();
    let Some(fields) = output.and_then(|o| o.fields.as_ref()) else {
        return Ok(all);
    };
    if fields.is_empty() {
        return Err(CliError::config(
            "output.fields",
            "must name at least one column",
        ));
    }
    fields
        .iter()
        .map(|f| {
            all.iter().copied().find(|c| c == f).ok_or_else(|| {
                CliError::config(
                    "output.fields",
                    format!(
                        "unknown column `{f}` for model {}; available: {}",
                        scenario.name.as_str(),
                        all.join(",")
                    ),
                )
            })
        })
        .collect()
}

fn value(traj: &Trajectory, model: &Model, i: usize, column: &str) -> Option<f64> {
    let y = &traj.states[i];
    let mon = traj.monitors.get(i);
    match column {
        "t" => Some(traj.times[i]),
        "x1" => Some(y[0]),
        "x2" => Some(y[1]),
        "v1" => Some(y[2]),
        "v2" => Some(y[3]),
        "E" => mon.map(|m| m.energy),
        "speed" => mon.map(|m| m.speed),
        "k_geo" => mon.and_then(|m| m.geodesic_curvature),
        "K" => mon.map(|m| m.gaussian_curvature),
        "theta" => y.get(4).copied(),
        "theta_dot" => y.get(5).copied(),
        "omega_a" => mon
            .and_then(|m| m.omega_a)
            .or_else(|| model.omega_a(y).ok().flatten()),
        _ => None,
    }
}

fn truncation_note(traj: &Trajectory) -> Option<String> {
    match &traj.status {
        Status::Complete => None,
        Status::Truncated { step, error } => Some(format!(
            "truncated at step {} (t = {:.16e}): {error}",
            step + 1,
            (*step + 1) as f64 * traj.dt
        )),
    }
}

/// CSV with 17 significant digits; undefined values are `nan`.
pub fn render_csv(traj: &Trajectory, model: &Model, columns: &[&str]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for i in 0..traj.len() {
        let row: Vec<String> = columns
            .iter()
            .map(|c| match value(traj, model, i, c) {
                Some(v) if v.is_finite() => format!("{v:.16e}"),
                _ => "nan".to_string(),
            })
            .collect();
        out += &row.join(",");
        out.push('\n');
    }
    if let Some(note) = truncation_note(traj) {
        let _ = writeln!(out, "# {note}");
    }
    out
}

pub fn render_json(traj: &Trajectory, model: &Model, name: ModelName, columns: &[&str]) -> String {
    let rows: Vec<Vec<serde_json::Value>> = (0..traj.len())
        .map(|i| {
            columns
                .iter()
                .map(|c| match value(traj, model, i, c) {
                    Some(v) if v.is_finite() => serde_json::Value::from(v),
                    _ => serde_json::Value::Null,
                })
                .collect()
        })
        .collect();
    let mut doc = serde_json::json!({
        "model": name.as_str(),
        "columns": columns,
        "rows": rows,
        "status": if traj.is_truncated() { "truncated" } else { "complete" },
    });
    if let Some(note) = truncation_note(traj) {
        doc["message"] = note.into();
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("trajectory serializes");
    s.push('\n');
    s
}

pub fn render(
    traj: &Trajectory,
    scenario: &Scenario,
    output: Option<&OutputConfig>,
) -> Result<String, CliError> {
    let columns = select_columns(scenario, output)?;
    Ok(match output.map(|o| o.format).unwrap_or_default() {
        OutputFormat::Csv => render_csv(traj, &scenario.model, &columns),
        OutputFormat::Json => render_json(traj, &scenario.model, scenario.name, &columns),
    })
}

/// Output target, relative paths taken from `base`.
pub fn output_path(output: Option<&OutputConfig>, base: &Path) -> Option<PathBuf> {
    let p = PathBuf::from(output?.path.as_ref()?);
    Some(if p.is_absolute() { p } else { base.join(p) })
}
