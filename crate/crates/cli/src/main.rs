mod config;
mod error;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gyrosurf::verify::{compare_trajectories, CheckResult, DeviationMetric, Suite};
use gyrosurf::{gauss_bonnet_patch_K, geometry_jet, Mutation};

use config::ScenarioConfig;
use error::CliError;
use scenario::Scenario;

/// Exit code for a run cut short at the chart boundary.
const EXIT_TRUNCATED: u8 = 3;
const DEFAULT_COMPARE_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "gyrosurf",
    version,
    about = "Spinning disks and magnetic geodesics on curved surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario and write its trajectory.
    Run { config: PathBuf },
    /// Run a verification battery and print one line per check.
    Verify {
        suite: SuiteArg,
        /// Deliberately break a convention to exercise the battery.
        #[arg(long, hide = true, value_parser = parse_mutation, default_value = "none")]
        mutate: Mutation,
    },
    /// Run two scenarios on the same grid and report their deviation.
    Compare {
        a: PathBuf,
        b: Option<PathBuf>,
        /// Compare a top scenario with its mapped magnetic particle.
        #[arg(long)]
        map_top: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Curvature data of a scenario's surface at one point.
    Curvature {
        config: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        at: (f64, f64),
        /// Also estimate K from the Gauss–Bonnet balance on an ε × δ patch.
        #[arg(long, value_parser = parse_pair)]
        patch: Option<(f64, f64)>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Geometry,
    Dynamics,
    Top,
    All,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|e| format!("`{a}`: {e}"))?,
            b.parse().map_err(|e| format!("`{b}`: {e}"))?,
        )),
        _ => Err(format!("expected two comma-separated numbers, got `{s}`")),
    }
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    Mutation::parse(s).ok_or_else(|| format!("unknown mutation `{s}`"))
}

fn load(path: &Path) -> Result<(ScenarioConfig, Scenario), CliError> {
    let cfg = ScenarioConfig::load(path)?;
    let sc = scenario::build(&cfg)?;
    Ok((cfg, sc))
}

fn cmd_run(path: &Path) -> Result<u8, CliError> {
    let (cfg, sc) = load(path)?;
    let output = cfg.output.as_ref();
    // reject bad column lists before integrating
    scenario::select_columns(&sc, output)?;
    let traj = sc.run()?;
    let text = scenario::render(&traj, &sc, output)?;
    let base = path.parent().unwrap_or(Path::new("."));
    match scenario::output_path(output, base) {
        Some(target) => std::fs::write(&target, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", target.display())))?,
        None => print!("{text}"),
    }
    if let gyrosurf::Status::Truncated { error, .. } = &traj.status {
        eprintln!("trajectory truncated: {error}");
        return Ok(EXIT_TRUNCATED);
    }
    Ok(0)
}

fn cmd_verify(suite: SuiteArg, mutation: Mutation) -> Result<u8, CliError> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Geometry => vec![Suite::Geometry],
        SuiteArg::Dynamics => vec![Suite::Dynamics],
        SuiteArg::Top => vec![Suite::Top],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let results: Vec<Vec<CheckResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&su| s.spawn(move || su.run(mutation)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let mut failed = Vec::new();
    for check in results.iter().flatten() {
        println!("{check}");
        if !check.pass {
            failed.push(match &check.error {
                Some(e) => format!("{} ({e})", check.name),
                None => check.name.clone(),
            });
        }
    }
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Ok(1)
    }
}

fn cmd_compare(
    a: &Path,
    b: Option<&Path>,
    map_top: bool,
    tol: Option<f64>,
) -> Result<u8, CliError> {
    let (cfg_a, sc_a) = load(a)?;
    let (cfg_b, sc_b) = match (b, map_top) {
        (Some(_), true) => {
            return Err(CliError::Config(
                "--map-top derives the second scenario; give only one config".into(),
            ))
        }
        (None, false) => {
            return Err(CliError::Config(
                "compare needs two configs or --map-top".into(),
            ))
        }
        (Some(b), false) => {
            let (cfg, sc) = load(b)?;
            (Some(cfg), sc)
        }
        (None, true) => (None, sc_a.mapped_from_top()?),
    };
    let tol = tol
        .or(cfg_a.tolerance)
        .or(cfg_b.and_then(|c| c.tolerance))
        .unwrap_or(DEFAULT_COMPARE_TOL);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::config(
            "tolerance",
            format!("must be non-negative and finite, got {tol}"),
        ));
    }
    if sc_a.settings.dt != sc_b.settings.dt
        || sc_a.settings.n_steps != sc_b.settings.n_steps
        || sc_a.settings.sample_every != sc_b.settings.sample_every
    {
        return Err(CliError::config(
            "integrator",
            "scenarios must share dt, n_steps and sample_every",
        ));
    }
    let (ta, tb) = (sc_a.run()?, sc_b.run()?);
    if ta.is_truncated() || tb.is_truncated() {
        eprintln!("a scenario left its chart; nothing to compare over the full grid");
        return Ok(EXIT_TRUNCATED);
    }
    let chart = sc_a.model.chart();
    let report = compare_trajectories(&ta, &tb, DeviationMetric::ChartDistance(chart), tol)
        .map_err(|e| CliError::config("integrator", e))?;
    println!(
        "chart_distance,{},{:.6e},{:.6e},{:.1e}",
        if report.pass { "pass" } else { "fail" },
        report.max_abs,
        report.rms,
        tol
    );
    println!("# max deviation at t = {:.6e}", ta.times[report.location]);
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_curvature(path: &Path, at: (f64, f64), patch: Option<(f64, f64)>) -> Result<u8, CliError> {
    let (_, sc) = load(path)?;
    let chart = sc.model.chart();
    let x = [at.0, at.1];
    let jet = geometry_jet(chart, x).map_err(|e| CliError::config("--at", e))?;
    // adding zero folds -0 into 0
    let line = |key: &str, v: f64| println!("{key},{:.16e}", v + 0.0);
    line("x1", jet.x[0]);
    line("x2", jet.x[1]);
    line("K", jet.gaussian_curvature);
    line("a11", jet.a11);
    line("a12", jet.a12);
    line("a22", jet.a22);
    if jet.orthogonal {
        line("k1", jet.k1);
        line("k2", jet.k2);
    }
    if let Some((eps, delta)) = patch {
        if !(eps > 0.0 && delta > 0.0) {
            return Err(CliError::config("--patch", "sizes must be positive"));
        }
        let k = gauss_bonnet_patch_K(chart, x, eps, delta)?;
        line("K_patch", k);
        line("patch_error", k - jet.gaussian_curvature);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { config } => cmd_run(config),
        Command::Verify { suite, mutate } => cmd_verify(*suite, *mutate),
        Command::Compare { a, b, map_top, tol } => cmd_compare(a, b.as_deref(), *map_top, *tol),
        Command::Curvature { config, at, patch } => cmd_curvature(config, *at, *patch),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gyrosurf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
