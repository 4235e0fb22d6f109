//! `afield`: scenario runs for the complex A-field toolkit.
//!
//! Exit codes: 0 all declared tolerances met; 1 tolerance failure;
//! 2 configuration error; 3 runtime failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use afield_cli::config::{parse_config, ScenarioConfig, ScenarioKind};
use afield_cli::report::ToleranceProfile;
use afield_cli::scenario::run_scenario;

#[derive(Parser)]
#[command(name = "afield", version, about = "Complex A-field solvers and diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Scenario configuration file (key = value format).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for tables and reports.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Tolerance profile: strict, default or loose.
    #[arg(long, default_value = "default")]
    tolerance_profile: String,
    /// Worker threads (env AFIELD_THREADS overrides).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve compact initial data (Kirchhoff-form Cauchy solver).
    Cauchy(Common),
    /// Monochromatic (time-harmonic) fields.
    Mono(Common),
    /// Stationary (Poisson-regime) fields.
    Stationary(Common),
    /// Verify declared front jumps against the admissibility conditions.
    ShockCheck(Common),
    /// Run the spectral oracle with conservation audits.
    Oracle(Common),
    /// Cross-validate the Cauchy solver against the spectral oracle.
    Compare(Common),
    /// Replicate the built-in closed-form scenarios.
    Examples {
        #[command(flatten)]
        common: Common,
        /// Which built-in example to run (1, 2 or 3).
        #[arg(long, default_value_t = 3)]
        which: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, kind, which) = match &cli.command {
        Command::Cauchy(c) => (c, ScenarioKind::Cauchy, None),
        Command::Mono(c) => (c, ScenarioKind::Mono, None),
        Command::Stationary(c) => (c, ScenarioKind::Stationary, None),
        Command::ShockCheck(c) => (c, ScenarioKind::ShockCheck, None),
        Command::Oracle(c) => (c, ScenarioKind::Oracle, None),
        Command::Compare(c) => (c, ScenarioKind::Compare, None),
        Command::Examples { common, which } => (common, ScenarioKind::Examples, Some(*which)),
    };

    let Some(profile) = ToleranceProfile::parse(&common.tolerance_profile) else {
        eprintln!(
            "error: unknown tolerance profile `{}` (expected strict, default or loose)",
            common.tolerance_profile
        );
        return ExitCode::from(2);
    };

    let threads = std::env::var("AFIELD_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(common.threads);
    if let Some(n) = threads {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    let mut cfg = match load_config(common, kind) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(w) = which {
        if !(1..=3).contains(&w) {
            eprintln!("error: --which must be 1, 2 or 3");
            return ExitCode::from(2);
        }
        cfg.example = w;
    }

    match run_scenario(&cfg, &common.out_dir, profile) {
        Ok(outcome) => {
            for check in &outcome.report.checks {
                let status = if check.pass { "pass" } else { "FAIL" };
                println!(
                    "[{status}] {}: value {:.3e}, tolerance {:.3e}",
                    check.name, check.value, check.tolerance
                );
            }
            if let Some(p) = &outcome.table_path {
                println!("table:  {}", p.display());
            }
            println!("report: {}", outcome.report_path.display());
            if outcome.report.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: declared tolerances not met");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn load_config(common: &Common, kind: ScenarioKind) -> Result<ScenarioConfig, String> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("reading {}: {e}", path.display()))?;
            parse_config(&text).map_err(|e| e.to_string())?
        }
        None => default_config_for(kind)
            .ok_or_else(|| format!("scenario `{}` needs --config", kind.as_str()))?,
    };
    if let Some(path) = &common.config {
        // the subcommand must agree with the config's scenario
        if cfg.scenario != kind {
            return Err(format!(
                "config {} declares scenario `{}`, but the `{}` subcommand was invoked",
                path.display(),
                cfg.scenario.as_str(),
                kind.as_str()
            ));
        }
    } else {
        cfg.scenario = kind;
    }
    Ok(cfg)
}

/// Built-in defaults so the paper scenarios run without hand-written configs.
fn default_config_for(kind: ScenarioKind) -> Option<ScenarioConfig> {
    use afield_cli::config::{EvalSpec, SourceKind};
    use afield_core::vec3::Vec3;
    let mut cfg = ScenarioConfig { scenario: kind, ..Default::default() };
    match kind {
        ScenarioKind::Examples => {}
        ScenarioKind::Cauchy | ScenarioKind::Compare => {
            cfg.source_kind = SourceKind::ToroidalBump;
            cfg.time = 1.5;
            cfg.eval = EvalSpec::Points(vec![
                Vec3::new(1.25, 0.75, 0.0),
                Vec3::new(-0.5, 1.0, 0.75),
                Vec3::new(0.75, -0.75, 0.75),
                Vec3::new(0.0, 1.5, -0.5),
            ]);
        }
        ScenarioKind::Mono => {
            cfg.source_kind = SourceKind::RotatingBall;
            cfg.radius = 0.6;
            cfg.omega = 2.0;
            cfg.eval = EvalSpec::Points(vec![
                Vec3::new(1.2, 0.0, 0.4),
                Vec3::new(0.0, 1.5, 0.0),
                Vec3::new(2.0, 1.0, 0.5),
            ]);
        }
        ScenarioKind::Stationary => {
            cfg.source_kind = SourceKind::RotatingBall;
            cfg.amplitude = 3.0;
            cfg.radius = 1.0;
            cfg.spin = 1.0;
            cfg.eval = EvalSpec::Points(vec![
                Vec3::new(0.4, 0.2, 0.1),
                Vec3::new(0.0, 0.0, 2.0),
                Vec3::new(1.5, -0.5, 0.3),
            ]);
        }
        ScenarioKind::Oracle => {
            cfg.source_kind = SourceKind::ToroidalBump;
            cfg.time = 1.0;
            cfg.eval = EvalSpec::Points(vec![
                Vec3::new(1.0, 0.5, 0.0),
                Vec3::new(0.0, -1.25, 0.75),
            ]);
        }
        ScenarioKind::ShockCheck => return None,
    }
    Some(cfg)
}
