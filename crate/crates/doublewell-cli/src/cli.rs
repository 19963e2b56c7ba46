//! Command-line surface: subcommand parsing, flag overrides, and dispatch
//! into the runner. Kept separate from `main.rs` so integration tests can
//! drive the same paths in-process.

use crate::config::{Model, Overrides, RunConfig};
use crate::runner::{emit_report, run, run_scan, summarize, HarnessError};
use clap::{Args, Parser, Subcommand};
use doublewell::{thresholds, Branch, PotentialParams};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "doublewell",
    version,
    about = "Moment-dynamics and wave-equation runs in an asymmetric quartic double well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by the potential-level report commands.
#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Harmonic coefficient of the potential.
    #[arg(long, default_value_t = 10.0)]
    pub a: f64,
    /// Cubic coefficient.
    #[arg(long, default_value_t = 4.0)]
    pub b: f64,
    /// Quartic coefficient.
    #[arg(long, default_value_t = 0.35)]
    pub c: f64,
    /// Also write the report into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Flags shared by the scenario run commands; every flag overrides the
/// corresponding config-file field.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON config file; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override the config's model (must agree with the subcommand).
    #[arg(long, value_parser = parse_model)]
    pub model: Option<Model>,
    /// Target energy (clears any v0 from the config file).
    #[arg(long)]
    pub energy: Option<f64>,
    /// Initial mean position.
    #[arg(long)]
    pub x0: Option<f64>,
    /// Simulated horizon.
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Time step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Variance branch: small | large.
    #[arg(long, value_parser = parse_branch)]
    pub branch: Option<Branch>,
    /// Artifact directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit SVG charts of mean position and variance.
    #[arg(long)]
    pub emit_svg: bool,
    /// Emit psi_<t>.csv probability snapshots (wave runs).
    #[arg(long)]
    pub emit_snapshots: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Landscape report: stationary points, regime, barrier height, Δ.
    PotentialReport(PotentialArgs),
    /// Threshold report: existence/stability/barrier energies and the
    /// labeled energy intervals.
    Thresholds(PotentialArgs),
    /// Energy sweep of the barrier fixed point (CSV + threshold report).
    StabilityScan {
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long, default_value_t = 8.0)]
        e_min: f64,
        #[arg(long, default_value_t = 17.5)]
        e_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Run the reduced moment model.
    Moments(RunArgs),
    /// Run the wave-equation reference model.
    Tdse(RunArgs),
    /// Run both models and compare them.
    Compare(RunArgs),
}

fn parse_model(s: &str) -> Result<Model, String> {
    match s {
        "moments" => Ok(Model::Moments),
        "tdse" => Ok(Model::Tdse),
        "both" => Ok(Model::Both),
        other => Err(format!("unknown model `{other}` (expected moments | tdse | both)")),
    }
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    match s {
        "small" => Ok(Branch::Small),
        "large" => Ok(Branch::Large),
        other => Err(format!("unknown branch `{other}` (expected small | large)")),
    }
}

fn load_run_config(args: &RunArgs, forced_model: Model) -> Result<RunConfig, HarnessError> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    config.apply(&Overrides {
        model: args.model,
        energy: args.energy,
        x0: args.x0,
        t_end: args.t_end,
        dt: args.dt,
        branch: args.branch,
        out: args.out.clone(),
        emit_svg: args.emit_svg,
        emit_snapshots: args.emit_snapshots,
    });
    if let Some(m) = args.model {
        if m != forced_model {
            return Err(crate::config::ConfigError::ModelMismatch {
                flag: m,
                subcommand: forced_model,
            }
            .into());
        }
    }
    config.model = forced_model;
    Ok(config)
}

fn execute_run(args: &RunArgs, model: Model) -> Result<(), HarnessError> {
    let config = load_run_config(args, model)?;
    let outcome = run(&config)?;
    for report in [outcome.moments.as_ref(), outcome.tdse.as_ref()].into_iter().flatten() {
        println!("{}", summarize(report));
    }
    if let Some(cmp) = &outcome.comparison {
        println!(
            "comparison: verdict_agreement={} rms_mean_x={:.6e} rms_variance={:.6e}",
            cmp.verdict_agreement, cmp.rms_mean_x, cmp.rms_variance
        );
    }
    println!("artifacts: {}", outcome.directory.display());
    Ok(())
}

/// Runs one parsed command; the caller maps errors to exit codes.
pub fn execute(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::PotentialReport(args) => {
            let params = PotentialParams::new(args.a, args.b, args.c)?;
            let report = params.landscape()?;
            emit_report(&report, args.out.as_deref(), "potential_report.json")
        }
        Command::Thresholds(args) => {
            let params = PotentialParams::new(args.a, args.b, args.c)?;
            let report = thresholds(&params)?;
            emit_report(&report, args.out.as_deref(), "thresholds.json")
        }
        Command::StabilityScan {
            potential,
            e_min,
            e_max,
            step,
        } => {
            let params = PotentialParams::new(potential.a, potential.b, potential.c)?;
            let dir = potential.out.unwrap_or_else(|| PathBuf::from("out"));
            let report = run_scan(&params, e_min, e_max, step, &dir)?;
            println!(
                "thresholds: e_exist={:.6} e_stable={} e_barrier={:.6}",
                report.e_exist,
                report
                    .e_stable
                    .map(|e| format!("{e:.6}"))
                    .unwrap_or_else(|| "-".to_string()),
                report.e_barrier
            );
            println!("artifacts: {}", dir.display());
            Ok(())
        }
        Command::Moments(args) => execute_run(&args, Model::Moments),
        Command::Tdse(args) => execute_run(&args, Model::Tdse),
        Command::Compare(args) => execute_run(&args, Model::Both),
    }
}
