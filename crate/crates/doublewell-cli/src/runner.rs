//! Scenario orchestration: resolve a [`RunConfig`] into concrete packet and
//! system parameters, run the requested model(s), and write every artifact
//! (CSV series, JSON reports, optional SVG charts and probability
//! snapshots) into the configured directory.

use crate::compare::{compare, CommonSeries, CompareError, ComparisonReport};
use crate::config::{ConfigError, EnergyOffset, Model, RunConfig, SkewnessPolicy};
use crate::detect::{detect_tunneling, DetectError, TunnelingReport};
use crate::format::{csv_row, sig17, to_json_string};
use crate::svg::{line_chart, RefLine};
use doublewell::{
    barrier_fixed_point, energy_with, evolve_with, integrate, measure, regime_of, sample_on_grid,
    variance_for_discrete_energy, variance_for_energy, Branch, DriftSummary, EnergyFormula,
    EnergyRegime, EvolveOptions, FixedPointError, GaussianSpec, Grid, GridError, MomentError,
    MomentSeries, MomentState, MomentSystemParams, ObservableSeries, PacketError,
    PotentialError, PotentialParams, TdseError, VstarBranch,
};
use serde::Serialize;
use std::cell::RefCell;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Every failure class carries one stable process exit code, so scripted
/// sweeps can branch on the reason a run stopped.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Packet(#[from] PacketError),
    #[error("moment integration failed: {0}")]
    Moment(MomentError),
    #[error(transparent)]
    Tdse(#[from] TdseError),
    #[error(transparent)]
    Compare(#[from] CompareError),
    #[error(transparent)]
    Detect(#[from] DetectError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Grid(#[from] GridError),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Potential(_) => 3,
            HarnessError::FixedPoint(_) => 4,
            HarnessError::Packet(_) => 5,
            HarnessError::Moment(_) => 6,
            HarnessError::Tdse(_) => 7,
            HarnessError::Compare(_) | HarnessError::Detect(_) => 8,
            HarnessError::Io { .. } => 9,
            HarnessError::Grid(_) => 10,
        }
    }
}

/// A config resolved into concrete numbers: post-offset energy, variance,
/// skewness, and landscape references.
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub params: PotentialParams,
    pub barrier_x: f64,
    pub beta_plus: f64,
    pub delta: f64,
    pub x0: f64,
    pub k0: f64,
    pub branch: Branch,
    /// Run energy after any plus-delta offset (for explicit-`v0` configs,
    /// the energy implied by the variance relation).
    pub energy: f64,
    /// Offset actually added (0 or Δ).
    pub energy_offset_applied: f64,
    /// Initial variance for the moment model.
    pub v0: f64,
    pub skewness: f64,
    pub skewness_note: Option<String>,
    pub energy_regime: EnergyRegime,
}

#[derive(Debug, Clone, Serialize)]
struct PotentialEcho {
    a: f64,
    b: f64,
    c: f64,
}

#[derive(Debug, Clone, Serialize)]
struct InitEcho {
    x0: f64,
    k0: f64,
    branch: Branch,
    energy: f64,
    energy_offset_applied: f64,
    v0: f64,
    skewness: f64,
    skewness_note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
struct NumericsEcho {
    dt: f64,
    t_end: f64,
    stride: usize,
}

/// Early termination of a moment run, carried in the report instead of
/// failing the run: the samples up to that time are still analyzable.
#[derive(Debug, Clone, Serialize)]
pub struct Truncation {
    pub time: f64,
    pub reason: String,
}

/// Per-model run record written as `<model>_report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub model: Model,
    potential: PotentialEcho,
    init: InitEcho,
    numerics: NumericsEcho,
    pub barrier_x: f64,
    pub energy_regime: EnergyRegime,
    pub n_samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated: Option<Truncation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift: Option<DriftSummary>,
    /// Measured `<H>` of the sampled packet (wave runs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrete_energy: Option<f64>,
    pub tunneling: TunnelingReport,
}

/// Everything a run produced, for the caller's stdout summary.
pub struct RunOutcome {
    pub moments: Option<RunReport>,
    pub tdse: Option<RunReport>,
    pub comparison: Option<ComparisonReport>,
    pub directory: PathBuf,
}

/// Resolves landscape, energy (with offset), variance, and skewness.
pub fn resolve(config: &RunConfig) -> Result<ResolvedScenario, HarnessError> {
    config.validate()?;
    let p = config.potential;
    let params = PotentialParams::new(p.a, p.b, p.c)?;
    let landscape = params.landscape()?;
    let (Some(barrier_x), Some(beta_plus), Some(delta)) =
        (landscape.beta_minus, landscape.beta_plus, landscape.delta)
    else {
        return Err(FixedPointError::NoBarrier(landscape.regime).into());
    };

    let x0 = config.init.x0;
    let k0 = config.init.k0;
    let branch = config.init.branch;
    let offset = match config.init.energy_offset {
        EnergyOffset::None => 0.0,
        EnergyOffset::PlusDelta => delta,
    };
    // The moment-model inversion uses the origin-centered energy relation
    // with the broad branch by default: the calibration that reproduces the
    // reference verdicts (see README).
    let (energy, v0) = match (config.init.energy, config.init.v0) {
        (Some(e0), None) => {
            let e = e0 + offset;
            let v0 = variance_for_energy(&params, x0, k0, e, branch, EnergyFormula::Centered)?;
            (e, v0)
        }
        (None, Some(v0)) => {
            if !(v0 > 0.0 && v0.is_finite()) {
                return Err(PacketError::NonPositiveVariance(v0).into());
            }
            (energy_with(EnergyFormula::Centered, &params, x0, v0, k0), v0)
        }
        _ => return Err(ConfigError::EnergyVarianceConflict.into()),
    };

    let (skewness, skewness_note) = match config.skewness_policy {
        SkewnessPolicy::Zero => (0.0, None),
        SkewnessPolicy::FixedPoint => match barrier_fixed_point(&params, energy, VstarBranch::Plus)? {
            Some(sol) => (sol.skewness, None),
            None => (
                0.0,
                Some(format!(
                    "no barrier fixed point at E = {energy}; skewness fell back to 0"
                )),
            ),
        },
    };
    let energy_regime = regime_of(&params, energy)?;
    Ok(ResolvedScenario {
        params,
        barrier_x,
        beta_plus,
        delta,
        x0,
        k0,
        branch,
        energy,
        energy_offset_applied: offset,
        v0,
        skewness,
        skewness_note,
        energy_regime,
    })
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<(), HarnessError> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| HarnessError::Io { path, source })
}

fn report_for(
    config: &RunConfig,
    scn: &ResolvedScenario,
    model: Model,
    v0: f64,
    n_samples: usize,
    tunneling: TunnelingReport,
) -> RunReport {
    RunReport {
        model,
        potential: PotentialEcho {
            a: scn.params.a,
            b: scn.params.b,
            c: scn.params.c,
        },
        init: InitEcho {
            x0: scn.x0,
            k0: scn.k0,
            branch: scn.branch,
            energy: scn.energy,
            energy_offset_applied: scn.energy_offset_applied,
            v0,
            skewness: scn.skewness,
            skewness_note: scn.skewness_note.clone(),
        },
        numerics: NumericsEcho {
            dt: config.resolved_dt(model),
            t_end: config.resolved_t_end(),
            stride: config.resolved_stride(model),
        },
        barrier_x: scn.barrier_x,
        energy_regime: scn.energy_regime,
        n_samples,
        truncated: None,
        drift: None,
        discrete_energy: None,
        tunneling,
    }
}

fn svg_refs(scn: &ResolvedScenario) -> [RefLine; 3] {
    [
        RefLine {
            y: scn.barrier_x,
            color: "red",
            label: "barrier",
        },
        RefLine {
            y: 0.0,
            color: "gray",
            label: "left min",
        },
        RefLine {
            y: scn.beta_plus,
            color: "gray",
            label: "right min",
        },
    ]
}

/// Runs the moment model and writes `moments.csv`, `moments_report.json`,
/// and (optionally) SVG charts. A variance collapse truncates the series
/// and is recorded in the report; it does not fail the run.
pub fn run_moments(
    config: &RunConfig,
    scn: &ResolvedScenario,
) -> Result<(RunReport, MomentSeries), HarnessError> {
    let sys = MomentSystemParams::new(scn.params, scn.energy, scn.skewness);
    let init = MomentState {
        mean_x: scn.x0,
        mean_p: scn.k0,
        variance: scn.v0,
        variance_rate: 0.0,
    };
    let dt = config.resolved_dt(Model::Moments);
    let t_end = config.resolved_t_end();
    let stride = config.resolved_stride(Model::Moments);
    let (series, truncated) = match integrate(&init, &sys, dt, t_end, stride) {
        Ok(series) => (series, None),
        Err(MomentError::VarianceCollapse { time, partial }) => (
            *partial,
            Some(Truncation {
                time,
                reason: "variance-collapse".to_string(),
            }),
        ),
        Err(err @ MomentError::NonFiniteState { .. }) => {
            return Err(HarnessError::Moment(err))
        }
    };

    let mut csv = String::from("t,mean_x,mean_p,variance,variance_rate,vp_diagnostic\n");
    for ((t, s), vp) in series
        .times
        .iter()
        .zip(&series.states)
        .zip(&series.vp_diagnostic)
    {
        csv.push_str(&csv_row(&[
            *t,
            s.mean_x,
            s.mean_p,
            s.variance,
            s.variance_rate,
            *vp,
        ]));
        csv.push('\n');
    }

    let mean_x: Vec<f64> = series.states.iter().map(|s| s.mean_x).collect();
    let tunneling = detect_tunneling(&series.times, &mean_x, scn.barrier_x)?;
    let mut report = report_for(config, scn, Model::Moments, scn.v0, series.times.len(), tunneling);
    report.truncated = truncated;

    let dir = &config.outputs.directory;
    write_artifact(dir, "moments.csv", &csv)?;
    write_artifact(dir, "moments_report.json", &to_json_string(&report))?;
    if config.outputs.emit_svg {
        let variance: Vec<f64> = series.states.iter().map(|s| s.variance).collect();
        write_artifact(
            dir,
            "moments_mean_x.svg",
            &line_chart("moment dynamics: mean position", "mean_x", &series.times, &mean_x, &svg_refs(scn)),
        )?;
        write_artifact(
            dir,
            "moments_variance.svg",
            &line_chart("moment dynamics: variance", "variance", &series.times, &variance, &[]),
        )?;
    }
    Ok((report, series))
}

/// Runs the wave-equation reference model and writes `tdse.csv`,
/// `tdse_report.json`, optional SVG charts, and optional `psi_<t>.csv`
/// probability snapshots.
pub fn run_tdse(
    config: &RunConfig,
    scn: &ResolvedScenario,
) -> Result<(RunReport, ObservableSeries), HarnessError> {
    let g = config.numerics.grid;
    let grid = Grid::new(g.x_min, g.x_max, g.n)?;
    let v0 = match config.init.v0 {
        Some(v0) => v0,
        None => variance_for_discrete_energy(
            &grid,
            &scn.params,
            scn.x0,
            scn.k0,
            scn.energy,
            scn.branch,
        )?,
    };
    let psi = sample_on_grid(
        &GaussianSpec {
            x0: scn.x0,
            v0,
            k0: scn.k0,
        },
        &grid,
    )?;
    let discrete_energy = measure(&psi, &scn.params).energy;

    let dt = config.resolved_dt(Model::Tdse);
    let t_end = config.resolved_t_end();
    let stride = config.resolved_stride(Model::Tdse);
    let dir = config.outputs.directory.clone();

    // Snapshots are written from inside the sampling observer; I/O failures
    // are stashed and surfaced after evolution.
    let snapshot_io: RefCell<Option<HarnessError>> = RefCell::new(None);
    let snapshot_every = config.outputs.snapshot_every;
    let emit_snapshots = config.outputs.emit_snapshots;
    let mut sample_index = 0usize;
    let series = evolve_with(
        &psi,
        &scn.params,
        dt,
        t_end,
        stride,
        EvolveOptions::default(),
        |t, field| {
            let index = sample_index;
            sample_index += 1;
            if !emit_snapshots || !index.is_multiple_of(snapshot_every) {
                return;
            }
            if snapshot_io.borrow().is_some() {
                return;
            }
            let mut csv = String::from("x,re,im,prob\n");
            for (x, amp) in field.grid().points().zip(field.amplitudes()) {
                csv.push_str(&csv_row(&[x, amp.re, amp.im, amp.norm_sqr()]));
                csv.push('\n');
            }
            if let Err(e) = write_artifact(&dir, &format!("psi_{t:.2}.csv"), &csv) {
                *snapshot_io.borrow_mut() = Some(e);
            }
        },
    )?;
    if let Some(err) = snapshot_io.into_inner() {
        return Err(err);
    }

    let mut csv = String::from("t,norm,mean_x,mean_p,variance,energy\n");
    for (t, o) in series.times.iter().zip(&series.samples) {
        csv.push_str(&csv_row(&[*t, o.norm, o.mean_x, o.mean_p, o.variance, o.energy]));
        csv.push('\n');
    }

    let mean_x: Vec<f64> = series.samples.iter().map(|o| o.mean_x).collect();
    let tunneling = detect_tunneling(&series.times, &mean_x, scn.barrier_x)?;
    let mut report = report_for(config, scn, Model::Tdse, v0, series.times.len(), tunneling);
    report.drift = Some(series.drift);
    report.discrete_energy = Some(discrete_energy);

    let dir = &config.outputs.directory;
    write_artifact(dir, "tdse.csv", &csv)?;
    write_artifact(dir, "tdse_report.json", &to_json_string(&report))?;
    if config.outputs.emit_svg {
        let variance: Vec<f64> = series.samples.iter().map(|o| o.variance).collect();
        write_artifact(
            dir,
            "tdse_mean_x.svg",
            &line_chart("wave dynamics: mean position", "mean_x", &series.times, &mean_x, &svg_refs(scn)),
        )?;
        write_artifact(
            dir,
            "tdse_variance.svg",
            &line_chart("wave dynamics: variance", "variance", &series.times, &variance, &[]),
        )?;
    }
    Ok((report, series))
}

fn moment_common(series: &MomentSeries) -> CommonSeries {
    CommonSeries {
        times: series.times.clone(),
        mean_x: series.states.iter().map(|s| s.mean_x).collect(),
        variance: series.states.iter().map(|s| s.variance).collect(),
    }
}

fn tdse_common(series: &ObservableSeries) -> CommonSeries {
    CommonSeries {
        times: series.times.clone(),
        mean_x: series.samples.iter().map(|o| o.mean_x).collect(),
        variance: series.samples.iter().map(|o| o.variance).collect(),
    }
}

/// Entry point: validates, resolves, runs the configured model(s), writes
/// artifacts, and returns the reports for a stdout summary.
pub fn run(config: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let scn = resolve(config)?;
    let dir = &config.outputs.directory;
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.clone(),
        source,
    })?;

    let mut outcome = RunOutcome {
        moments: None,
        tdse: None,
        comparison: None,
        directory: dir.clone(),
    };
    match config.model {
        Model::Moments => {
            let (report, _) = run_moments(config, &scn)?;
            outcome.moments = Some(report);
        }
        Model::Tdse => {
            let (report, _) = run_tdse(config, &scn)?;
            outcome.tdse = Some(report);
        }
        Model::Both => {
            let (m_report, m_series) = run_moments(config, &scn)?;
            let (t_report, t_series) = run_tdse(config, &scn)?;
            let cmp = compare(
                &moment_common(&m_series),
                &tdse_common(&t_series),
                scn.barrier_x,
            )?;
            write_artifact(dir, "comparison.json", &to_json_string(&cmp))?;
            outcome.moments = Some(m_report);
            outcome.tdse = Some(t_report);
            outcome.comparison = Some(cmp);
        }
    }
    Ok(outcome)
}

/// One-line human summary of a model run for stdout.
pub fn summarize(report: &RunReport) -> String {
    let mut line = format!(
        "{}: crossed={} n_crossings={} first_crossing={} E={} v0={}",
        report.model,
        report.tunneling.crossed,
        report.tunneling.n_crossings,
        report
            .tunneling
            .first_crossing_time
            .map(|t| format!("{t:.4}"))
            .unwrap_or_else(|| "-".to_string()),
        sig17(report.init.energy),
        sig17(report.init.v0),
    );
    if let Some(t) = &report.truncated {
        line.push_str(&format!(" [truncated at t={:.4}: {}]", t.time, t.reason));
    }
    if let Some(d) = &report.drift {
        line.push_str(&format!(
            " [drift: norm {:.3e}, energy {:.3e}]",
            d.max_norm_drift, d.max_energy_drift
        ));
    }
    line
}

/// Writes `stability_scan.csv` and `thresholds.json` for the scan
/// subcommand.
pub fn run_scan(
    params: &PotentialParams,
    e_min: f64,
    e_max: f64,
    step: f64,
    dir: &Path,
) -> Result<doublewell::ThresholdReport, HarnessError> {
    let (csv, report) = crate::scan::scan(params, e_min, e_max, step)?;
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_artifact(dir, "stability_scan.csv", &csv)?;
    write_artifact(dir, "thresholds.json", &to_json_string(&report))?;
    Ok(report)
}

/// Prints a report JSON to stdout and optionally persists it.
pub fn emit_report<T: Serialize>(
    value: &T,
    dir: Option<&Path>,
    name: &str,
) -> Result<(), HarnessError> {
    let text = to_json_string(value);
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|source| HarnessError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?;
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        write_artifact(dir, name, &text)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{GridConfig, OutputsConfig};

    fn test_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "doublewell-runner-{tag}-{}",
            std::process::id()
        ));
        let _ = std::fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn default_config_resolves_to_the_left_well_scenario() {
        let config = RunConfig::default();
        let scn = resolve(&config).unwrap();
        assert!((scn.barrier_x - 3.69).abs() < 0.01);
        assert!((scn.beta_plus - 7.73).abs() < 0.01);
        assert!((scn.delta - 4.68).abs() < 0.01);
        assert_eq!(scn.energy, 9.0);
        assert_eq!(scn.energy_offset_applied, 0.0);
        // Broad-branch variance for E=9 under the origin-centered relation.
        assert!((scn.v0 - 1.643).abs() < 0.005, "v0 = {}", scn.v0);
        // Plus-branch barrier fixed-point skewness at E=9.
        assert!((scn.skewness - 1.4249).abs() < 0.001, "S = {}", scn.skewness);
        assert_eq!(scn.energy_regime, EnergyRegime::ExistsUnstable);
    }

    #[test]
    fn plus_delta_offset_shifts_the_run_energy() {
        let mut config = RunConfig::default();
        config.init.x0 = 5.5;
        config.init.energy_offset = EnergyOffset::PlusDelta;
        let scn = resolve(&config).unwrap();
        assert!((scn.energy - (9.0 + scn.delta)).abs() < 1e-12);
        assert!((scn.energy_offset_applied - scn.delta).abs() < 1e-12);
    }

    #[test]
    fn explicit_v0_derives_the_energy_from_the_centered_relation() {
        let mut config = RunConfig::default();
        config.init.energy = None;
        config.init.v0 = Some(1.5);
        let scn = resolve(&config).unwrap();
        let expect = energy_with(EnergyFormula::Centered, &scn.params, 0.5, 1.5, 0.0);
        assert_eq!(scn.energy, expect);
        assert_eq!(scn.v0, 1.5);
    }

    #[test]
    fn below_existence_energy_falls_back_to_zero_skewness_with_note() {
        let mut config = RunConfig::default();
        config.init.energy = Some(5.0);
        let scn = resolve(&config).unwrap();
        assert_eq!(scn.skewness, 0.0);
        assert!(scn.skewness_note.is_some());
        assert_eq!(scn.energy_regime, EnergyRegime::NoFixedPoint);
    }

    #[test]
    fn zero_policy_skips_the_fixed_point() {
        let config = RunConfig {
            skewness_policy: SkewnessPolicy::Zero,
            ..RunConfig::default()
        };
        let scn = resolve(&config).unwrap();
        assert_eq!(scn.skewness, 0.0);
        assert!(scn.skewness_note.is_none());
    }

    #[test]
    fn error_classes_map_to_distinct_exit_codes() {
        // Invalid potential -> 3.
        let mut config = RunConfig::default();
        config.potential.a = -1.0;
        let err = resolve(&config).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        // Single-well regime has no barrier -> 4.
        let mut config = RunConfig::default();
        config.potential.c = 0.5;
        let err = resolve(&config).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        // Unreachable energy -> 5.
        let mut config = RunConfig::default();
        config.init.energy = Some(0.5);
        let err = resolve(&config).unwrap_err();
        assert_eq!(err.exit_code(), 5);
        // Conflicting init -> 2.
        let mut config = RunConfig::default();
        config.init.v0 = Some(1.0);
        let err = resolve(&config).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn moment_run_writes_deterministic_artifacts() {
        let dir = test_dir("moments");
        let mut config = RunConfig::default();
        config.numerics.t_end = Some(1.0);
        config.outputs = OutputsConfig {
            directory: dir.clone(),
            emit_svg: true,
            ..OutputsConfig::default()
        };
        let first = run(&config).unwrap();
        let report = first.moments.unwrap();
        assert_eq!(report.n_samples, 11); // 1000 steps, stride 100, + t=0
        assert!(!report.tunneling.crossed);
        let csv1 = std::fs::read(dir.join("moments.csv")).unwrap();
        let json1 = std::fs::read(dir.join("moments_report.json")).unwrap();
        assert!(dir.join("moments_mean_x.svg").exists());
        assert!(dir.join("moments_variance.svg").exists());
        run(&config).unwrap();
        let csv2 = std::fs::read(dir.join("moments.csv")).unwrap();
        let json2 = std::fs::read(dir.join("moments_report.json")).unwrap();
        assert_eq!(csv1, csv2, "CSV output must be byte-identical");
        assert_eq!(json1, json2, "JSON output must be byte-identical");
        let header = String::from_utf8(csv1).unwrap();
        assert!(header.starts_with("t,mean_x,mean_p,variance,variance_rate,vp_diagnostic\n"));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn both_mode_writes_a_comparison() {
        let dir = test_dir("both");
        let mut config = RunConfig {
            model: Model::Both,
            ..RunConfig::default()
        };
        config.numerics.t_end = Some(0.5);
        config.numerics.grid = GridConfig {
            x_min: -20.0,
            x_max: 30.0,
            n: 2001,
        };
        config.outputs.directory = dir.clone();
        let outcome = run(&config).unwrap();
        let cmp = outcome.comparison.unwrap();
        assert!(cmp.verdict_agreement);
        assert!(cmp.rms_mean_x >= 0.0);
        assert!(dir.join("moments.csv").exists());
        assert!(dir.join("tdse.csv").exists());
        assert!(dir.join("comparison.json").exists());
        let tdse_csv = std::fs::read_to_string(dir.join("tdse.csv")).unwrap();
        assert!(tdse_csv.starts_with("t,norm,mean_x,mean_p,variance,energy\n"));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn snapshots_follow_the_configured_cadence() {
        let dir = test_dir("snapshots");
        let mut config = RunConfig {
            model: Model::Tdse,
            ..RunConfig::default()
        };
        config.numerics.t_end = Some(0.2);
        config.numerics.stride = Some(5);
        config.numerics.grid = GridConfig {
            x_min: -20.0,
            x_max: 30.0,
            n: 1001,
        };
        config.outputs = OutputsConfig {
            directory: dir.clone(),
            emit_snapshots: true,
            snapshot_every: 2,
            ..OutputsConfig::default()
        };
        run(&config).unwrap();
        // 20 steps, stride 5 -> samples at t = 0, .05, .10, .15, .20;
        // snapshots at every 2nd sample: t = 0, .10, .20.
        assert!(dir.join("psi_0.00.csv").exists());
        assert!(dir.join("psi_0.10.csv").exists());
        assert!(dir.join("psi_0.20.csv").exists());
        assert!(!dir.join("psi_0.05.csv").exists());
        let snap = std::fs::read_to_string(dir.join("psi_0.00.csv")).unwrap();
        assert!(snap.starts_with("x,re,im,prob\n"));
        assert_eq!(snap.lines().count(), 1002);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
