//! Run configuration: JSON file plus command-line overrides (flags win).
//! Every field has a default, so an empty config object `{}` is a valid
//! left-well moment run.

use doublewell::Branch;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use thiserror::Error;

/// Which model(s) a run executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Moments,
    Tdse,
    Both,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Moments => "moments",
            Model::Tdse => "tdse",
            Model::Both => "both",
        })
    }
}

/// Shift applied to the configured energy before anything else uses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyOffset {
    /// Use the energy as given.
    #[default]
    None,
    /// Add the well offset Δ = φ(0) − φ(β₊), the right-well convention that
    /// balances left- and right-well initializations.
    PlusDelta,
}

/// How the initial skewness is chosen for moment runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SkewnessPolicy {
    /// Skewness of the plus-branch barrier fixed point at the run energy;
    /// falls back to zero (with a note in the report) below the existence
    /// threshold.
    #[default]
    FixedPoint,
    /// Always zero.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PotentialConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig {
            a: 10.0,
            b: 4.0,
            c: 0.35,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitConfig {
    /// Initial mean position.
    pub x0: f64,
    /// Initial mean momentum (wave number of the packet's phase factor).
    pub k0: f64,
    /// Target energy; mutually exclusive with `v0`.
    pub energy: Option<f64>,
    /// Explicit initial variance; mutually exclusive with `energy`.
    pub v0: Option<f64>,
    /// Which variance root realizes a target energy. The shipped default is
    /// the broad branch — the calibration that reproduces all reference
    /// verdicts (see README).
    pub branch: Branch,
    pub energy_offset: EnergyOffset,
}

impl Default for InitConfig {
    fn default() -> Self {
        InitConfig {
            x0: 0.5,
            k0: 0.0,
            energy: Some(9.0),
            v0: None,
            branch: Branch::Large,
            energy_offset: EnergyOffset::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            x_min: -100.0,
            x_max: 100.0,
            n: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsConfig {
    /// Time step; defaults to 1e-3 for moment runs and 0.01 for wave runs.
    pub dt: Option<f64>,
    /// Simulated horizon; default 100.
    pub t_end: Option<f64>,
    /// Steps between samples; defaults to 100 for moment runs and 10 for
    /// wave runs (about 1001 samples either way).
    pub stride: Option<usize>,
    pub grid: GridConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputsConfig {
    /// Artifact directory; created if missing.
    pub directory: PathBuf,
    /// Also emit SVG line charts of mean position and variance.
    pub emit_svg: bool,
    /// Also emit `psi_<t>.csv` probability snapshots (wave runs only).
    pub emit_snapshots: bool,
    /// Snapshots are written every this many samples.
    pub snapshot_every: usize,
}

impl Default for OutputsConfig {
    fn default() -> Self {
        OutputsConfig {
            directory: PathBuf::from("out"),
            emit_svg: false,
            emit_snapshots: false,
            snapshot_every: 100,
        }
    }
}

/// Complete description of one scenario run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub model: Model,
    pub potential: PotentialConfig,
    pub init: InitConfig,
    pub numerics: NumericsConfig,
    pub outputs: OutputsConfig,
    pub skewness_policy: SkewnessPolicy,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: Model::Moments,
            potential: PotentialConfig::default(),
            init: InitConfig::default(),
            numerics: NumericsConfig::default(),
            outputs: OutputsConfig::default(),
            skewness_policy: SkewnessPolicy::default(),
        }
    }
}

/// Command-line overrides; every set field wins over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub model: Option<Model>,
    pub energy: Option<f64>,
    pub x0: Option<f64>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub branch: Option<Branch>,
    pub out: Option<PathBuf>,
    pub emit_svg: bool,
    pub emit_snapshots: bool,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config parse error in {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("init must set exactly one of `energy` or `v0`")]
    EnergyVarianceConflict,
    #[error("energy_offset = plus-delta requires `energy` (an explicit `v0` has no energy to shift)")]
    OffsetWithoutEnergy,
    #[error("numerics must satisfy dt > 0, t_end > 0, stride > 0 (got dt={dt:?}, t_end={t_end:?}, stride={stride:?})")]
    BadNumerics {
        dt: Option<f64>,
        t_end: Option<f64>,
        stride: Option<usize>,
    },
    #[error("snapshot_every must be positive")]
    BadSnapshotCadence,
    #[error("--model {flag} conflicts with the `{subcommand}` subcommand")]
    ModelMismatch { flag: Model, subcommand: Model },
}

impl RunConfig {
    /// Loads a config file, or the defaults when no path is given.
    pub fn load(path: Option<&std::path::Path>) -> Result<Self, ConfigError> {
        match path {
            None => Ok(RunConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| {
                    ConfigError::Unreadable {
                        path: p.to_path_buf(),
                        source,
                    }
                })?;
                serde_json::from_str(&text).map_err(|source| ConfigError::Parse {
                    path: p.to_path_buf(),
                    source,
                })
            }
        }
    }

    /// Applies command-line overrides. Setting `--energy` clears any `v0`
    /// from the file: the two are mutually exclusive and flags win.
    pub fn apply(&mut self, ov: &Overrides) {
        if let Some(m) = ov.model {
            self.model = m;
        }
        if let Some(e) = ov.energy {
            self.init.energy = Some(e);
            self.init.v0 = None;
        }
        if let Some(x0) = ov.x0 {
            self.init.x0 = x0;
        }
        if let Some(t_end) = ov.t_end {
            self.numerics.t_end = Some(t_end);
        }
        if let Some(dt) = ov.dt {
            self.numerics.dt = Some(dt);
        }
        if let Some(branch) = ov.branch {
            self.init.branch = branch;
        }
        if let Some(out) = &ov.out {
            self.outputs.directory = out.clone();
        }
        if ov.emit_svg {
            self.outputs.emit_svg = true;
        }
        if ov.emit_snapshots {
            self.outputs.emit_snapshots = true;
        }
    }

    /// Structural validation (value-level checks live in the modules that
    /// consume the values).
    pub fn validate(&self) -> Result<(), ConfigError> {
        match (self.init.energy, self.init.v0) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(ConfigError::EnergyVarianceConflict)
            }
            _ => {}
        }
        if self.init.energy.is_none() && self.init.energy_offset == EnergyOffset::PlusDelta {
            return Err(ConfigError::OffsetWithoutEnergy);
        }
        let bad_dt = self.numerics.dt.is_some_and(|dt| !(dt > 0.0 && dt.is_finite()));
        let bad_t = self
            .numerics
            .t_end
            .is_some_and(|t| !(t > 0.0 && t.is_finite()));
        let bad_stride = self.numerics.stride.is_some_and(|s| s == 0);
        if bad_dt || bad_t || bad_stride {
            return Err(ConfigError::BadNumerics {
                dt: self.numerics.dt,
                t_end: self.numerics.t_end,
                stride: self.numerics.stride,
            });
        }
        if self.outputs.snapshot_every == 0 {
            return Err(ConfigError::BadSnapshotCadence);
        }
        Ok(())
    }

    /// Model-dependent numerics defaults.
    pub fn resolved_dt(&self, model: Model) -> f64 {
        self.numerics.dt.unwrap_or(match model {
            Model::Tdse => 0.01,
            _ => 1e-3,
        })
    }

    pub fn resolved_t_end(&self) -> f64 {
        self.numerics.t_end.unwrap_or(100.0)
    }

    pub fn resolved_stride(&self, model: Model) -> usize {
        self.numerics.stride.unwrap_or(match model {
            Model::Tdse => 10,
            _ => 100,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_a_valid_default_config() {
        let cfg: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
        cfg.validate().unwrap();
        assert_eq!(cfg.init.energy, Some(9.0));
        assert_eq!(cfg.init.branch, Branch::Large);
        assert_eq!(cfg.resolved_dt(Model::Moments), 1e-3);
        assert_eq!(cfg.resolved_dt(Model::Tdse), 0.01);
        assert_eq!(cfg.resolved_t_end(), 100.0);
    }

    #[test]
    fn energy_and_v0_are_mutually_exclusive() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"init": {"energy": 9.0, "v0": 1.0}}"#).unwrap();
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::EnergyVarianceConflict)
        ));
        let cfg: RunConfig =
            serde_json::from_str(r#"{"init": {"energy": null, "v0": null}}"#).unwrap();
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::EnergyVarianceConflict)
        ));
    }

    #[test]
    fn v0_only_configs_pass_validation() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"init": {"energy": null, "v0": 1.5}}"#).unwrap();
        cfg.validate().unwrap();
    }

    #[test]
    fn plus_delta_requires_energy() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"init": {"energy": null, "v0": 1.5, "energy_offset": "plus-delta"}}"#,
        )
        .unwrap();
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::OffsetWithoutEnergy)
        ));
    }

    #[test]
    fn flags_override_file_values_and_clear_v0() {
        let mut cfg: RunConfig =
            serde_json::from_str(r#"{"init": {"energy": null, "v0": 1.5}, "model": "tdse"}"#)
                .unwrap();
        cfg.apply(&Overrides {
            model: Some(Model::Moments),
            energy: Some(14.95),
            x0: Some(5.5),
            t_end: Some(50.0),
            dt: Some(5e-4),
            branch: Some(Branch::Small),
            out: Some(PathBuf::from("artifacts")),
            emit_svg: true,
            emit_snapshots: false,
        });
        cfg.validate().unwrap();
        assert_eq!(cfg.model, Model::Moments);
        assert_eq!(cfg.init.energy, Some(14.95));
        assert_eq!(cfg.init.v0, None);
        assert_eq!(cfg.init.x0, 5.5);
        assert_eq!(cfg.numerics.t_end, Some(50.0));
        assert_eq!(cfg.numerics.dt, Some(5e-4));
        assert_eq!(cfg.init.branch, Branch::Small);
        assert_eq!(cfg.outputs.directory, PathBuf::from("artifacts"));
        assert!(cfg.outputs.emit_svg);
    }

    #[test]
    fn unknown_fields_are_rejected_with_location() {
        let err = serde_json::from_str::<RunConfig>(r#"{"modle": "tdse"}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("modle"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn kebab_case_tokens_round_trip() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{
                "model": "both",
                "init": {"branch": "small", "energy_offset": "plus-delta"},
                "skewness_policy": "zero"
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.model, Model::Both);
        assert_eq!(cfg.init.branch, Branch::Small);
        assert_eq!(cfg.init.energy_offset, EnergyOffset::PlusDelta);
        assert_eq!(cfg.skewness_policy, SkewnessPolicy::Zero);
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn bad_numerics_are_rejected() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"numerics": {"dt": -0.1}}"#).unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::BadNumerics { .. })));
        let cfg: RunConfig =
            serde_json::from_str(r#"{"numerics": {"stride": 0}}"#).unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::BadNumerics { .. })));
    }
}
