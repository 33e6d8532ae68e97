//! JSON experiment configs, the per-run report, and the CSV/JSON artifacts
//! written for a run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::InvariantModel;
use crate::map::{next_omega, Branch};
use crate::orbit::{
    check_assumption, detect_period, drift_pct, max_prediction_error, simulate, BranchPolicy,
    Termination, Trajectory,
};
use crate::params::{MapParams, PSign, Rotation, STANDARD_G};
use crate::stability::monodromy;

/// Environment variable that overrides the default output directory.
pub const OUT_DIR_ENV: &str = "ROTORMAP_OUT_DIR";

pub const CSV_HEADER: &str = "k,theta,omega,omega_pred,err_pct,discriminant,feasible";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaThetaSpec {
    /// `2π·p/q`.
    TwoPiFraction {
        p: u32,
        q: u32,
    },
    Radians(f64),
    /// `scale·2π` for irrational steps, e.g. `0.2828427124746190` for `√2/5`.
    TwoPiScale(f64),
}

impl DeltaThetaSpec {
    pub fn resolve(&self) -> Result<Rotation> {
        match *self {
            DeltaThetaSpec::TwoPiFraction { p, q } => Rotation::rational(p, q),
            DeltaThetaSpec::Radians(r) => Rotation::radians_step(r),
            DeltaThetaSpec::TwoPiScale(s) => Rotation::turn_fraction(s),
        }
    }
}

/// Initial angle: radians, or a multiple of half the rotation step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Theta1Spec {
    Radians(f64),
    HalfSteps { half_steps: u32 },
}

impl Theta1Spec {
    pub fn resolve(&self, delta_theta: f64) -> Result<f64> {
        let t = match *self {
            Theta1Spec::Radians(t) => t,
            Theta1Spec::HalfSteps { half_steps } => half_steps as f64 * 0.5 * delta_theta,
        };
        if t.is_finite() {
            Ok(t)
        } else {
            Err(Error::Config(format!("theta1 must be finite, got {t}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BranchSpec {
    Uniform(Branch),
    Policy(BranchPolicy),
}

impl Default for BranchSpec {
    fn default() -> Self {
        BranchSpec::Uniform(Branch::Positive)
    }
}

impl BranchSpec {
    pub fn policy(&self) -> BranchPolicy {
        match self {
            BranchSpec::Uniform(b) => BranchPolicy::uniform(*b),
            BranchSpec::Policy(p) => p.clone(),
        }
    }
}

fn default_g() -> f64 {
    STANDARD_G
}
fn default_ell() -> f64 {
    1.0
}
fn default_sign() -> PSign {
    PSign::Negative
}
fn default_steps() -> usize {
    1200
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub delta_theta: DeltaThetaSpec,
    #[serde(default = "default_g")]
    pub g: f64,
    #[serde(default = "default_ell")]
    pub ell: f64,
    #[serde(default = "default_sign")]
    pub p_sign: PSign,
    pub theta1: Theta1Spec,
    pub omega1: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default)]
    pub branch: BranchSpec,
}

/// A config that passed validation, with everything resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub params: MapParams,
    pub theta1: f64,
    pub omega1: f64,
    pub steps: usize,
    pub policy: BranchPolicy,
}

impl ExperimentConfig {
    pub fn new(
        delta_theta: DeltaThetaSpec,
        p_sign: PSign,
        theta1: Theta1Spec,
        omega1: f64,
    ) -> Self {
        Self {
            delta_theta,
            g: STANDARD_G,
            ell: 1.0,
            p_sign,
            theta1,
            omega1,
            steps: default_steps(),
            branch: BranchSpec::default(),
        }
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_branch(mut self, branch: BranchSpec) -> Self {
        self.branch = branch;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<Experiment> {
        let rotation = self.delta_theta.resolve()?;
        let params = MapParams::new(rotation, self.g, self.ell, self.p_sign)?;
        let theta1 = self.theta1.resolve(params.delta_theta())?;
        if !(self.omega1.is_finite() && self.omega1 > 0.0) {
            return Err(Error::NonPositive {
                name: "omega1",
                value: self.omega1,
            });
        }
        if self.steps == 0 {
            return Err(Error::NonPositive {
                name: "steps",
                value: 0.0,
            });
        }
        let policy = self.branch.policy();
        for o in &policy.overrides {
            if o.k == 0 {
                return Err(Error::Config("branch override index k is 1-based".into()));
            }
            if o.every == Some(0) {
                return Err(Error::Config(
                    "branch override stride must be positive".into(),
                ));
            }
        }
        Ok(Experiment {
            params,
            theta1,
            omega1: self.omega1,
            steps: self.steps,
            policy,
        })
    }
}

/// A run with its analyses.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub experiment: Experiment,
    pub model: InvariantModel,
    pub trajectory: Trajectory,
    pub report: RunReport,
}

/// Values rounded to the precision of the reference tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundedValues {
    pub max_err_pct: Option<f64>,
    pub drift_pct: Option<f64>,
    pub monodromy: Option<[[f64; 2]; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub delta_theta: f64,
    pub p_value: f64,
    pub sigma: f64,
    pub e_bar: f64,
    pub theta1: f64,
    pub omega1: f64,
    /// Completed feasible transitions.
    pub steps: usize,
    pub termination: Termination,
    pub periodic: bool,
    pub period: Option<usize>,
    pub drift_pct: Option<f64>,
    pub drift_at_k: Option<usize>,
    pub max_err_pct: Option<f64>,
    pub max_err_k: Option<usize>,
    pub prediction_unavailable: usize,
    pub assumption_satisfied: bool,
    pub min_omega: f64,
    pub monodromy: Option<[[f64; 2]; 2]>,
    pub eigenvalue_magnitudes: Option<[f64; 2]>,
    pub rounded: RoundedValues,
}

/// Four decimals for `|v| ≥ 0.1`, otherwise five significant digits.
pub fn table_round(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    if v.abs() >= 0.1 {
        (v * 1e4).round() / 1e4
    } else {
        let mag = v.abs().log10().floor() as i32;
        let scale = 10f64.powi(4 - mag);
        (v * scale).round() / scale
    }
}

pub fn analyze(experiment: Experiment) -> Result<RunOutput> {
    let Experiment {
        params,
        theta1,
        omega1,
        steps,
        ref policy,
    } = experiment;
    let trajectory = simulate(&params, theta1, omega1, steps, policy)?;
    let model = InvariantModel::new(&params, trajectory.first().theta, omega1);
    let period = detect_period(&trajectory, &params);
    let drift = params
        .rotation()
        .return_stride()
        .and_then(|q| drift_pct(&trajectory, q).ok());
    let err = max_prediction_error(&trajectory, &model);
    let assumption = check_assumption(&trajectory, &params);
    let mono = monodromy(&trajectory, &params).ok();
    let monodromy_matrix = mono.as_ref().map(|m| m.matrix.0);
    let report = RunReport {
        delta_theta: params.delta_theta(),
        p_value: params.p_value(),
        sigma: model.sigma,
        e_bar: model.e_bar,
        theta1: trajectory.first().theta,
        omega1,
        steps: trajectory.completed_steps(),
        termination: trajectory.termination,
        periodic: period.is_some(),
        period,
        drift_pct: drift.map(|d| d.pct),
        drift_at_k: drift.map(|d| d.at_k),
        max_err_pct: err.map(|e| e.pct),
        max_err_k: err.map(|e| e.at_k),
        prediction_unavailable: err.map_or(trajectory.states.len(), |e| e.unavailable),
        assumption_satisfied: assumption.satisfied,
        min_omega: assumption.min_omega,
        monodromy: monodromy_matrix,
        eigenvalue_magnitudes: mono.as_ref().map(|m| m.eigenvalue_magnitudes()),
        rounded: RoundedValues {
            max_err_pct: err.map(|e| table_round(e.pct)),
            drift_pct: drift.map(|d| table_round(d.pct)),
            monodromy: monodromy_matrix.map(|m| m.map(|row| row.map(table_round))),
        },
    };
    Ok(RunOutput {
        experiment,
        model,
        trajectory,
        report,
    })
}

pub fn run_config(config: &ExperimentConfig) -> Result<RunOutput> {
    analyze(config.validate()?)
}

/// Trajectory table, one row per state.
pub fn trajectory_csv(run: &RunOutput) -> String {
    let params = &run.experiment.params;
    let traj = &run.trajectory;
    let discs = traj.outgoing_discriminants(params);
    let last = traj.states.len() - 1;
    let mut out = String::with_capacity(traj.states.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (i, s) in traj.states.iter().enumerate() {
        let pred = run.model.omega_pred(s.theta).ok();
        let feasible = if i < last {
            true
        } else {
            match traj.termination {
                Termination::Infeasible { .. } => false,
                Termination::WindowExhausted => {
                    let branch = run.experiment.policy.branch_at(s.k);
                    next_omega(s.theta, s.omega, params.p_value(), branch)
                        .0
                        .is_ok()
                }
            }
        };
        let _ = write!(out, "{},{},{},", s.k, s.theta, s.omega);
        match pred {
            Some(p) => {
                let _ = write!(out, "{},{}", p, 100.0 * (p - s.omega) / s.omega);
            }
            None => out.push(','),
        }
        let _ = writeln!(out, ",{},{}", discs[i], feasible);
    }
    out
}

pub fn report_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Files written by [`write_run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunArtifact {
    pub trajectory_csv: PathBuf,
    pub report_json: PathBuf,
    pub svg: Option<PathBuf>,
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

/// Write `<name>.csv` and `<name>.json` (and `<name>.svg` when asked) into
/// `dir`.
pub fn write_run(run: &RunOutput, dir: &Path, name: &str, with_svg: bool) -> Result<RunArtifact> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let csv = dir.join(format!("{name}.csv"));
    let json = dir.join(format!("{name}.json"));
    fs::write(&csv, trajectory_csv(run)).map_err(|e| io_err(&csv, e))?;
    fs::write(&json, report_json(&run.report)).map_err(|e| io_err(&json, e))?;
    let svg = if with_svg {
        let path = dir.join(format!("{name}.svg"));
        let doc = crate::plot::polar_svg(&run.trajectory, &run.model, run.report.period);
        fs::write(&path, doc).map_err(|e| io_err(&path, e))?;
        Some(path)
    } else {
        None
    };
    Ok(RunArtifact {
        trajectory_csv: csv,
        report_json: json,
        svg,
    })
}

/// Output directory: explicit choice, then [`OUT_DIR_ENV`], then `fallback`.
pub fn output_dir(explicit: Option<&Path>, fallback: &str) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(fallback))
}
