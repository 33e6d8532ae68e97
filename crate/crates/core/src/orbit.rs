//! Trajectories and the per-run metrics: periodicity, drift and
//! prediction error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::InvariantModel;
use crate::map::{advance, Branch, Infeasibility, State};
use crate::params::{positive, MapParams};

/// Relative tolerance for `ω` at each return to `θ₁`.
pub const PERIOD_TOLERANCE: f64 = 1e-8;

/// Forces `branch` on the step leaving state `k`, and on every `every`-th
/// step after it when a stride is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchOverride {
    pub k: usize,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub every: Option<usize>,
}

impl BranchOverride {
    fn applies(&self, k: usize) -> bool {
        match self.every {
            Some(stride) if stride > 0 => k >= self.k && (k - self.k).is_multiple_of(stride),
            _ => k == self.k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPolicy {
    pub default: Branch,
    #[serde(default)]
    pub overrides: Vec<BranchOverride>,
}

impl Default for BranchPolicy {
    fn default() -> Self {
        Self::uniform(Branch::Positive)
    }
}

impl BranchPolicy {
    pub fn uniform(branch: Branch) -> Self {
        Self {
            default: branch,
            overrides: Vec::new(),
        }
    }

    pub fn with_override(mut self, o: BranchOverride) -> Self {
        self.overrides.push(o);
        self
    }

    /// Branch for the step from state `k` to `k + 1`. Later overrides win.
    pub fn branch_at(&self, k: usize) -> Branch {
        self.overrides
            .iter()
            .rev()
            .find(|o| o.applies(k))
            .map_or(self.default, |o| o.branch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Termination {
    WindowExhausted,
    Infeasible {
        at_k: usize,
        cause: Infeasibility,
        discriminant: f64,
    },
}

/// Per-transition diagnostics, indexed like the source state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub discriminant: f64,
    pub residual: f64,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub theta1: f64,
    pub states: Vec<State>,
    pub steps: Vec<StepRecord>,
    pub termination: Termination,
    pub branch_policy: BranchPolicy,
}

impl Trajectory {
    /// Number of feasible transitions (`states.len() − 1`).
    pub fn completed_steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn omegas(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|s| s.omega)
    }

    pub fn first(&self) -> &State {
        &self.states[0]
    }

    /// State with 1-based index `k`.
    pub fn state(&self, k: usize) -> Option<&State> {
        k.checked_sub(1).and_then(|i| self.states.get(i))
    }

    /// Discriminant of the step leaving each state; the last entry is the
    /// step that was not taken (infeasible, or past the window).
    pub fn outgoing_discriminants(&self, params: &MapParams) -> Vec<f64> {
        let mut d: Vec<f64> = self.steps.iter().map(|s| s.discriminant).collect();
        match self.termination {
            Termination::Infeasible { discriminant, .. } => d.push(discriminant),
            Termination::WindowExhausted => {
                let last = self.states.last().expect("trajectory is never empty");
                d.push(crate::map::discriminant(
                    last.theta,
                    last.omega,
                    params.p_value(),
                ));
            }
        }
        d
    }

    /// A copy truncated to at most `transitions` steps.
    pub fn head(&self, transitions: usize) -> Trajectory {
        let n = transitions.min(self.completed_steps());
        Trajectory {
            theta1: self.theta1,
            states: self.states[..=n].to_vec(),
            steps: self.steps[..n].to_vec(),
            termination: if n < self.completed_steps() {
                Termination::WindowExhausted
            } else {
                self.termination
            },
            branch_policy: self.branch_policy.clone(),
        }
    }
}

/// Iterate the map for up to `max_steps` transitions from `(θ₁, ω₁)`.
///
/// Running out of real, positive roots ends the run early; the cause is
/// recorded in [`Trajectory::termination`] rather than returned as an
/// error.
pub fn simulate(
    params: &MapParams,
    theta1: f64,
    omega1: f64,
    max_steps: usize,
    policy: &BranchPolicy,
) -> Result<Trajectory> {
    positive("omega1", omega1)?;
    if max_steps == 0 {
        return Err(Error::NonPositive {
            name: "steps",
            value: 0.0,
        });
    }
    let rotation = params.rotation();
    let mut states = Vec::with_capacity(max_steps + 1);
    let mut steps = Vec::with_capacity(max_steps);
    states.push(State::new(1, rotation.angle_at(theta1, 1), omega1));
    let mut termination = Termination::WindowExhausted;
    for _ in 0..max_steps {
        let cur = *states.last().unwrap();
        let branch = policy.branch_at(cur.k);
        let out = advance(&cur, rotation.angle_at(theta1, cur.k + 1), params, branch);
        match out.next {
            Ok(next) => {
                steps.push(StepRecord {
                    discriminant: out.discriminant,
                    residual: out.residual.unwrap_or(0.0),
                    branch,
                });
                states.push(next);
            }
            Err(cause) => {
                termination = Termination::Infeasible {
                    at_k: cur.k,
                    cause,
                    discriminant: out.discriminant,
                };
                break;
            }
        }
    }
    Ok(Trajectory {
        theta1,
        states,
        steps,
        termination,
        branch_policy: policy.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub satisfied: bool,
    pub min_omega: f64,
}

/// `min_k ω_k² > |P|`, strictly.
pub fn check_assumption(trajectory: &Trajectory, params: &MapParams) -> AssumptionCheck {
    let min_omega = trajectory.omegas().fold(f64::INFINITY, f64::min);
    AssumptionCheck {
        satisfied: min_omega * min_omega > params.p_value().abs(),
        min_omega,
    }
}

/// Indices `k = 1 + m·q` (m ≥ 1) at which the angle is back at `θ₁`.
fn return_indices(trajectory: &Trajectory, stride: usize) -> impl Iterator<Item = usize> + '_ {
    (1..)
        .map(move |m| 1 + m * stride)
        .take_while(|&k| k <= trajectory.states.len())
}

/// Period `q` if every return to `θ₁` within the window brings `ω` back to
/// `ω₁` within [`PERIOD_TOLERANCE`]; `None` for irrational rotations, for
/// drifting orbits and when no return happened.
pub fn detect_period(trajectory: &Trajectory, params: &MapParams) -> Option<usize> {
    let q = params.rotation().return_stride()?;
    let w1 = trajectory.first().omega;
    let mut seen = false;
    for k in return_indices(trajectory, q) {
        seen = true;
        let wk = trajectory.state(k)?.omega;
        if ((wk - w1) / w1).abs() > PERIOD_TOLERANCE {
            return None;
        }
    }
    seen.then_some(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Drift {
    pub pct: f64,
    /// 1-based index of the last return used.
    pub at_k: usize,
}

/// `100·(ω_{k*} − ω₁)/ω₁` at the last return index `k* = 1 + m·q` inside the
/// trajectory.
pub fn drift_pct(trajectory: &Trajectory, stride: usize) -> Result<Drift> {
    let k = return_indices(trajectory, stride)
        .last()
        .ok_or(Error::NoReturn)?;
    let w1 = trajectory.first().omega;
    let wk = trajectory.states[k - 1].omega;
    Ok(Drift {
        pct: 100.0 * (wk - w1) / w1,
        at_k: k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionError {
    /// Signed `100·(predicted − exact)/exact` with the largest magnitude.
    pub pct: f64,
    pub at_k: usize,
    /// States where the model had no real prediction.
    pub unavailable: usize,
}

/// Signed percentage error of `predict` against the trajectory, largest in
/// magnitude. `None` when no state had a prediction.
pub fn max_error_against<F>(trajectory: &Trajectory, mut predict: F) -> Option<PredictionError>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut best: Option<(f64, usize)> = None;
    let mut unavailable = 0;
    for s in &trajectory.states {
        match predict(s.theta) {
            Ok(pred) => {
                let e = 100.0 * (pred - s.omega) / s.omega;
                if best.is_none_or(|(b, _)| e.abs() > b.abs()) {
                    best = Some((e, s.k));
                }
            }
            Err(_) => unavailable += 1,
        }
    }
    best.map(|(pct, at_k)| PredictionError {
        pct,
        at_k,
        unavailable,
    })
}

pub fn max_prediction_error(
    trajectory: &Trajectory,
    model: &InvariantModel,
) -> Option<PredictionError> {
    max_error_against(trajectory, |theta| model.omega_pred(theta))
}

/// Location of an extreme value of `ω` along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub omega: f64,
    pub theta: f64,
    pub k: usize,
}

pub fn omega_extrema(trajectory: &Trajectory) -> (Extremum, Extremum) {
    let pick = |s: &State| Extremum {
        omega: s.omega,
        theta: s.theta,
        k: s.k,
    };
    let first = pick(trajectory.first());
    trajectory
        .states
        .iter()
        .fold((first, first), |(lo, hi), s| {
            (
                if s.omega < lo.omega { pick(s) } else { lo },
                if s.omega > hi.omega { pick(s) } else { hi },
            )
        })
}
