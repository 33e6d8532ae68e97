//! One exact step of the coupled map.
//!
//! The velocity update `ω' − ω = P sinθ (1/ω + 1/ω')` is the quadratic
//!
//! ```text
//! ω·ω'² − (ω² + P sinθ)·ω' − P sinθ·ω = 0
//! ```
//!
//! whose roots are `ω/2 + P sinθ/(2ω) ± (ω/2)·sqrt(D)` with the discriminant
//! `D = 1 + 6 P sinθ/ω² + P² sin²θ/ω⁴`.

use serde::{Deserialize, Serialize};

use crate::params::{circle_sin, rotate, MapParams};

/// Which square root of the quadratic solution to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }
}

/// One point of a trajectory. `k` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub k: usize,
    pub theta: f64,
    pub omega: f64,
}

impl State {
    pub fn new(k: usize, theta: f64, omega: f64) -> Self {
        Self { k, theta, omega }
    }
}

/// Why a step could not produce a next state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Infeasibility {
    /// No real root.
    NegativeDiscriminant {
        discriminant: f64,
    },
    /// The selected root leaves `ω > 0`.
    NonPositiveRoot {
        root: f64,
    },
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub next: Result<State, Infeasibility>,
    pub discriminant: f64,
    /// Quadratic residual at the returned root, when there is one.
    pub residual: Option<f64>,
}

impl StepOutcome {
    pub fn is_feasible(&self) -> bool {
        self.next.is_ok()
    }
}

/// Both candidate next velocities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Roots {
    pub positive: f64,
    pub negative: f64,
    pub discriminant: f64,
}

impl Roots {
    pub fn select(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Positive => self.positive,
            Branch::Negative => self.negative,
        }
    }
}

/// `1 + 6 P sinθ/ω² + P² sin²θ/ω⁴`.
pub fn discriminant(theta: f64, omega: f64, p_value: f64) -> f64 {
    let u = p_value * circle_sin(theta) / (omega * omega);
    1.0 + 6.0 * u + u * u
}

/// Residual of the quadratic at a candidate `next`.
pub fn residual(theta: f64, omega: f64, next: f64, p_value: f64) -> f64 {
    let s = p_value * circle_sin(theta);
    omega * next * next - (omega * omega + s) * next - s * omega
}

/// Solve the quadratic for both roots; `None` when the discriminant is
/// negative.
///
/// The larger-magnitude root is formed directly and the other from the
/// product of roots (`−P sinθ`), so neither suffers cancellation. A zero
/// discriminant yields the double root `ω/2 + P sinθ/(2ω)` on both branches.
pub fn solve_roots(theta: f64, omega: f64, p_value: f64) -> Option<Roots> {
    let s = p_value * circle_sin(theta);
    let d = discriminant(theta, omega, p_value);
    if d.is_nan() || d < 0.0 {
        return None;
    }
    let half = 0.5 * omega;
    let mid = half + s / (2.0 * omega);
    let spread = half * d.sqrt();
    let (positive, negative) = if d == 0.0 {
        (mid, mid)
    } else if mid >= 0.0 {
        let positive = mid + spread;
        (positive, -s / positive)
    } else {
        let negative = mid - spread;
        (-s / negative, negative)
    };
    Some(Roots {
        positive,
        negative,
        discriminant: d,
    })
}

/// Next angular velocity on the chosen branch, or why there is none.
pub fn next_omega(
    theta: f64,
    omega: f64,
    p_value: f64,
    branch: Branch,
) -> (Result<f64, Infeasibility>, f64) {
    match solve_roots(theta, omega, p_value) {
        None => {
            let d = discriminant(theta, omega, p_value);
            (
                Err(Infeasibility::NegativeDiscriminant { discriminant: d }),
                d,
            )
        }
        Some(roots) => {
            let w = roots.select(branch);
            let out = if !w.is_finite() {
                Err(Infeasibility::NonFinite)
            } else if w <= 0.0 {
                Err(Infeasibility::NonPositiveRoot { root: w })
            } else {
                Ok(w)
            };
            (out, roots.discriminant)
        }
    }
}

pub(crate) fn advance(
    state: &State,
    next_theta: f64,
    params: &MapParams,
    branch: Branch,
) -> StepOutcome {
    let p = params.p_value();
    let (w, discriminant) = next_omega(state.theta, state.omega, p, branch);
    match w {
        Ok(w) => StepOutcome {
            next: Ok(State::new(state.k + 1, next_theta, w)),
            discriminant,
            residual: Some(residual(state.theta, state.omega, w, p)),
        },
        Err(e) => StepOutcome {
            next: Err(e),
            discriminant,
            residual: None,
        },
    }
}

/// Advance one step: rotate the angle and update the velocity on `branch`.
pub fn step(state: &State, params: &MapParams, branch: Branch) -> StepOutcome {
    advance(
        state,
        rotate(state.theta, params.delta_theta()),
        params,
        branch,
    )
}

/// Sign of the square root used when `branch` is taken; exposed for the
/// Jacobian.
pub(crate) fn branch_sign(branch: Branch) -> f64 {
    branch.sign()
}
