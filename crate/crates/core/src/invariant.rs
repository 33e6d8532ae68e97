//! The approximate invariant `Ē`, the velocity it predicts, and the
//! continuous pendulum limit it reduces to.
//!
//! Sign bookkeeping lives in `σ`: the prediction is always
//! `ω(θ) = sqrt(2[Ē − σ (g/ℓ) cos(θ − Δθ/2)])`, with `σ` carrying the sign of
//! `P`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{circle_sin, MapParams, PSign};

/// `σ = ± Δθ² / (2 sin(Δθ/2) sin Δθ)`, signed like `P`.
pub fn sigma(params: &MapParams) -> f64 {
    sigma_for(params.delta_theta(), params.sign())
}

pub(crate) fn sigma_for(delta_theta: f64, sign: PSign) -> f64 {
    sign.as_f64() * delta_theta * delta_theta
        / (2.0 * (0.5 * delta_theta).sin() * delta_theta.sin())
}

/// `Ē = ω₁²/2 + σ (g/ℓ) cos(θ₁ − Δθ/2)`.
pub fn e_bar(theta1: f64, omega1: f64, params: &MapParams) -> f64 {
    0.5 * omega1 * omega1
        + sigma(params) * params.g_over_ell() * (theta1 - 0.5 * params.delta_theta()).cos()
}

/// `Ē` and `σ` frozen from an initial condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantModel {
    pub sigma: f64,
    pub e_bar: f64,
    pub g_over_ell: f64,
    pub delta_theta: f64,
}

impl InvariantModel {
    pub fn new(params: &MapParams, theta1: f64, omega1: f64) -> Self {
        Self {
            sigma: sigma(params),
            e_bar: e_bar(theta1, omega1, params),
            g_over_ell: params.g_over_ell(),
            delta_theta: params.delta_theta(),
        }
    }

    /// `Ē` evaluated at an arbitrary state under this model's `σ`.
    pub fn energy(&self, theta: f64, omega: f64) -> f64 {
        0.5 * omega * omega + self.potential(theta)
    }

    fn potential(&self, theta: f64) -> f64 {
        self.sigma * self.g_over_ell * (theta - 0.5 * self.delta_theta).cos()
    }

    pub fn radicand(&self, theta: f64) -> f64 {
        2.0 * (self.e_bar - self.potential(theta))
    }

    /// Predicted `ω(θ)`, or [`Error::NegativeRadicand`] when the model has
    /// no real value at `θ`.
    pub fn omega_pred(&self, theta: f64) -> Result<f64> {
        let r = self.radicand(theta);
        if r >= 0.0 {
            Ok(r.sqrt())
        } else {
            Err(Error::NegativeRadicand(r))
        }
    }

    /// True when the prediction is real on the whole circle.
    pub fn defined_everywhere(&self) -> bool {
        self.e_bar - self.sigma.abs() * self.g_over_ell > 0.0
    }
}

/// Free-function form of [`InvariantModel::omega_pred`].
pub fn omega_pred(theta: f64, model: &InvariantModel) -> Result<f64> {
    model.omega_pred(theta)
}

/// The update that conserves `Ē` exactly: `ω·sqrt(1 + 4 P sinθ/ω²)`.
pub fn invariant_step(theta: f64, omega: f64, p_value: f64) -> Result<f64> {
    let r = 1.0 + 4.0 * p_value * circle_sin(theta) / (omega * omega);
    if r >= 0.0 {
        Ok(omega * r.sqrt())
    } else {
        Err(Error::NegativeRadicand(r))
    }
}

/// Integral of motion of the limiting pendulum, `E = ω²/2 ± (g/ℓ) cosθ`.
///
/// `sign` follows the sign of `P`; the negative choice is the ordinary
/// hanging pendulum.
pub fn pendulum_energy(theta: f64, omega: f64, g: f64, ell: f64, sign: PSign) -> f64 {
    0.5 * omega * omega + sign.as_f64() * (g / ell) * theta.cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendulumModel {
    pub e: f64,
    pub sign: PSign,
}

impl PendulumModel {
    pub fn new(theta1: f64, omega1: f64, g: f64, ell: f64, sign: PSign) -> Self {
        Self {
            e: pendulum_energy(theta1, omega1, g, ell, sign),
            sign,
        }
    }

    pub fn from_params(params: &MapParams, theta1: f64, omega1: f64) -> Self {
        Self::new(theta1, omega1, params.g(), params.ell(), params.sign())
    }

    /// Whether `E > g/ℓ`, so the velocity stays real on the whole circle.
    pub fn circulates(&self, g: f64, ell: f64) -> bool {
        self.e > g / ell
    }
}

/// `ω(θ) = sqrt(2[E ∓ (g/ℓ) cosθ])`, inverting [`pendulum_energy`].
pub fn pendulum_omega(theta: f64, model: &PendulumModel, g: f64, ell: f64) -> Result<f64> {
    let r = 2.0 * (model.e - model.sign.as_f64() * (g / ell) * theta.cos());
    if r >= 0.0 {
        Ok(r.sqrt())
    } else {
        Err(Error::NegativeRadicand(r))
    }
}
