//! System parameters and angle bookkeeping on the circle.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard gravity used by the reference experiments.
pub const STANDARD_G: f64 = 9.81;

/// Sign choice for the coupling coefficient `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl PSign {
    pub fn as_f64(self) -> f64 {
        match self {
            PSign::Positive => 1.0,
            PSign::Negative => -1.0,
        }
    }
}

/// The fixed angle increment, either as an exact fraction of a full turn or
/// as a plain radian value (irrational rotations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rotation {
    /// `2π·p/q` with `gcd(p, q) = 1`.
    Rational { p: u32, q: u32 },
    /// Any other step, in radians.
    Radians(f64),
}

impl Rotation {
    pub fn rational(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::FractionZero { p, q });
        }
        if gcd(p, q) != 1 {
            return Err(Error::FractionNotReduced { p, q });
        }
        let r = Rotation::Rational { p, q };
        check_step(r.radians())?;
        Ok(r)
    }

    /// `2π/n`: the integer-submultiple family.
    pub fn submultiple(n: u32) -> Result<Self> {
        Self::rational(1, n)
    }

    pub fn radians_step(step: f64) -> Result<Self> {
        check_step(step)?;
        Ok(Rotation::Radians(step))
    }

    /// `scale·2π`, e.g. `scale = √2/5` for the irrational case.
    pub fn turn_fraction(scale: f64) -> Result<Self> {
        Self::radians_step(scale * TAU)
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Rotation::Rational { p, q } => TAU * p as f64 / q as f64,
            Rotation::Radians(r) => r,
        }
    }

    /// Number of steps after which the angle returns exactly, if any.
    pub fn return_stride(&self) -> Option<usize> {
        match *self {
            Rotation::Rational { q, .. } => Some(q as usize),
            Rotation::Radians(_) => None,
        }
    }

    /// Angle at 1-based step `k` for a trajectory starting at `theta1`.
    ///
    /// Computed from the step count, never by repeated addition, so long runs
    /// do not accumulate rounding drift. Rational rotations return to
    /// `reduce_angle(theta1)` bit-exactly every `q` steps.
    pub fn angle_at(&self, theta1: f64, k: usize) -> f64 {
        debug_assert!(k >= 1);
        let n = (k - 1) as u64;
        match *self {
            Rotation::Rational { p, q } => {
                let j = (n * p as u64) % q as u64;
                if j == 0 {
                    reduce_angle(theta1)
                } else {
                    reduce_angle(theta1 + TAU * j as f64 / q as f64)
                }
            }
            Rotation::Radians(step) => {
                let offset = (n as f64 * step).rem_euclid(TAU);
                reduce_angle(theta1 + offset)
            }
        }
    }
}

fn check_step(step: f64) -> Result<()> {
    if step.is_finite() && step > 0.0 && step < PI {
        Ok(())
    } else {
        Err(Error::RotationOutOfRange(step))
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduce an angle to `[0, 2π)`.
///
/// Values that land within a few ulps below `2π` are snapped to `0`, so a
/// sum that is a whole turn in exact arithmetic wraps to the origin.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if TAU - r <= 8.0 * f64::EPSILON * TAU {
        0.0
    } else {
        r
    }
}

/// One application of the unperturbed circle map.
pub fn rotate(theta: f64, delta_theta: f64) -> f64 {
    reduce_angle(theta + delta_theta)
}

/// `sin θ` evaluated against the nearest multiple of π.
///
/// `PI - θ` and `TAU - θ` are exact in floating point on the ranges used, so
/// `θ = π` gives exactly zero. Elsewhere this agrees with `f64::sin` to
/// rounding.
pub fn circle_sin(theta: f64) -> f64 {
    let t = reduce_angle(theta);
    if t < FRAC_PI_2 {
        t.sin()
    } else if t < 3.0 * FRAC_PI_2 {
        (PI - t).sin()
    } else {
        -(TAU - t).sin()
    }
}

/// The coupling coefficient `P = ± g·Δθ² / (2ℓ·sin Δθ)`, in s⁻².
pub fn compute_p(delta_theta: f64, g: f64, ell: f64, sign: PSign) -> Result<f64> {
    check_step(delta_theta)?;
    positive("g", g)?;
    positive("ell", ell)?;
    Ok(sign.as_f64() * g * delta_theta * delta_theta / (2.0 * ell * delta_theta.sin()))
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// Full parameterization of the coupled map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    rotation: Rotation,
    g: f64,
    ell: f64,
    sign: PSign,
    p_value: f64,
}

impl MapParams {
    pub fn new(rotation: Rotation, g: f64, ell: f64, sign: PSign) -> Result<Self> {
        let p_value = compute_p(rotation.radians(), g, ell, sign)?;
        Ok(Self {
            rotation,
            g,
            ell,
            sign,
            p_value,
        })
    }

    /// `g = 9.81`, `ℓ = 1`, the setup of every reference run.
    pub fn standard(rotation: Rotation, sign: PSign) -> Result<Self> {
        Self::new(rotation, STANDARD_G, 1.0, sign)
    }

    pub fn rotation(&self) -> Rotation {
        self.rotation
    }

    pub fn delta_theta(&self) -> f64 {
        self.rotation.radians()
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn g_over_ell(&self) -> f64 {
        self.g / self.ell
    }

    pub fn sign(&self) -> PSign {
        self.sign
    }

    pub fn p_value(&self) -> f64 {
        self.p_value
    }
}
