//! Step Jacobians, the monodromy matrix of a periodic orbit, and its
//! eigenvalues.

use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{branch_sign, discriminant, Branch, State};
use crate::orbit::{detect_period, Trajectory};
use crate::params::{circle_sin, MapParams};

/// Row-major 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2(pub [[f64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Both eigenvalues from the characteristic polynomial
    /// `λ² − tr·λ + det = 0`.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half = 0.5 * self.trace();
        let disc = half * half - self.det();
        if disc >= 0.0 {
            let r = disc.sqrt();
            [Complex64::new(half + r, 0.0), Complex64::new(half - r, 0.0)]
        } else {
            let i = (-disc).sqrt();
            [Complex64::new(half, i), Complex64::new(half, -i)]
        }
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }
}

/// Jacobian of one step at `state` on `branch`:
/// `[[1, 0], [∂ω'/∂θ, ∂ω'/∂ω]]`.
///
/// With `s = P sinθ` and `D` the discriminant,
///
/// ```text
/// ∂ω'/∂s = 1/(2ω) ± (3/ω + s/ω³) / (2√D)
/// ∂ω'/∂θ = P cosθ · ∂ω'/∂s
/// ∂ω'/∂ω = 1/2 − s/(2ω²) ± [√D/2 − (3s/ω² + s²/ω⁴)/√D]
/// ```
pub fn step_jacobian_on(state: &State, params: &MapParams, branch: Branch) -> Result<Matrix2> {
    let (theta, omega) = (state.theta, state.omega);
    let p = params.p_value();
    let d = discriminant(theta, omega, p);
    if d.is_nan() || d <= 0.0 {
        return Err(Error::Infeasible(d));
    }
    let sign = branch_sign(branch);
    let s = p * circle_sin(theta);
    let root = d.sqrt();
    let w2 = omega * omega;
    let ds = 1.0 / (2.0 * omega) + sign * (3.0 / omega + s / (w2 * omega)) / (2.0 * root);
    let dtheta = p * theta.cos() * ds;
    let domega =
        0.5 - s / (2.0 * w2) + sign * (0.5 * root - (3.0 * s / w2 + s * s / (w2 * w2)) / root);
    Ok(Matrix2([[1.0, 0.0], [dtheta, domega]]))
}

/// Positive-branch Jacobian.
pub fn step_jacobian(state: &State, params: &MapParams) -> Result<Matrix2> {
    step_jacobian_on(state, params, Branch::Positive)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monodromy {
    pub period: usize,
    /// `J_1 … J_N` in step order.
    pub jacobians: Vec<Matrix2>,
    /// `M = J_N ⋯ J_2 J_1`.
    pub matrix: Matrix2,
    pub eigenvalues: [Complex64; 2],
}

impl Monodromy {
    pub fn eigenvalue_magnitudes(&self) -> [f64; 2] {
        [self.eigenvalues[0].norm(), self.eigenvalues[1].norm()]
    }
}

/// Monodromy matrix over the first period of a verified periodic orbit.
///
/// Each Jacobian uses the branch the trajectory actually took.
pub fn monodromy(orbit: &Trajectory, params: &MapParams) -> Result<Monodromy> {
    let period = detect_period(orbit, params).ok_or(Error::NotPeriodic)?;
    let jacobians = orbit.states[..period]
        .iter()
        .zip(&orbit.steps)
        .map(|(s, rec)| step_jacobian_on(s, params, rec.branch))
        .collect::<Result<Vec<_>>>()?;
    let matrix = jacobians.iter().fold(Matrix2::IDENTITY, |acc, j| *j * acc);
    Ok(Monodromy {
        period,
        eigenvalues: matrix.eigenvalues(),
        jacobians,
        matrix,
    })
}
