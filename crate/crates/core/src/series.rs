//! Truncated Taylor forms of the exact and invariant-based updates.
//!
//! All three expansions are polynomials in `x = P sinθ / ω²` scaled by
//! `1/ω`. `order` is the number of retained correction terms (1 to 4).

use crate::error::{Error, Result};
use crate::invariant::invariant_step;
use crate::map::solve_roots;
use crate::params::circle_sin;

/// Highest order with known coefficients.
pub const MAX_ORDER: usize = 4;

const POSITIVE: [f64; 4] = [2.0, -2.0, 6.0, -22.0];
const NEGATIVE: [f64; 4] = [-1.0, 2.0, -6.0, 22.0];
const INVARIANT: [f64; 4] = [2.0, -2.0, 4.0, -10.0];

fn check_order(order: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(Error::SeriesOrder(order))
    }
}

fn ratio(theta: f64, omega: f64, p_value: f64) -> f64 {
    p_value * circle_sin(theta) / (omega * omega)
}

fn sum_terms(coeffs: &[f64; 4], x: f64, omega: f64, order: usize) -> f64 {
    let mut acc = 0.0;
    let mut pow = x;
    for c in &coeffs[..order] {
        acc += c * pow;
        pow *= x;
    }
    acc * omega
}

/// `|6x + x²| < 1`: where the square root in the exact update expands.
pub fn exact_series_converges(theta: f64, omega: f64, p_value: f64) -> Result<f64> {
    let x = ratio(theta, omega, p_value);
    let m = (6.0 * x + x * x).abs();
    if m < 1.0 {
        Ok(x)
    } else {
        Err(Error::OutsideConvergence(m))
    }
}

/// `|4x| < 1`: where the invariant update expands.
pub fn invariant_series_converges(theta: f64, omega: f64, p_value: f64) -> Result<f64> {
    let x = ratio(theta, omega, p_value);
    let m = (4.0 * x).abs();
    if m < 1.0 {
        Ok(x)
    } else {
        Err(Error::OutsideConvergence(m))
    }
}

/// `ω + 2Ps/ω − 2P²s²/ω³ + 6P³s³/ω⁵ − 22P⁴s⁴/ω⁷`, truncated.
pub fn series_positive(theta: f64, omega: f64, p_value: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    let x = exact_series_converges(theta, omega, p_value)?;
    Ok(omega + sum_terms(&POSITIVE, x, omega, order))
}

/// `−Ps/ω + 2P²s²/ω³ − 6P³s³/ω⁵ + 22P⁴s⁴/ω⁷`, truncated.
pub fn series_negative(theta: f64, omega: f64, p_value: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    let x = exact_series_converges(theta, omega, p_value)?;
    Ok(sum_terms(&NEGATIVE, x, omega, order))
}

/// `ω + 2Ps/ω − 2P²s²/ω³ + 4P³s³/ω⁵ − 10P⁴s⁴/ω⁷`, truncated.
pub fn series_invariant(theta: f64, omega: f64, p_value: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    let x = invariant_series_converges(theta, omega, p_value)?;
    Ok(omega + sum_terms(&INVARIANT, x, omega, order))
}

/// Exact positive-branch step minus the invariant step, from closed forms.
///
/// Leading behaviour is `2P³ sin³θ / ω⁵`.
pub fn one_step_deviation(theta: f64, omega: f64, p_value: f64) -> Result<f64> {
    exact_series_converges(theta, omega, p_value)?;
    invariant_series_converges(theta, omega, p_value)?;
    let exact = solve_roots(theta, omega, p_value)
        .ok_or(Error::Infeasible(crate::map::discriminant(
            theta, omega, p_value,
        )))?
        .positive;
    Ok(exact - invariant_step(theta, omega, p_value)?)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    const P: f64 = -24.846;

    fn exact(theta: f64, omega: f64) -> (f64, f64) {
        let r = solve_roots(theta, omega, P).unwrap();
        (r.positive, r.negative)
    }

    #[test]
    fn zero_angle_is_identity() {
        for order in 1..=4 {
            assert_eq!(series_positive(0.0, 7.0, P, order).unwrap(), 7.0);
            assert_eq!(series_negative(0.0, 7.0, P, order).unwrap(), 0.0);
            assert_eq!(series_invariant(0.0, 7.0, P, order).unwrap(), 7.0);
        }
    }

    #[test]
    fn positive_series_tracks_exact_root() {
        let (w, x) = (30.0, P / 900.0);
        let (pos, _) = exact(FRAC_PI_2, w);
        let s4 = series_positive(FRAC_PI_2, w, P, 4).unwrap();
        assert!(
            (s4 - pos).abs() < 300.0 * w * x.abs().powi(5),
            "{}",
            (s4 - pos).abs()
        );
        let e1 = (series_positive(FRAC_PI_2, w, P, 1).unwrap() - pos).abs();
        let e2 = (series_positive(FRAC_PI_2, w, P, 2).unwrap() - pos).abs();
        assert!(e2 < e1);
    }

    #[test]
    fn negative_series_tracks_exact_root() {
        let w = 30.0;
        let (pos, neg) = exact(FRAC_PI_2, w);
        let s4 = series_negative(FRAC_PI_2, w, P, 4).unwrap();
        assert!(neg > 0.8 && neg < 0.9);
        assert!((s4 - neg).abs() < 300.0 * w * (P / 900.0f64).abs().powi(5));
        // Vieta: the roots sum to ω + P sinθ/ω.
        assert!((pos + neg - (w + P / w)).abs() < 1e-12 * w);
        let sum = series_positive(FRAC_PI_2, w, P, 4).unwrap() + s4;
        assert!((sum - (w + P / w)).abs() < 1e-6);
    }

    #[test]
    fn invariant_series_matches_closed_form() {
        let w = 30.0;
        for order in 1..=2 {
            assert_eq!(
                series_invariant(FRAC_PI_2, w, P, order).unwrap(),
                series_positive(FRAC_PI_2, w, P, order).unwrap()
            );
        }
        let closed = invariant_step(FRAC_PI_2, w, P).unwrap();
        let s4 = series_invariant(FRAC_PI_2, w, P, 4).unwrap();
        assert!((s4 - closed).abs() < 100.0 * w * (P / 900.0f64).abs().powi(5));
    }

    #[test]
    fn refuses_outside_convergence() {
        assert!(matches!(
            series_positive(FRAC_PI_2, 4.0, P, 2),
            Err(Error::OutsideConvergence(_))
        ));
        assert!(matches!(
            series_invariant(FRAC_PI_2, 9.0, P, 2),
            Err(Error::OutsideConvergence(_))
        ));
        assert!(matches!(
            series_positive(FRAC_PI_2, 30.0, P, 0),
            Err(Error::SeriesOrder(0))
        ));
        assert!(matches!(
            series_positive(FRAC_PI_2, 30.0, P, 5),
            Err(Error::SeriesOrder(5))
        ));
        // The exact step still exists on a small-ω point outside the domain.
        let w = 8.0;
        assert!(series_positive(1.3 * PI, w, P, 4).is_err());
        assert!(solve_roots(1.3 * PI, w, P).is_some());
    }

    #[test]
    fn deviation_scaling() {
        assert_eq!(one_step_deviation(0.0, 30.0, P).unwrap(), 0.0);
        assert_eq!(one_step_deviation(PI, 30.0, P).unwrap(), 0.0);
        let d30 = one_step_deviation(FRAC_PI_2, 30.0, P).unwrap();
        let d60 = one_step_deviation(FRAC_PI_2, 60.0, P).unwrap();
        let factor = d30 / d60;
        assert!((factor - 32.0).abs() <= 0.2 * 32.0, "{factor}");
        let d100 = one_step_deviation(FRAC_PI_2, 100.0, P).unwrap();
        assert_eq!(d100.signum(), P.signum());
        let lead = 2.0 * P.powi(3) / 100f64.powi(5);
        assert!((d100 - lead).abs() < 0.05 * lead.abs());
    }
}
