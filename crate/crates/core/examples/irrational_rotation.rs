//! Δθ = 2π·√2/5: the angle never returns, the points fill a band.

use rotormap::experiment::{run_config, DeltaThetaSpec, ExperimentConfig, Theta1Spec};
use rotormap::orbit::omega_extrema;
use rotormap::PSign;

fn main() -> rotormap::Result<()> {
    let scale = 2f64.sqrt() / 5.0;
    for (sign, omega1) in [
        (PSign::Negative, 10.0),
        (PSign::Negative, 20.0),
        (PSign::Negative, 30.0),
        (PSign::Positive, 10.0),
    ] {
        let cfg = ExperimentConfig::new(
            DeltaThetaSpec::TwoPiScale(scale),
            sign,
            Theta1Spec::Radians(0.0),
            omega1,
        );
        let run = run_config(&cfg)?;
        let (lo, hi) = omega_extrema(&run.trajectory);
        let sign = if sign.as_f64() < 0.0 { "-" } else { "+" };
        println!(
            "P{sign} ω1={omega1}: max err {:>11.4e} %, ω ∈ [{:.4} @ θ={:.4}, {:.4} @ θ={:.4}], periodic {}",
            run.report.max_err_pct.unwrap_or(f64::NAN),
            lo.omega,
            lo.theta,
            hi.omega,
            hi.theta,
            run.report.periodic
        );
    }
    Ok(())
}
