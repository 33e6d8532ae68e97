//! Starting off the half-step lattice: the orbit drifts, and for low
//! velocities it eventually runs out of real roots.

use rotormap::experiment::{run_config, DeltaThetaSpec, ExperimentConfig, Theta1Spec};
use rotormap::PSign;

fn main() -> rotormap::Result<()> {
    for (q, omega1) in [(3, 12.0), (3, 30.0), (4, 10.0), (6, 8.0)] {
        let cfg = ExperimentConfig::new(
            DeltaThetaSpec::TwoPiFraction { p: 1, q },
            PSign::Negative,
            Theta1Spec::Radians(0.1),
            omega1,
        );
        let r = run_config(&cfg)?.report;
        println!(
            "N={q} ω1={omega1:>4}: steps {:>4}  drift {:>10.4e} % (k={:?})  {:?}",
            r.steps,
            r.drift_pct.unwrap_or(f64::NAN),
            r.drift_at_k,
            r.termination
        );
    }
    Ok(())
}
