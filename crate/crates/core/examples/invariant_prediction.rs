//! Compare the exact orbit with the velocity predicted by the approximate
//! invariant Ē.

use rotormap::experiment::{run_config, DeltaThetaSpec, ExperimentConfig, Theta1Spec};
use rotormap::PSign;

fn main() -> rotormap::Result<()> {
    let cfg = ExperimentConfig::new(
        DeltaThetaSpec::TwoPiFraction { p: 3, q: 7 },
        PSign::Negative,
        Theta1Spec::Radians(0.0),
        19.0,
    )
    .with_steps(14);
    let run = run_config(&cfg)?;
    let m = &run.model;
    println!("σ = {:.6}, Ē = {:.6}", m.sigma, m.e_bar);
    println!(
        "{:>3} {:>9} {:>11} {:>11} {:>9}",
        "k", "theta", "omega", "predicted", "err %"
    );
    for s in &run.trajectory.states {
        let pred = m.omega_pred(s.theta)?;
        let err = 100.0 * (pred - s.omega) / s.omega;
        println!(
            "{:>3} {:>9.5} {:>11.6} {:>11.6} {:>9.4}",
            s.k, s.theta, s.omega, pred, err
        );
    }
    println!(
        "max err {:?} % at k={:?}",
        run.report.max_err_pct, run.report.max_err_k
    );
    Ok(())
}
