//! As Δθ shrinks the map approaches a pendulum. Compare the exact orbit
//! with both the Ē prediction and the pendulum energy integral.

use rotormap::invariant::pendulum_omega;
use rotormap::orbit::{max_error_against, max_prediction_error, simulate};
use rotormap::{BranchPolicy, InvariantModel, MapParams, PSign, PendulumModel, Rotation};

fn main() -> rotormap::Result<()> {
    let (theta1, omega1) = (0.0, 6.4);
    for n in [12, 120, 1200, 12000] {
        let params = MapParams::standard(Rotation::submultiple(n)?, PSign::Negative)?;
        let traj = simulate(
            &params,
            theta1,
            omega1,
            n as usize,
            &BranchPolicy::default(),
        )?;
        let inv = InvariantModel::new(&params, theta1, omega1);
        let pend = PendulumModel::from_params(&params, theta1, omega1);
        let e_inv = max_prediction_error(&traj, &inv).map(|e| e.pct);
        let e_pend = max_error_against(&traj, |t| {
            pendulum_omega(t, &pend, params.g(), params.ell())
        })
        .map(|e| e.pct);
        println!(
            "N={n:>5}: vs Ē {:>11.4e} %   vs pendulum {:>11.4e} %",
            e_inv.unwrap_or(f64::NAN),
            e_pend.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
