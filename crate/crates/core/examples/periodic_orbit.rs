//! A period-6 orbit: Δθ = 2π/6, θ₁ = 0, ω₁ = 8.

use rotormap::orbit::{check_assumption, detect_period, simulate};
use rotormap::{BranchPolicy, MapParams, PSign, Rotation};

fn main() -> rotormap::Result<()> {
    let params = MapParams::standard(Rotation::submultiple(6)?, PSign::Negative)?;
    let traj = simulate(&params, 0.0, 8.0, 12, &BranchPolicy::default())?;

    println!("P = {:.6}", params.p_value());
    println!("{:>3} {:>10} {:>12}", "k", "theta", "omega");
    for s in &traj.states {
        println!("{:>3} {:>10.6} {:>12.8}", s.k, s.theta, s.omega);
    }
    let check = check_assumption(&traj, &params);
    println!(
        "min ω = {:.6}, ω² > |P|: {}",
        check.min_omega, check.satisfied
    );
    println!("period: {:?}", detect_period(&traj, &params));
    Ok(())
}
