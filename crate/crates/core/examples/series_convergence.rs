//! Truncated expansions against the closed forms, and how the one-step
//! deviation from the invariant update shrinks with ω.

use std::f64::consts::FRAC_PI_2;

use rotormap::invariant::invariant_step;
use rotormap::map::solve_roots;
use rotormap::series::{one_step_deviation, series_invariant, series_negative, series_positive};
use rotormap::{MapParams, PSign, Rotation};

fn main() -> rotormap::Result<()> {
    let p = MapParams::standard(Rotation::submultiple(3)?, PSign::Negative)?.p_value();
    let (theta, omega) = (FRAC_PI_2, 30.0);
    let roots = solve_roots(theta, omega, p).expect("feasible");
    let inv = invariant_step(theta, omega, p)?;
    println!("order  |pos err|    |neg err|    |inv err|");
    for order in 1..=4 {
        println!(
            "{order:>5}  {:.3e}    {:.3e}    {:.3e}",
            (series_positive(theta, omega, p, order)? - roots.positive).abs(),
            (series_negative(theta, omega, p, order)? - roots.negative).abs(),
            (series_invariant(theta, omega, p, order)? - inv).abs(),
        );
    }

    println!("\n    ω   deviation     ratio to 2ω");
    for w in [20.0, 40.0, 80.0, 160.0] {
        let d = one_step_deviation(theta, w, p)?;
        let d2 = one_step_deviation(theta, 2.0 * w, p)?;
        println!("{w:>5}   {d:>10.4e}   {:.3}", d / d2);
    }
    Ok(())
}
