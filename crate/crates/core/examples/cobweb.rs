//! Cobweb data for the period-6 orbit: the ω' surface, the identity
//! surface and the orbit's segment path.

use std::f64::consts::TAU;

use rotormap::orbit::simulate;
use rotormap::plot::{cobweb_data, linspace, SegmentKind};
use rotormap::{BranchPolicy, MapParams, PSign, Rotation};

fn main() -> rotormap::Result<()> {
    let params = MapParams::standard(Rotation::submultiple(6)?, PSign::Negative)?;
    let traj = simulate(&params, 0.0, 8.0, 6, &BranchPolicy::default())?;
    let data = cobweb_data(
        &params,
        &traj,
        &linspace(0.0, TAU, 13),
        &linspace(1.0, 12.0, 12),
    );

    let undefined = data
        .surface
        .iter()
        .flatten()
        .filter(|v| v.is_none())
        .count();
    println!(
        "grid {}×{}, {undefined} cells without a positive root",
        data.omega_grid.len(),
        data.theta_grid.len()
    );
    for seg in data.path.iter().filter(|s| s.kind == SegmentKind::Vertical) {
        println!(
            "k={} θ={:.4}  ω {:.4} → {:.4}  length {:.4}",
            seg.k,
            seg.from[0],
            seg.from[2],
            seg.to[2],
            seg.length()
        );
    }
    Ok(())
}
