//! Step Jacobians and the monodromy matrix around the period-6 orbit.

use rotormap::orbit::simulate;
use rotormap::stability::monodromy;
use rotormap::{BranchPolicy, MapParams, PSign, Rotation};

fn main() -> rotormap::Result<()> {
    let params = MapParams::standard(Rotation::submultiple(6)?, PSign::Negative)?;
    let orbit = simulate(&params, 0.0, 8.0, 6, &BranchPolicy::default())?;
    let m = monodromy(&orbit, &params)?;

    for (k, j) in m.jacobians.iter().enumerate() {
        let [_, [a, b]] = j.0;
        println!("J{}: [[1, 0], [{a:>8.4}, {b:>7.4}]]", k + 1);
    }
    let [[a, b], [c, d]] = m.matrix.0;
    println!("M  = [[{a:.4}, {b:.4}], [{c:.4}, {d:.4}]]");
    println!(
        "tr = {:.12}, det = {:.12}",
        m.matrix.trace(),
        m.matrix.det()
    );
    for (l, mag) in m.eigenvalues.iter().zip(m.eigenvalue_magnitudes()) {
        println!("λ = {l:.6}  |λ| = {mag:.12}");
    }
    Ok(())
}
