//! With P > 0 and ω₁ = 4 the positive root alone does not close the orbit.
//! Taking the negative root at θ = 4π/3 does.

use rotormap::orbit::{check_assumption, simulate};
use rotormap::{Branch, BranchOverride, BranchPolicy, MapParams, PSign, Rotation};

fn main() -> rotormap::Result<()> {
    let params = MapParams::standard(Rotation::submultiple(3)?, PSign::Positive)?;
    let plain = BranchPolicy::default();
    let mixed = BranchPolicy::default().with_override(BranchOverride {
        k: 3,
        branch: Branch::Negative,
        every: Some(3),
    });

    for (name, policy) in [("positive only", plain), ("negative at k≡0 mod 3", mixed)] {
        let traj = simulate(&params, 0.0, 4.0, 9, &policy)?;
        let omegas: Vec<String> = traj.omegas().map(|w| format!("{w:.6}")).collect();
        println!("{name}: {}", omegas.join(" "));
        println!(
            "  ω² > |P| throughout: {}",
            check_assumption(&traj, &params).satisfied
        );
    }
    Ok(())
}
