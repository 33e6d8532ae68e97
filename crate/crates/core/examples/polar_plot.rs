//! Write polar plots for a periodic orbit and a drifting one.
//!
//! Output goes to `$ROTORMAP_OUT_DIR`, or `./out`.

use rotormap::experiment::{output_dir, run_config, DeltaThetaSpec, ExperimentConfig, Theta1Spec};
use rotormap::plot::polar_svg;
use rotormap::PSign;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = output_dir(None, "out");
    std::fs::create_dir_all(&dir)?;
    for (name, theta1) in [("polar_periodic", 0.0), ("polar_drifting", 0.1)] {
        let cfg = ExperimentConfig::new(
            DeltaThetaSpec::TwoPiFraction { p: 1, q: 3 },
            PSign::Negative,
            Theta1Spec::Radians(theta1),
            12.0,
        );
        let run = run_config(&cfg)?;
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(
            &path,
            polar_svg(&run.trajectory, &run.model, run.report.period),
        )?;
        println!("{}", path.display());
    }
    Ok(())
}
