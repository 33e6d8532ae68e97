//! Drive a run from a JSON config, as the CLI does, and print the report.

use rotormap::experiment::{report_json, run_config, ExperimentConfig};

const CONFIG: &str = r#"{
    "delta_theta": {"two_pi_fraction": {"p": 4, "q": 21}},
    "p_sign": "-",
    "theta1": {"half_steps": 1},
    "omega1": 8,
    "steps": 1200
}"#;

fn main() -> rotormap::Result<()> {
    let cfg = ExperimentConfig::from_json(CONFIG)?;
    let run = run_config(&cfg)?;
    print!("{}", report_json(&run.report));
    Ok(())
}
