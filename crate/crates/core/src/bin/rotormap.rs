use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rotormap::experiment::{output_dir, run_config, write_run, ExperimentConfig, RunOutput};
use rotormap::plot::{cobweb_data, linspace, polar_svg};
use rotormap::tables::reproduce_tables;
use rotormap::Error;

const DEFAULT_OUT: &str = "out";

#[derive(Parser)]
#[command(
    name = "rotormap",
    version,
    about = "Simulate and analyse the rotor map"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write `<stem>.csv` and `<stem>.json`.
    Run {
        config: PathBuf,
        /// Output directory (default: $ROTORMAP_OUT_DIR, then ./out).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the reference tables; exit 1 on any mismatch.
    ReproduceTables {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polar plot of the trajectory and its invariant prediction.
    Polar {
        config: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Cobweb surfaces and orbit path as JSON.
    Cobweb {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(path: &Path) -> Result<RunOutput, Error> {
    run_config(&ExperimentConfig::load(path)?)
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::Io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn execute(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Run { config, out } => {
            let run = load(&config)?;
            let dir = output_dir(out.as_deref(), DEFAULT_OUT);
            let stem = config.file_stem().and_then(|s| s.to_str()).unwrap_or("run");
            let art = write_run(&run, &dir, stem, false)?;
            println!("{}", art.trajectory_csv.display());
            println!("{}", art.report_json.display());
        }
        Command::ReproduceTables { out } => {
            let report = reproduce_tables()?;
            let dir = output_dir(out.as_deref(), DEFAULT_OUT);
            let md = report.to_markdown();
            write(&dir.join("tables.md"), &md)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            write(&dir.join("tables.json"), &json)?;
            print!("{md}");
            if !report.all_pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Polar { config, svg } => {
            let run = load(&config)?;
            write(
                &svg,
                &polar_svg(&run.trajectory, &run.model, run.report.period),
            )?;
        }
        Command::Cobweb { config, out } => {
            let run = load(&config)?;
            let (lo, hi) = rotormap::orbit::omega_extrema(&run.trajectory);
            let thetas = linspace(0.0, TAU, 73);
            let omegas = linspace(0.5 * lo.omega, 1.5 * hi.omega, 61);
            let data = cobweb_data(&run.experiment.params, &run.trajectory, &thetas, &omegas);
            let json = serde_json::to_string(&data).expect("cobweb data serializes");
            write(&out, &json)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
