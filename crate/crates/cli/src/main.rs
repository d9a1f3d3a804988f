//! Command-line front end for the climbing-robot feasibility and
//! locomotion models.
//!
//! Exit codes: 0 success/feasible, 1 model-level failure (infeasible
//! design, detached or incomplete run, failed finding), 2 usage or
//! configuration error. Diagnostics go to stderr; data goes to files.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use ferroclimb_core::ModelError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Model(#[from] ModelError),

    #[error("{0}")]
    Usage(String),

    #[error("failed to render output: {0}")]
    Render(String),
}

#[derive(Parser)]
#[command(
    name = "ferroclimb",
    version,
    about = "Feasibility checks, locomotion simulation, experiment sweeps, and component sizing for magnetic-wheel climbing robots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a robot's static feasibility on a surface patch
    Feasibility {
        /// Robot description file (TOML)
        #[arg(long)]
        robot: PathBuf,
        /// Surface description file (TOML), optionally with a corner load case
        #[arg(long)]
        surface: PathBuf,
        /// Report output path (TOML)
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a built-in scenario: load, thickness, incline, maneuver, speed, or terrain
    Experiment {
        /// Scenario name
        scenario: String,
        /// Robot description file; defaults to the payload-rated reference robot
        #[arg(long)]
        robot: Option<PathBuf>,
        /// Speed-calibration overrides (TOML)
        #[arg(long)]
        calibration: Option<PathBuf>,
        /// Output directory for the table, findings, and manifest
        #[arg(long)]
        out: PathBuf,
        /// Simulation time step in seconds
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Recorded in the manifest; the runners are deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Follow a waypoint path across a surface world
    Simulate {
        /// Robot description file (TOML)
        #[arg(long)]
        robot: PathBuf,
        /// Surface world file: patches and corner joints (TOML)
        #[arg(long)]
        world: PathBuf,
        /// Path file: waypoints plus controller overrides (TOML)
        #[arg(long)]
        path: PathBuf,
        /// Speed-calibration overrides (TOML)
        #[arg(long)]
        calibration: Option<PathBuf>,
        /// Simulation time step in seconds
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Trajectory CSV output path; the summary lands next to it
        #[arg(long)]
        out: PathBuf,
    },
    /// Size magnets and motors for a requirement set against a catalog
    Design {
        /// Requirements file (TOML)
        #[arg(long)]
        requirements: PathBuf,
        /// Component catalog file (TOML)
        #[arg(long)]
        catalog: PathBuf,
        /// Report output path (TOML)
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Feasibility { robot, surface, out } => {
            commands::cmd_feasibility(&robot, &surface, &out)
        }
        Command::Experiment {
            scenario,
            robot,
            calibration,
            out,
            dt,
            seed,
        } => commands::cmd_experiment(commands::ExperimentArgs {
            scenario: &scenario,
            robot: robot.as_deref(),
            calibration: calibration.as_deref(),
            out_dir: &out,
            dt,
            seed,
        }),
        Command::Simulate {
            robot,
            world,
            path,
            calibration,
            dt,
            out,
        } => commands::cmd_simulate(commands::SimulateArgs {
            robot: &robot,
            world: &world,
            path: &path,
            calibration: calibration.as_deref(),
            dt,
            out: &out,
        }),
        Command::Design {
            requirements,
            catalog,
            out,
        } => commands::cmd_design(&requirements, &catalog, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            ExitCode::from(2)
        }
    }
}
