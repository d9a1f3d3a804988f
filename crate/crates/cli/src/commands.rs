//! The four subcommands. Each returns the process exit code: 0 for
//! success/feasible, 1 for a model-level failure (infeasible, detached,
//! stalled, incomplete, failed finding). Usage and configuration problems
//! surface as [`CliError`] and exit 2 without writing partial output.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use ferroclimb_core::design::{design_report, DesignReport, DesignRequest};
use ferroclimb_core::experiments::{run_scenario, Scenario, ScenarioConfig};
use ferroclimb_core::physics::{
    feasibility_report, CornerLoadCase, EnvironmentConstants, FeasibilityReport, RobotSpec,
    SurfacePatch,
};
use ferroclimb_core::sim::{
    follow_path_world, start_state_for, PursuitParams, RobotState, RunOutcome, SpeedCalibration,
    TrajectorySummary,
};

use crate::config;
use crate::output::{
    findings_toml, input_checksum, manifest_path_for, scenario_table_csv, to_toml, trajectory_csv,
    OutputSet,
};
use crate::CliError;

fn inputs_map(entries: &[(&str, &Path)]) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (role, path) in entries {
        map.insert(
            format!("{role}_path"),
            path.display().to_string(),
        );
        map.insert(format!("{role}_sha256"), input_checksum(path)?);
    }
    Ok(map)
}

#[derive(Serialize)]
struct FeasibilityDocument<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a FeasibilityReport,
}

#[derive(Serialize)]
struct ResolvedFeasibility {
    robot: RobotSpec,
    surface: SurfacePatch,
    corner: Option<CornerLoadCase>,
    env: EnvironmentConstants,
}

pub fn cmd_feasibility(robot_path: &Path, surface_path: &Path, out: &Path) -> Result<i32, CliError> {
    let robot = config::load_robot(robot_path)?;
    let (surface, corner) = config::load_surface(surface_path)?;
    let env = EnvironmentConstants::default();

    let report = feasibility_report(robot, surface, corner, env)?;

    let mut outputs = OutputSet::new();
    outputs.write(
        out,
        &to_toml(&FeasibilityDocument {
            schema_version: config::SCHEMA_VERSION,
            report: &report,
        })?,
    )?;
    outputs.write_manifest(
        &manifest_path_for(out),
        "feasibility",
        &inputs_map(&[("robot", robot_path), ("surface", surface_path)])?,
        &ResolvedFeasibility {
            robot,
            surface,
            corner,
            env,
        },
    )?;

    Ok(if report.feasible { 0 } else { 1 })
}

#[derive(Serialize)]
struct ResolvedExperiment<'a> {
    config: &'a ScenarioConfig,
    env: EnvironmentConstants,
}

pub struct ExperimentArgs<'a> {
    pub scenario: &'a str,
    pub robot: Option<&'a Path>,
    pub calibration: Option<&'a Path>,
    pub out_dir: &'a Path,
    pub dt: f64,
    pub seed: u64,
}

pub fn cmd_experiment(args: ExperimentArgs<'_>) -> Result<i32, CliError> {
    let scenario: Scenario = args
        .scenario
        .parse()
        .map_err(|message: String| CliError::Usage(message))?;

    let mut cfg = ScenarioConfig::new(scenario);
    if let Some(path) = args.robot {
        cfg.robot = config::load_robot(path)?;
    }
    cfg.calibration = config::load_calibration(args.calibration)?;
    cfg.dt = args.dt;
    cfg.seed = args.seed;
    cfg.validate()?;

    let env = EnvironmentConstants::default();
    let result = run_scenario(&cfg, env)?;

    let mut inputs = BTreeMap::new();
    if let Some(path) = args.robot {
        inputs.extend(inputs_map(&[("robot", path)])?);
    }
    if let Some(path) = args.calibration {
        inputs.extend(inputs_map(&[("calibration", path)])?);
    }

    let mut outputs = OutputSet::new();
    let table_path = args.out_dir.join(format!("{}_table.csv", scenario.name()));
    let findings_path = args.out_dir.join(format!("{}_findings.toml", scenario.name()));
    outputs.write(&table_path, &scenario_table_csv(&result))?;
    outputs.write(&findings_path, &findings_toml(&result)?)?;
    outputs.write_manifest(
        &args.out_dir.join("manifest.toml"),
        &format!("experiment {}", scenario.name()),
        &inputs,
        &ResolvedExperiment {
            config: &cfg,
            env,
        },
    )?;

    Ok(if result.all_findings_pass() { 0 } else { 1 })
}

#[derive(Serialize)]
struct TrajectoryDocument {
    schema_version: u32,
    outcome: String,
    summary: TrajectorySummary,
}

#[derive(Serialize)]
struct ResolvedSimulate {
    robot: RobotSpec,
    calibration: SpeedCalibration,
    params: PursuitParams,
    dt: f64,
    start: RobotState,
    env: EnvironmentConstants,
}

pub struct SimulateArgs<'a> {
    pub robot: &'a Path,
    pub world: &'a Path,
    pub path: &'a Path,
    pub calibration: Option<&'a Path>,
    pub dt: f64,
    pub out: &'a Path,
}

pub fn cmd_simulate(args: SimulateArgs<'_>) -> Result<i32, CliError> {
    if !(args.dt.is_finite() && args.dt > 0.0) {
        return Err(CliError::Usage(format!(
            "--dt must be a positive number of seconds (got {})",
            args.dt
        )));
    }
    let robot = config::load_robot(args.robot)?;
    let world = config::load_world(args.world)?;
    let plan = config::load_path(args.path)?;
    let calibration = config::load_calibration(args.calibration)?;
    let env = EnvironmentConstants::default();

    let mut start = start_state_for(&plan.waypoints)?;
    start.payload = plan.payload;
    start.battery_soc = plan.battery_soc;
    start.validate()?;

    let run = follow_path_world(
        &robot,
        start,
        &plan.waypoints,
        plan.params,
        args.dt,
        &world,
        calibration,
        env,
    )?;

    let mut inputs = inputs_map(&[
        ("robot", args.robot),
        ("world", args.world),
        ("path", args.path),
    ])?;
    if let Some(path) = args.calibration {
        inputs.extend(inputs_map(&[("calibration", path)])?);
    }

    let mut outputs = OutputSet::new();
    outputs.write(args.out, &trajectory_csv(&run.trajectory))?;
    outputs.write(
        &args.out.with_extension("summary.toml"),
        &to_toml(&TrajectoryDocument {
            schema_version: config::SCHEMA_VERSION,
            outcome: run.outcome.name().to_string(),
            summary: run.trajectory.summary,
        })?,
    )?;
    outputs.write_manifest(
        &manifest_path_for(args.out),
        "simulate",
        &inputs,
        &ResolvedSimulate {
            robot,
            calibration,
            params: plan.params,
            dt: args.dt,
            start,
            env,
        },
    )?;

    Ok(match run.outcome {
        RunOutcome::Completed => 0,
        RunOutcome::Detached | RunOutcome::Stalled { .. } | RunOutcome::Incomplete => 1,
    })
}

#[derive(Serialize)]
struct DesignDocument<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a DesignReport,
}

#[derive(Serialize)]
struct ResolvedDesign<'a> {
    request: &'a DesignRequest,
    env: EnvironmentConstants,
}

pub fn cmd_design(requirements: &Path, catalog: &Path, out: &Path) -> Result<i32, CliError> {
    let request = config::load_requirements(requirements)?;
    let entries = config::load_catalog(catalog)?;
    let env = EnvironmentConstants::default();

    let report = design_report(&request, &entries, env)?;

    let mut outputs = OutputSet::new();
    outputs.write(
        out,
        &to_toml(&DesignDocument {
            schema_version: config::SCHEMA_VERSION,
            report: &report,
        })?,
    )?;
    outputs.write_manifest(
        &manifest_path_for(out),
        "design",
        &inputs_map(&[("requirements", requirements), ("catalog", catalog)])?,
        &ResolvedDesign {
            request: &request,
            env,
        },
    )?;

    Ok(if report.feasible { 0 } else { 1 })
}
