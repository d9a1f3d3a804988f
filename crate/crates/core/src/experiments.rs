//! Built-in scenario runners: payload, plate-thickness, incline, maneuver,
//! speed-matrix, and terrain sweeps, each emitting a rectangular table of
//! rows plus named pass/fail findings.
//!
//! Runners are deterministic: the same configuration always produces
//! bit-identical rows and findings, and rows come out sorted by sweep point.
//! Findings are recomputed from the emitted rows alone, so a consumer can
//! re-derive every verdict from the table file.

use serde::Serialize;

use crate::error::{ensure_positive, ModelError, ModelResult};
use crate::physics::{
    effective_adhesion, required_adhesion, EnvironmentConstants, RobotSpec, SurfacePatch, Terrain,
};
use crate::sim::{
    contact_status, follow_path, speed_limit, start_state_for, s_curve_course, square_course,
    PursuitParams, RobotState, SpeedCalibration,
};

/// The six built-in scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    LoadSweep,
    ThicknessSweep,
    InclineSweep,
    ManeuverCourse,
    SpeedMatrix,
    TerrainSuite,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::LoadSweep => "load",
            Scenario::ThicknessSweep => "thickness",
            Scenario::InclineSweep => "incline",
            Scenario::ManeuverCourse => "maneuver",
            Scenario::SpeedMatrix => "speed",
            Scenario::TerrainSuite => "terrain",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "load" => Ok(Scenario::LoadSweep),
            "thickness" => Ok(Scenario::ThicknessSweep),
            "incline" => Ok(Scenario::InclineSweep),
            "maneuver" => Ok(Scenario::ManeuverCourse),
            "speed" => Ok(Scenario::SpeedMatrix),
            "terrain" => Ok(Scenario::TerrainSuite),
            other => Err(format!(
                "unknown scenario `{other}` (expected load, thickness, incline, maneuver, speed, or terrain)"
            )),
        }
    }
}

/// Scenario configuration: robot, calibration, and the sweep lists.
///
/// Only the list the scenario actually sweeps is consulted; the rest may
/// stay empty. `seed` is recorded for provenance; the runners themselves
/// are fully deterministic and draw no random numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub robot: RobotSpec,
    pub calibration: SpeedCalibration,
    pub payloads_kg: Vec<f64>,
    pub thicknesses_mm: Vec<f64>,
    pub incline_angles_deg: Vec<f64>,
    pub battery_levels: Vec<f64>,
    pub terrains: Vec<Terrain>,
    pub seed: u64,
    pub dt: f64,
}

impl ScenarioConfig {
    /// Default configuration for a scenario: the payload-rated robot,
    /// default calibration, and the standard sweep for that scenario.
    pub fn new(scenario: Scenario) -> Self {
        let mut cfg = Self {
            scenario,
            robot: RobotSpec::rated_for_payload(27.5),
            calibration: SpeedCalibration::default(),
            payloads_kg: Vec::new(),
            thicknesses_mm: Vec::new(),
            incline_angles_deg: Vec::new(),
            battery_levels: Vec::new(),
            terrains: Vec::new(),
            seed: 0,
            dt: 1e-3,
        };
        match scenario {
            Scenario::LoadSweep => {
                cfg.payloads_kg = vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 27.5, 30.0];
            }
            Scenario::ThicknessSweep => {
                cfg.thicknesses_mm = vec![3.0, 5.0, 7.0, 10.0];
            }
            Scenario::InclineSweep => {
                cfg.incline_angles_deg = vec![15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0];
            }
            Scenario::ManeuverCourse => {}
            Scenario::SpeedMatrix => {
                cfg.payloads_kg = vec![0.0, 10.0, 20.0, 27.5];
                cfg.battery_levels = vec![1.0, 0.75, 0.5, 0.25];
            }
            Scenario::TerrainSuite => {
                cfg.terrains = vec![Terrain::Smooth, Terrain::Rusted, Terrain::Debris];
            }
        }
        cfg
    }

    pub fn validate(&self) -> ModelResult<()> {
        self.robot.validate()?;
        self.calibration.validate()?;
        ensure_positive("dt", self.dt)?;
        let sweep_len = match self.scenario {
            Scenario::LoadSweep => self.payloads_kg.len(),
            Scenario::ThicknessSweep => self.thicknesses_mm.len(),
            Scenario::InclineSweep => self.incline_angles_deg.len(),
            Scenario::ManeuverCourse => 2, // built-in courses
            Scenario::SpeedMatrix => self.payloads_kg.len() * self.battery_levels.len(),
            Scenario::TerrainSuite => self.terrains.len(),
        };
        if sweep_len == 0 {
            return Err(ModelError::CountBelowOne {
                name: "sweep length",
                value: 0,
            });
        }
        Ok(())
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn as_num(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(v) => Some(v),
            _ => None,
        }
    }
}

/// Named boolean verdict over the emitted rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub name: String,
    pub passed: bool,
    pub message: String,
}

impl Finding {
    fn new(name: &str, passed: bool, message: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            message,
        }
    }
}

/// Tabular scenario output: column names, one row per sweep point, findings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub scenario: Scenario,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub findings: Vec<Finding>,
}

impl ScenarioResult {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric column extracted by name; `None` if missing or non-numeric.
    pub fn numeric_column(&self, name: &str) -> Option<Vec<f64>> {
        let index = self.column_index(name)?;
        self.rows.iter().map(|row| row[index].as_num()).collect()
    }

    pub fn all_findings_pass(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

/// Run the scenario selected by the configuration.
pub fn run_scenario(cfg: &ScenarioConfig, env: EnvironmentConstants) -> ModelResult<ScenarioResult> {
    cfg.validate()?;
    match cfg.scenario {
        Scenario::LoadSweep => run_load_sweep(cfg, env),
        Scenario::ThicknessSweep => run_thickness_sweep(cfg, env),
        Scenario::InclineSweep => run_incline_sweep(cfg, env),
        Scenario::ManeuverCourse => run_maneuver_course(cfg, env),
        Scenario::SpeedMatrix => run_speed_matrix(cfg, env),
        Scenario::TerrainSuite => run_terrain_suite(cfg, env),
    }
}

fn margin_for_payload(
    robot: &RobotSpec,
    payload: f64,
    surface: SurfacePatch,
    env: EnvironmentConstants,
) -> ModelResult<f64> {
    let available = effective_adhesion(robot.wheels, surface, env)?;
    let required = required_adhesion(
        robot.mass + payload,
        robot.sf_adhesion,
        robot.wheels.count,
        env,
    )?;
    Ok(available / required.total)
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut out = values.to_vec();
    out.sort_by(|a, b| a.partial_cmp(b).expect("sweep values must not be NaN"));
    out
}

/// Payload sweep on a vertical wall: speed and adhesion stability per load.
pub fn run_load_sweep(
    cfg: &ScenarioConfig,
    env: EnvironmentConstants,
) -> ModelResult<ScenarioResult> {
    let wall = SurfacePatch::smooth_steel(90.0);
    let mut rows = Vec::new();
    for payload in sorted(&cfg.payloads_kg) {
        let speed = speed_limit(payload, 1.0, wall, cfg.calibration)?;
        let margin = margin_for_payload(&cfg.robot, payload, wall, env)?;
        rows.push(vec![
            Cell::Num(payload),
            Cell::Num(speed),
            Cell::Num(margin),
            Cell::Bool(margin >= 1.0),
        ]);
    }

    let mut result = ScenarioResult {
        scenario: cfg.scenario,
        columns: table_columns(&["payload_kg", "speed_mps", "adhesion_margin", "stable"]),
        rows,
        findings: Vec::new(),
    };
    result.findings = load_sweep_findings(&result);
    Ok(result)
}

fn load_sweep_findings(result: &ScenarioResult) -> Vec<Finding> {
    let payloads = result.numeric_column("payload_kg").unwrap_or_default();
    let speeds = result.numeric_column("speed_mps").unwrap_or_default();
    let stable_index = result.column_index("stable").expect("stable column exists");
    let first_unstable = result
        .rows
        .iter()
        .position(|row| row[stable_index].as_bool() == Some(false));

    let threshold = match first_unstable {
        Some(i) => {
            let p = payloads[i];
            let crossing = load_margin_crossing(result)
                .map(|c| format!("{c:.3}"))
                .unwrap_or_else(|| "n/a".to_string());
            Finding::new(
                "threshold_in_(25,30]",
                p > 25.0 && p <= 30.0,
                format!("first unstable payload {p} kg, margin crossing at {crossing} kg"),
            )
        }
        None => Finding::new(
            "threshold_in_(25,30]",
            false,
            "no unstable payload in the sweep".to_string(),
        ),
    };

    let nonincreasing = speeds.windows(2).all(|w| w[1] <= w[0]);
    let speeds_finding = Finding::new(
        "speeds_nonincreasing",
        nonincreasing,
        format!(
            "speed falls from {:.3} to {:.3} m/s across the sweep",
            speeds.first().copied().unwrap_or(f64::NAN),
            speeds.last().copied().unwrap_or(f64::NAN)
        ),
    );
    vec![threshold, speeds_finding]
}

/// Payload at which the adhesion margin crosses 1.0, interpolated linearly
/// between the bracketing rows of an emitted load-sweep table.
pub fn load_margin_crossing(result: &ScenarioResult) -> Option<f64> {
    let payloads = result.numeric_column("payload_kg")?;
    let margins = result.numeric_column("adhesion_margin")?;
    for i in 1..payloads.len() {
        let (m0, m1) = (margins[i - 1], margins[i]);
        if m0 >= 1.0 && m1 < 1.0 {
            let (p0, p1) = (payloads[i - 1], payloads[i]);
            return Some(p0 + (m0 - 1.0) * (p1 - p0) / (m0 - m1));
        }
    }
    if margins.first().is_some_and(|&m| m < 1.0) {
        return payloads.first().copied();
    }
    None
}

/// Plate-thickness sweep on a vertical wall.
pub fn run_thickness_sweep(
    cfg: &ScenarioConfig,
    env: EnvironmentConstants,
) -> ModelResult<ScenarioResult> {
    let mut rows = Vec::new();
    for thickness in sorted(&cfg.thicknesses_mm) {
        let mut wall = SurfacePatch::smooth_steel(90.0);
        wall.thickness_mm = thickness;
        let speed = speed_limit(0.0, 1.0, wall, cfg.calibration)?;
        let margin = margin_for_payload(&cfg.robot, 0.0, wall, env)?;
        rows.push(vec![
            Cell::Num(thickness),
            Cell::Num(speed),
            Cell::Num(margin),
            Cell::Bool(margin >= 1.0),
        ]);
    }

    let mut result = ScenarioResult {
        scenario: cfg.scenario,
        columns: table_columns(&["thickness_mm", "speed_mps", "adhesion_margin", "stable"]),
        rows,
        findings: Vec::new(),
    };
    result.findings = thickness_findings(&result);
    Ok(result)
}

fn thickness_findings(result: &ScenarioResult) -> Vec<Finding> {
    let thicknesses = result.numeric_column("thickness_mm").unwrap_or_default();
    let margins = result.numeric_column("adhesion_margin").unwrap_or_default();

    let saturated: Vec<f64> = thicknesses
        .iter()
        .zip(&margins)
        .filter(|(t, _)| **t >= 7.0)
        .map(|(_, m)| *m)
        .collect();
    let saturates = !saturated.is_empty()
        && saturated
            .iter()
            .all(|m| (m - saturated[0]).abs() <= 1e-9 * saturated[0].abs());
    let saturation_finding = Finding::new(
        "saturates_at_7mm",
        saturates,
        format!("{} sweep points at or past 7 mm share one margin", saturated.len()),
    );

    let degraded = match (
        thicknesses.iter().position(|&t| t < 7.0),
        saturated.first(),
    ) {
        (Some(thin_index), Some(&plateau)) => {
            let thin_margin = margins[thin_index];
            Finding::new(
                "degraded_at_3mm",
                thin_margin < plateau,
                format!(
                    "margin({} mm) / margin(saturated) = {:.4}",
                    thicknesses[thin_index],
                    thin_margin / plateau
                ),
            )
        }
        _ => Finding::new(
            "degraded_at_3mm",
            false,
            "sweep lacks a thin plate or a saturated plate".to_string(),
        ),
    };
    vec![saturation_finding, degraded]
}

/// Incline sweep: speed and contact classification per surface angle.
pub fn run_incline_sweep(
    cfg: &ScenarioConfig,
    env: EnvironmentConstants,
) -> ModelResult<ScenarioResult> {
    let state = RobotState::at_origin();
    let mut rows = Vec::new();
    for angle in sorted(&cfg.incline_angles_deg) {
        let patch = SurfacePatch::smooth_steel(angle);
        let speed = speed_limit(0.0, 1.0, patch, cfg.calibration)?;
        let margin = margin_for_payload(&cfg.robot, 0.0, patch, env)?;
        let contact = contact_status(&cfg.robot, &state, patch, env);
        rows.push(vec![
            Cell::Num(angle),
            Cell::Num(speed),
            Cell::Num(margin),
            Cell::Text(contact.name().to_string()),
        ]);
    }
    let flat_speed = speed_limit(0.0, 1.0, SurfacePatch::smooth_steel(0.0), cfg.calibration)?;

    let mut result = ScenarioResult {
        scenario: cfg.scenario,
        columns: table_columns(&["incline_deg", "speed_mps", "adhesion_margin", "contact"]),
        rows,
        findings: Vec::new(),
    };
    result.findings = incline_findings(&result, flat_speed);
    Ok(result)
}

fn incline_findings(result: &ScenarioResult, flat_speed: f64) -> Vec<Finding> {
    let speeds = result.numeric_column("speed_mps").unwrap_or_default();
    let contact_index = result.column_index("contact").expect("contact column exists");

    let no_pulloff = result
        .rows
        .iter()
        .all(|row| row[contact_index].as_text() != Some("pulloff"));
    let operational = Finding::new(
        "operational_to_45",
        no_pulloff,
        "no pull-off at any swept angle".to_string(),
    );

    let monotone = speeds.windows(2).all(|w| w[1] <= w[0]);
    let monotone_finding = Finding::new(
        "monotone_speed",
        monotone,
        format!(
            "speed falls from {:.3} to {:.3} m/s over the sweep",
            speeds.first().copied().unwrap_or(f64::NAN),
            speeds.last().copied().unwrap_or(f64::NAN)
        ),
    );

    let knee = speeds
        .first()
        .is_some_and(|&s| (s - flat_speed).abs() <= 1e-12);
    let knee_finding = Finding::new(
        "knee_at_15",
        knee,
        format!(
            "speed at the shallowest angle {:.3} m/s vs flat {flat_speed:.3} m/s",
            speeds.first().copied().unwrap_or(f64::NAN)
        ),
    );
    vec![operational, monotone_finding, knee_finding]
}

/// Built-in maneuver courses: a 1 m square and a 2 m S-curve on flat steel.
pub fn run_maneuver_course(
    cfg: &ScenarioConfig,
    env: EnvironmentConstants,
) -> ModelResult<ScenarioResult> {
    let flat = SurfacePatch::smooth_steel(0.0);
    let params = PursuitParams::default();
    // Sorted by course name for canonical emission order.
    let courses: [(&str, Vec<(f64, f64)>); 2] = [
        ("s_curve", s_curve_course(2.0)),
        ("square", square_course(1.0)),
    ];

    let mut rows = Vec::new();
    for (name, waypoints) in &courses {
        let ref_length: f64 = waypoints
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
            .sum();
        let start = start_state_for(waypoints)?;
        let run = follow_path(
            &cfg.robot,
            start,
            waypoints,
            params,
            cfg.dt,
            flat,
            cfg.calibration,
            env,
        )?;
        let summary = run.trajectory.summary;
        rows.push(vec![
            Cell::Text((*name).to_string()),
            Cell::Bool(run.outcome.is_complete()),
            Cell::Num(summary.total_time),
            Cell::Num(ref_length),
            Cell::Num(summary.total_time / ref_length),
            Cell::Num(summary.max_cross_track),
        ]);
    }

    let mut result = ScenarioResult {
        scenario: cfg.scenario,
        columns: table_columns(&[
            "course",
            "completed",
            "time_s",
            "ref_length_m",
            "time_per_meter_s",
            "max_cross_track_m",
        ]),
        rows,
        findings: Vec::new(),
    };
    result.findings = maneuver_findings(&result);
    Ok(result)
}

/// Cross-track regression bound for the built-in courses at default gains,
/// frozen from a dt = 1e-3 run.
pub const MANEUVER_CROSS_TRACK_BOUND: f64 = 0.05;

fn maneuver_findings(result: &ScenarioResult) -> Vec<Finding> {
    let completed_index = result.column_index("completed").expect("completed column");
    let course_index = result.column_index("course").expect("course column");
    let per_meter = result.numeric_column("time_per_meter_s").unwrap_or_default();
    let cross = result.numeric_column("max_cross_track_m").unwrap_or_default();

    let all_complete = result
        .rows
        .iter()
        .all(|row| row[completed_index].as_bool() == Some(true));
    let both = Finding::new("both_complete", all_complete, "every course completed".to_string());

    let time_for = |name: &str| -> Option<f64> {
        result
            .rows
            .iter()
            .position(|row| row[course_index].as_text() == Some(name))
            .map(|i| per_meter[i])
    };
    let s_curve_slower = match (time_for("s_curve"), time_for("square")) {
        (Some(s), Some(sq)) => Finding::new(
            "s_curve_slower_per_meter",
            s > sq,
            format!("s-curve {s:.4} s/m vs square {sq:.4} s/m"),
        ),
        _ => Finding::new(
            "s_curve_slower_per_meter",
            false,
            "missing course rows".to_string(),
        ),
    };

    let worst = cross.iter().copied().fold(0.0_f64, f64::max);
    let bound = Finding::new(
        "cross_track_within_bound",
        worst <= MANEUVER_CROSS_TRACK_BOUND,
        format!("worst cross-track {worst:.4} m vs bound {MANEUVER_CROSS_TRACK_BOUND} m"),
    );
    vec![both, s_curve_slower, bound]
}

/// Payload × battery-level speed matrix on flat smooth steel.
pub fn run_speed_matrix(
    cfg: &ScenarioConfig,
    env: EnvironmentConstants,
) -> ModelResult<ScenarioResult> {
    let flat = SurfacePatch::smooth_steel(0.0);
    let mut rows = Vec::new();
    for payload in sorted(&cfg.payloads_kg) {
        for soc in sorted(&cfg.battery_levels) {
            let speed = speed_limit(payload, soc, flat, cfg.calibration)?;
            let margin = margin_for_payload(&cfg.robot, payload, flat, env)?;
            rows.push(vec![
                Cell::Num(payload),
                Cell::Num(soc),
                Cell::Num(speed),
                Cell::Num(margin),
            ]);
        }
    }

    let mut result = ScenarioResult {
        scenario: cfg.scenario,
        columns: table_columns(&["payload_kg", "battery_soc", "speed_mps", "adhesion_margin"]),
        rows,
        findings: Vec::new(),
    };
    result.findings = speed_matrix_findings(&result);
    Ok(result)
}

fn speed_matrix_findings(result: &ScenarioResult) -> Vec<Finding> {
    let payloads = result.numeric_column("payload_kg").unwrap_or_default();
    let socs = result.numeric_column("battery_soc").unwrap_or_default();
    let speeds = result.numeric_column("speed_mps").unwrap_or_default();

    let min_payload = payloads.iter().copied().fold(f64::INFINITY, f64::min);
    let max_soc = socs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let light_full = payloads
        .iter()
        .zip(&socs)
        .zip(&speeds)
        .find(|((p, s), _)| **p == min_payload && **s == max_soc)
        .map(|(_, v)| *v);
    let max_speed = speeds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_at_light_full = match light_full {
        Some(v) => Finding::new(
            "max_at_light_full",
            v >= max_speed,
            format!("cell ({min_payload} kg, {max_soc}) = {v:.4} m/s is the matrix maximum"),
        ),
        None => Finding::new("max_at_light_full", false, "matrix corner missing".to_string()),
    };

    // Rows non-increasing in payload at fixed charge, non-decreasing in
    // charge at fixed payload.
    let mut monotone = true;
    for i in 0..speeds.len() {
        for j in 0..speeds.len() {
            if socs[i] == socs[j] && payloads[i] < payloads[j] && speeds[i] < speeds[j] {
                monotone = false;
            }
            if payloads[i] == payloads[j] && socs[i] < socs[j] && speeds[i] > speeds[j] {
                monotone = false;
            }
        }
    }
    let monotone_finding = Finding::new(
        "monotone_rows_and_cols",
        monotone,
        "speed non-increasing in payload, non-decreasing in charge".to_string(),
    );
    vec![max_at_light_full, monotone_finding]
}

/// Terrain suite: top speed, margin, and course completion per surface class.
///
/// The course is commanded at the calibration's top speed so the achieved
/// pace is the terrain-limited one.
pub fn run_terrain_suite(
    cfg: &ScenarioConfig,
    env: EnvironmentConstants,
) -> ModelResult<ScenarioResult> {
    let mut terrains: Vec<Terrain> = cfg.terrains.clone();
    terrains.sort_by_key(|t| t.name());
    terrains.dedup();

    let params = PursuitParams {
        speed: cfg.calibration.max_speed,
        ..PursuitParams::default()
    };
    let waypoints = square_course(1.0);

    let mut rows = Vec::new();
    for terrain in terrains {
        let mut patch = SurfacePatch::smooth_steel(0.0);
        patch.terrain = terrain;
        let speed = speed_limit(0.0, 1.0, patch, cfg.calibration)?;
        let margin = margin_for_payload(&cfg.robot, 0.0, patch, env)?;
        let start = start_state_for(&waypoints)?;
        let run = follow_path(
            &cfg.robot,
            start,
            &waypoints,
            params,
            cfg.dt,
            patch,
            cfg.calibration,
            env,
        )?;
        rows.push(vec![
            Cell::Text(terrain.name().to_string()),
            Cell::Num(speed),
            Cell::Num(margin),
            Cell::Bool(run.outcome.is_complete()),
            Cell::Num(run.trajectory.summary.total_time),
        ]);
    }

    let mut result = ScenarioResult {
        scenario: cfg.scenario,
        columns: table_columns(&["terrain", "speed_mps", "adhesion_margin", "completed", "time_s"]),
        rows,
        findings: Vec::new(),
    };
    result.findings = terrain_findings(&result);
    Ok(result)
}

fn terrain_findings(result: &ScenarioResult) -> Vec<Finding> {
    let completed_index = result.column_index("completed").expect("completed column");
    let terrain_index = result.column_index("terrain").expect("terrain column");
    let speeds = result.numeric_column("speed_mps").unwrap_or_default();

    let all_complete = result
        .rows
        .iter()
        .all(|row| row[completed_index].as_bool() == Some(true));
    let complete = Finding::new(
        "all_complete",
        all_complete,
        "every terrain completed the course".to_string(),
    );

    let speed_for = |name: &str| -> Option<f64> {
        result
            .rows
            .iter()
            .position(|row| row[terrain_index].as_text() == Some(name))
            .map(|i| speeds[i])
    };
    let smooth_fastest = match speed_for("smooth") {
        Some(smooth) => {
            let fastest = result
                .rows
                .iter()
                .enumerate()
                .filter(|(_, row)| row[terrain_index].as_text() != Some("smooth"))
                .all(|(i, _)| speeds[i] < smooth);
            Finding::new(
                "smooth_fastest",
                fastest,
                format!("smooth steel tops out at {smooth:.3} m/s"),
            )
        }
        None => Finding::new("smooth_fastest", false, "no smooth row in the sweep".to_string()),
    };
    vec![complete, smooth_fastest]
}

fn table_columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> EnvironmentConstants {
        EnvironmentConstants::default()
    }

    fn finding<'a>(result: &'a ScenarioResult, name: &str) -> &'a Finding {
        result
            .findings
            .iter()
            .find(|f| f.name == name)
            .unwrap_or_else(|| panic!("finding {name} missing"))
    }

    #[test]
    fn load_sweep_crosses_between_25_and_30() {
        let cfg = ScenarioConfig::new(Scenario::LoadSweep);
        let result = run_load_sweep(&cfg, env()).unwrap();
        assert_eq!(result.rows.len(), 8);
        assert!(finding(&result, "threshold_in_(25,30]").passed);
        assert!(finding(&result, "speeds_nonincreasing").passed);

        let crossing = load_margin_crossing(&result).unwrap();
        assert!((crossing - 27.5).abs() <= 0.1, "crossing at {crossing}");

        // 25 kg rides stably; 30 kg does not.
        let stable = result.column_index("stable").unwrap();
        let payload = result.column_index("payload_kg").unwrap();
        for row in &result.rows {
            let p = row[payload].as_num().unwrap();
            let s = row[stable].as_bool().unwrap();
            if p <= 25.0 {
                assert!(s, "payload {p} should be stable");
            }
            if p >= 30.0 {
                assert!(!s, "payload {p} should be unstable");
            }
        }
    }

    #[test]
    fn thickness_sweep_saturates_and_degrades() {
        let cfg = ScenarioConfig::new(Scenario::ThicknessSweep);
        let result = run_thickness_sweep(&cfg, env()).unwrap();
        assert!(finding(&result, "saturates_at_7mm").passed);
        assert!(finding(&result, "degraded_at_3mm").passed);

        let thickness = result.numeric_column("thickness_mm").unwrap();
        let margins = result.numeric_column("adhesion_margin").unwrap();
        let at = |t: f64| margins[thickness.iter().position(|&x| x == t).unwrap()];
        assert_eq!(at(7.0), at(10.0));
        assert!((at(3.0) / at(7.0) - 0.7).abs() < 1e-3);
    }

    #[test]
    fn incline_sweep_findings_hold() {
        let cfg = ScenarioConfig::new(Scenario::InclineSweep);
        let result = run_incline_sweep(&cfg, env()).unwrap();
        assert_eq!(result.rows.len(), 7);
        assert!(finding(&result, "operational_to_45").passed);
        assert!(finding(&result, "monotone_speed").passed);
        assert!(finding(&result, "knee_at_15").passed);

        let speeds = result.numeric_column("speed_mps").unwrap();
        assert!(speeds.last().unwrap() < speeds.first().unwrap());
        assert_eq!(*speeds.first().unwrap(), 0.55);
    }

    #[test]
    fn maneuver_courses_complete_with_bounded_deviation() {
        let cfg = ScenarioConfig::new(Scenario::ManeuverCourse);
        let result = run_maneuver_course(&cfg, env()).unwrap();
        assert_eq!(result.rows.len(), 2);
        assert!(finding(&result, "both_complete").passed);
        assert!(finding(&result, "s_curve_slower_per_meter").passed);
        assert!(finding(&result, "cross_track_within_bound").passed);
    }

    #[test]
    fn speed_matrix_anchors_and_monotonicity() {
        let cfg = ScenarioConfig::new(Scenario::SpeedMatrix);
        let result = run_speed_matrix(&cfg, env()).unwrap();
        assert_eq!(result.rows.len(), 16);
        assert!(finding(&result, "max_at_light_full").passed);
        assert!(finding(&result, "monotone_rows_and_cols").passed);

        let payloads = result.numeric_column("payload_kg").unwrap();
        let socs = result.numeric_column("battery_soc").unwrap();
        let speeds = result.numeric_column("speed_mps").unwrap();
        let cell = |p: f64, s: f64| {
            speeds[payloads
                .iter()
                .zip(&socs)
                .position(|(&pp, &ss)| pp == p && ss == s)
                .unwrap()]
        };
        assert_eq!(cell(0.0, 1.0), 0.55);
        assert!((cell(27.5, 0.25) - 0.20625).abs() < 1e-12);
        let min_speed = speeds.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(cell(27.5, 0.25), min_speed);
    }

    #[test]
    fn terrain_suite_orders_speeds() {
        let cfg = ScenarioConfig::new(Scenario::TerrainSuite);
        let result = run_terrain_suite(&cfg, env()).unwrap();
        assert_eq!(result.rows.len(), 3);
        assert!(finding(&result, "all_complete").passed);
        assert!(finding(&result, "smooth_fastest").passed);

        let terrain = result.column_index("terrain").unwrap();
        let speeds = result.numeric_column("speed_mps").unwrap();
        let speed_of = |name: &str| {
            speeds[result
                .rows
                .iter()
                .position(|r| r[terrain].as_text() == Some(name))
                .unwrap()]
        };
        assert!(speed_of("smooth") > speed_of("rusted"));
        assert!(speed_of("rusted") > speed_of("debris"));
    }

    #[test]
    fn runners_are_deterministic() {
        for scenario in [
            Scenario::LoadSweep,
            Scenario::ThicknessSweep,
            Scenario::InclineSweep,
            Scenario::SpeedMatrix,
            Scenario::TerrainSuite,
        ] {
            let cfg = ScenarioConfig::new(scenario);
            let a = run_scenario(&cfg, env()).unwrap();
            let b = run_scenario(&cfg, env()).unwrap();
            assert_eq!(a, b, "{scenario:?} is not deterministic");
        }
    }

    #[test]
    fn empty_sweep_is_rejected() {
        let mut cfg = ScenarioConfig::new(Scenario::LoadSweep);
        cfg.payloads_kg.clear();
        assert!(run_scenario(&cfg, env()).is_err());
    }
}
