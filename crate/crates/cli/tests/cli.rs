//! End-to-end tests of the `ferroclimb` binary: exit codes, file outputs,
//! diagnostics, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

static DIR_COUNTER: AtomicUsize = AtomicUsize::new(0);

struct TestDir {
    root: PathBuf,
}

impl TestDir {
    fn new(label: &str) -> Self {
        let root = std::env::temp_dir().join(format!(
            "ferroclimb-cli-{}-{}-{}",
            label,
            std::process::id(),
            DIR_COUNTER.fetch_add(1, Ordering::SeqCst)
        ));
        std::fs::create_dir_all(&root).expect("create test dir");
        Self { root }
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.root.join(name);
        std::fs::write(&path, contents).expect("write test input");
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }
}

impl Drop for TestDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.root);
    }
}

fn ferroclimb(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ferroclimb"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run ferroclimb")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exited with a code")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn toml_f64(text: &str, key: &str) -> f64 {
    let value: toml::Value = toml::from_str(text).expect("parse TOML");
    value
        .get(key)
        .unwrap_or_else(|| panic!("key {key} missing"))
        .as_float()
        .unwrap_or_else(|| panic!("key {key} is not a float"))
}

const BASELINE_ROBOT: &str = r#"
schema_version = 1

[robot]
mass_kg = 27.5
sf_adhesion = 5.0
sf_torque = 3.0
motor_torque_nm = 80.94

[robot.wheels]
flux_density_t = 0.9207
contact_area_m2 = 0.002
radius_m = 0.1
count = 2
"#;

const VERTICAL_WALL: &str = r#"
schema_version = 1

[surface]
orientation_deg = 90.0
thickness_mm = 10.0
friction_mu = 0.6
terrain = "smooth"
"#;

const FLAT_WORLD: &str = r#"
schema_version = 1

[[patch]]
orientation_deg = 0.0
thickness_mm = 10.0
friction_mu = 0.6
terrain = "smooth"
width_m = 5.0
height_m = 2.0
"#;

const STRAIGHT_METER_PATH: &str = r#"
schema_version = 1

[[waypoint]]
x_m = 0.0
y_m = 0.0

[[waypoint]]
x_m = 1.0
y_m = 0.0
"#;

#[test]
fn feasibility_of_baseline_robot_on_wall_exits_zero() {
    let dir = TestDir::new("feas-ok");
    dir.write("robot.toml", BASELINE_ROBOT);
    dir.write("wall.toml", VERTICAL_WALL);
    let output = ferroclimb(
        &["feasibility", "--robot", "robot.toml", "--surface", "wall.toml", "--out", "report.toml"],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0);

    let report = read(&dir.path("report.toml"));
    assert!((toml_f64(&report, "adhesion_margin") - 1.0).abs() < 1e-3);
    assert!((toml_f64(&report, "torque_margin") - 1.0).abs() < 1e-3);
    assert!(report.contains("feasible = true"));
    assert!(dir.path("report.manifest.toml").exists());
}

#[test]
fn feasibility_with_halved_flux_exits_one_with_quarter_margin() {
    let dir = TestDir::new("feas-weak");
    dir.write("robot.toml", &BASELINE_ROBOT.replace("0.9207", "0.46035"));
    dir.write("wall.toml", VERTICAL_WALL);
    let output = ferroclimb(
        &["feasibility", "--robot", "robot.toml", "--surface", "wall.toml", "--out", "report.toml"],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 1);

    let report = read(&dir.path("report.toml"));
    assert!((toml_f64(&report, "adhesion_margin") - 0.25).abs() < 1e-3);
    assert!(report.contains("feasible = false"));
}

#[test]
fn missing_robot_field_exits_two_and_names_the_field() {
    let dir = TestDir::new("feas-missing");
    dir.write(
        "robot.toml",
        r#"
schema_version = 1

[robot]
motor_torque_nm = 80.94

[robot.wheels]
flux_density_t = 0.9207
contact_area_m2 = 0.002
radius_m = 0.1
count = 2
"#,
    );
    dir.write("wall.toml", VERTICAL_WALL);
    let output = ferroclimb(
        &["feasibility", "--robot", "robot.toml", "--surface", "wall.toml", "--out", "report.toml"],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("mass_kg"), "diagnostic must name the field: {stderr}");
    assert!(!dir.path("report.toml").exists(), "no partial output on config error");
}

#[test]
fn unknown_robot_field_is_rejected() {
    let dir = TestDir::new("feas-unknown");
    dir.write(
        "robot.toml",
        &BASELINE_ROBOT.replace("mass_kg = 27.5", "mass_kg = 27.5\nmass_lbs = 60.6"),
    );
    dir.write("wall.toml", VERTICAL_WALL);
    let output = ferroclimb(
        &["feasibility", "--robot", "robot.toml", "--surface", "wall.toml", "--out", "report.toml"],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("mass_lbs"), "diagnostic must name the stray field: {stderr}");
}

#[test]
fn speed_experiment_contains_the_top_speed_anchor() {
    let dir = TestDir::new("exp-speed");
    let output = ferroclimb(&["experiment", "speed", "--out", "results"], &dir.root);
    assert_eq!(exit_code(&output), 0);

    let table = read(&dir.path("results/speed_table.csv"));
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "payload_kg,battery_soc,speed_mps,adhesion_margin"
    );
    let full_battery_no_load = table
        .lines()
        .find(|line| line.starts_with("0.00000,1.00000,"))
        .expect("matrix corner row");
    assert!(full_battery_no_load.contains("0.550000"));

    let findings = read(&dir.path("results/speed_findings.toml"));
    assert!(findings.contains("all_passed = true"));
    assert!(dir.path("results/manifest.toml").exists());
}

#[test]
fn speed_experiment_accepts_a_robot_file() {
    let dir = TestDir::new("exp-robot");
    dir.write("robot.toml", BASELINE_ROBOT);
    let output = ferroclimb(
        &["experiment", "speed", "--robot", "robot.toml", "--out", "results"],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0);
    let manifest = read(&dir.path("results/manifest.toml"));
    assert!(manifest.contains("robot_path"));
    assert!(manifest.contains("mass = 27.5"));
}

#[test]
fn thickness_experiment_reports_saturation() {
    let dir = TestDir::new("exp-thickness");
    let output = ferroclimb(&["experiment", "thickness", "--out", "results"], &dir.root);
    assert_eq!(exit_code(&output), 0);
    let findings = read(&dir.path("results/thickness_findings.toml"));
    assert!(findings.contains("name = \"saturates_at_7mm\""));
    assert!(findings.contains("all_passed = true"));
}

#[test]
fn unknown_scenario_exits_two() {
    let dir = TestDir::new("exp-bogus");
    let output = ferroclimb(&["experiment", "bogus", "--out", "results"], &dir.root);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn experiment_reruns_are_byte_identical() {
    let dir = TestDir::new("exp-determinism");
    let output = ferroclimb(&["experiment", "incline", "--out", "results"], &dir.root);
    assert_eq!(exit_code(&output), 0);
    let table_first = read(&dir.path("results/incline_table.csv"));
    let findings_first = read(&dir.path("results/incline_findings.toml"));
    let manifest_first = read(&dir.path("results/manifest.toml"));

    let output = ferroclimb(&["experiment", "incline", "--out", "results"], &dir.root);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(read(&dir.path("results/incline_table.csv")), table_first);
    assert_eq!(read(&dir.path("results/incline_findings.toml")), findings_first);
    assert_eq!(read(&dir.path("results/manifest.toml")), manifest_first);
}

#[test]
fn straight_meter_simulation_takes_about_three_and_a_third_seconds() {
    let dir = TestDir::new("sim-straight");
    dir.write("robot.toml", BASELINE_ROBOT);
    dir.write("world.toml", FLAT_WORLD);
    dir.write("path.toml", STRAIGHT_METER_PATH);
    let output = ferroclimb(
        &[
            "simulate", "--robot", "robot.toml", "--world", "world.toml", "--path", "path.toml",
            "--out", "traj.csv",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0);

    let summary = read(&dir.path("traj.summary.toml"));
    assert!(summary.contains("outcome = \"completed\""));
    let value: toml::Value = toml::from_str(&summary).unwrap();
    let total = value["summary"]["total_time"].as_float().unwrap();
    assert!((total - 1.0 / 0.3).abs() < 0.05, "total time {total}");
    assert!(dir.path("traj.csv").exists());
    assert!(dir.path("traj.manifest.toml").exists());
}

#[test]
fn ceiling_with_weak_magnets_exits_one_and_flags_pulloff() {
    let dir = TestDir::new("sim-ceiling");
    dir.write("robot.toml", &BASELINE_ROBOT.replace("0.9207", "0.2"));
    dir.write(
        "world.toml",
        &FLAT_WORLD.replace("orientation_deg = 0.0", "orientation_deg = 180.0"),
    );
    dir.write("path.toml", STRAIGHT_METER_PATH);
    let output = ferroclimb(
        &[
            "simulate", "--robot", "robot.toml", "--world", "world.toml", "--path", "path.toml",
            "--out", "traj.csv",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 1);

    let trajectory = read(&dir.path("traj.csv"));
    let last = trajectory.lines().last().unwrap();
    assert!(last.ends_with("pulloff"), "final sample must be flagged: {last}");
    let summary = read(&dir.path("traj.summary.toml"));
    assert!(summary.contains("outcome = \"detached\""));
}

#[test]
fn zero_dt_exits_two() {
    let dir = TestDir::new("sim-dt");
    dir.write("robot.toml", BASELINE_ROBOT);
    dir.write("world.toml", FLAT_WORLD);
    dir.write("path.toml", STRAIGHT_METER_PATH);
    let output = ferroclimb(
        &[
            "simulate", "--robot", "robot.toml", "--world", "world.toml", "--path", "path.toml",
            "--dt", "0", "--out", "traj.csv",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 2);
    assert!(!dir.path("traj.csv").exists());
}

#[test]
fn corner_world_transition_lands_on_the_second_patch() {
    let dir = TestDir::new("sim-corner");
    dir.write("robot.toml", BASELINE_ROBOT);
    dir.write("world.toml", CORNER_WORLD);
    dir.write(
        "path.toml",
        r#"
schema_version = 1

[[waypoint]]
x_m = 0.0
y_m = 0.0

[[waypoint]]
x_m = 1.2
y_m = 0.0
"#,
    );
    let output = ferroclimb(
        &[
            "simulate", "--robot", "robot.toml", "--world", "world.toml", "--path", "path.toml",
            "--out", "traj.csv",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0);
    let trajectory = read(&dir.path("traj.csv"));
    let last = trajectory.lines().last().unwrap();
    assert!(last.split(',').nth(1) == Some("1"), "final sample must sit on patch 1: {last}");
}

const CORNER_WORLD: &str = r#"
schema_version = 1

[[patch]]
orientation_deg = 0.0
thickness_mm = 10.0
friction_mu = 0.6
terrain = "smooth"
width_m = 0.5
height_m = 1.0

[[patch]]
orientation_deg = 90.0
thickness_mm = 10.0
friction_mu = 0.6
terrain = "smooth"
width_m = 1.0
height_m = 1.0

[[corner]]
from_patch = 0
to_patch = 1
force_front_n = 100.0
force_rear_n = 50.0
gravity_n = 269.775
"#;

#[test]
fn weak_motor_stalls_at_the_corner_and_exits_one() {
    let dir = TestDir::new("sim-stall");
    dir.write("robot.toml", &BASELINE_ROBOT.replace("80.94", "1.0"));
    dir.write("world.toml", CORNER_WORLD);
    dir.write(
        "path.toml",
        r#"
schema_version = 1

[[waypoint]]
x_m = 0.0
y_m = 0.0

[[waypoint]]
x_m = 1.2
y_m = 0.0
"#,
    );
    let output = ferroclimb(
        &[
            "simulate", "--robot", "robot.toml", "--world", "world.toml", "--path", "path.toml",
            "--out", "traj.csv",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 1);
    let summary = read(&dir.path("traj.summary.toml"));
    assert!(summary.contains("outcome = \"stalled\""));
}

const REFERENCE_REQUIREMENTS: &str = r#"
schema_version = 1

[requirements]
payload_kg = 0.0
robot_mass_kg = 27.5
wheel_count = 2
wheel_radius_m = 0.1
contact_area_m2 = 0.002

[requirements.surface]
orientation_deg = 90.0
thickness_mm = 10.0
friction_mu = 0.6
terrain = "smooth"
"#;

const SMALL_CATALOG: &str = r#"
schema_version = 1

[[entry]]
kind = "magnet"
name = "n52-ring"
flux_density_t = 0.95
contact_area_m2 = 0.002

[[entry]]
kind = "motor"
name = "servo-80kg"
torque_nm = 100.0
mass_kg = 0.65
"#;

#[test]
fn design_reference_request_reproduces_requirements() {
    let dir = TestDir::new("design-ok");
    dir.write("requirements.toml", REFERENCE_REQUIREMENTS);
    dir.write("catalog.toml", SMALL_CATALOG);
    let output = ferroclimb(
        &[
            "design", "--requirements", "requirements.toml", "--catalog", "catalog.toml",
            "--out", "design.toml",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0);

    let report = read(&dir.path("design.toml"));
    assert!((toml_f64(&report, "adhesion_required_per_wheel") - 674.45).abs() < 0.05);
    assert!((toml_f64(&report, "torque_required") - 80.94).abs() < 0.01);
    assert!(report.contains("feasible = true"));
}

#[test]
fn unsatisfiable_torque_exits_one_with_a_note() {
    let dir = TestDir::new("design-infeasible");
    dir.write(
        "requirements.toml",
        &REFERENCE_REQUIREMENTS.replace("robot_mass_kg = 27.5", "robot_mass_kg = 500.0"),
    );
    dir.write("catalog.toml", SMALL_CATALOG);
    let output = ferroclimb(
        &[
            "design", "--requirements", "requirements.toml", "--catalog", "catalog.toml",
            "--out", "design.toml",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 1);
    let report = read(&dir.path("design.toml"));
    assert!(report.contains("feasible = false"));
    assert!(report.contains("no catalog motor provides"));
}

#[test]
fn shipped_sample_configs_run_clean() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let dir = TestDir::new("shipped");
    let arg = |name: &str| configs.join(name).display().to_string();

    let output = ferroclimb(
        &[
            "feasibility",
            "--robot", &arg("robot.toml"),
            "--surface", &arg("surface_wall.toml"),
            "--out", "report.toml",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));

    let output = ferroclimb(
        &[
            "simulate",
            "--robot", &arg("robot.toml"),
            "--world", &arg("world_floor_wall.toml"),
            "--path", &arg("path_climb.toml"),
            "--out", "climb.csv",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let last = read(&dir.path("climb.csv"));
    let last = last.lines().last().unwrap();
    assert_eq!(last.split(',').nth(1), Some("1"), "climb must end on the wall patch: {last}");

    let output = ferroclimb(
        &[
            "design",
            "--requirements", &arg("requirements.toml"),
            "--catalog", &arg("catalog.toml"),
            "--out", "design.toml",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));

    let output = ferroclimb(
        &[
            "experiment", "load",
            "--calibration", &arg("calibration.toml"),
            "--out", "results",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
}

#[test]
fn empty_catalog_exits_two() {
    let dir = TestDir::new("design-empty");
    dir.write("requirements.toml", REFERENCE_REQUIREMENTS);
    dir.write("catalog.toml", "schema_version = 1\n");
    let output = ferroclimb(
        &[
            "design", "--requirements", "requirements.toml", "--catalog", "catalog.toml",
            "--out", "design.toml",
        ],
        &dir.root,
    );
    assert_eq!(exit_code(&output), 2);
    assert!(!dir.path("design.toml").exists());
}
