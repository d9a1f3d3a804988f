//! TOML schemas for every input file, and their conversions into core types.
//!
//! All files carry a `schema_version` field and reject unknown keys, so a
//! typo in a physical constant fails loudly instead of silently falling back
//! to a default. Units are suffixed in field names; angles are degrees.

use std::path::Path;

use serde::Deserialize;

use ferroclimb_core::design::{CatalogEntry, DesignRequest};
use ferroclimb_core::physics::{
    CornerLoadCase, GeometrySpec, MagneticWheelSpec, RobotSpec, SurfacePatch, Terrain,
};
use ferroclimb_core::sim::{
    CornerJoint, PatchExtent, PursuitParams, SpeedCalibration, SurfaceWorld, TerrainSpeedFactors,
};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub fn load_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    toml::from_str(&text).map_err(|err| CliError::Config {
        path: path.display().to_string(),
        message: err.to_string(),
    })
}

fn check_schema(path: &Path, version: u32) -> Result<(), CliError> {
    if version != SCHEMA_VERSION {
        return Err(CliError::Config {
            path: path.display().to_string(),
            message: format!("unsupported schema_version {version} (expected {SCHEMA_VERSION})"),
        });
    }
    Ok(())
}

fn invalid(path: &Path, err: impl std::fmt::Display) -> CliError {
    CliError::Config {
        path: path.display().to_string(),
        message: err.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Robot file
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotFile {
    pub schema_version: u32,
    pub robot: RobotSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotSection {
    pub mass_kg: f64,
    #[serde(default = "default_sf_adhesion")]
    pub sf_adhesion: f64,
    #[serde(default = "default_sf_torque")]
    pub sf_torque: f64,
    pub motor_torque_nm: f64,
    pub wheels: WheelsSection,
    #[serde(default)]
    pub geometry: GeometrySection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WheelsSection {
    pub flux_density_t: f64,
    pub contact_area_m2: f64,
    pub radius_m: f64,
    pub count: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    #[serde(default = "default_lever")]
    pub lever_arm_1_m: f64,
    #[serde(default = "default_lever")]
    pub lever_arm_2_m: f64,
    #[serde(default = "default_lever")]
    pub weight_distribution_k: f64,
}

impl Default for GeometrySection {
    fn default() -> Self {
        Self {
            lever_arm_1_m: 1.0,
            lever_arm_2_m: 1.0,
            weight_distribution_k: 1.0,
        }
    }
}

fn default_sf_adhesion() -> f64 {
    5.0
}

fn default_sf_torque() -> f64 {
    3.0
}

fn default_lever() -> f64 {
    1.0
}

pub fn load_robot(path: &Path) -> Result<RobotSpec, CliError> {
    let file: RobotFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    let section = file.robot;
    let robot = RobotSpec {
        mass: section.mass_kg,
        wheels: MagneticWheelSpec {
            flux_density: section.wheels.flux_density_t,
            contact_area: section.wheels.contact_area_m2,
            radius: section.wheels.radius_m,
            count: section.wheels.count,
        },
        geometry: GeometrySpec {
            lever_arm_1: section.geometry.lever_arm_1_m,
            lever_arm_2: section.geometry.lever_arm_2_m,
            weight_distribution: section.geometry.weight_distribution_k,
        },
        sf_adhesion: section.sf_adhesion,
        sf_torque: section.sf_torque,
        motor_torque: section.motor_torque_nm,
    };
    robot.validate().map_err(|err| invalid(path, err))?;
    Ok(robot)
}

// ---------------------------------------------------------------------------
// Surface file (optionally carries a corner load case)
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub schema_version: u32,
    pub surface: SurfaceSection,
    #[serde(default)]
    pub corner: Option<CornerSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSection {
    pub orientation_deg: f64,
    pub thickness_mm: f64,
    pub friction_mu: f64,
    pub terrain: Terrain,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerSection {
    pub force_front_n: f64,
    pub force_rear_n: f64,
    pub gravity_n: f64,
}

impl SurfaceSection {
    fn to_patch(&self, path: &Path) -> Result<SurfacePatch, CliError> {
        SurfacePatch::new(
            self.orientation_deg,
            self.thickness_mm,
            self.friction_mu,
            self.terrain,
        )
        .map_err(|err| invalid(path, err))
    }
}

impl CornerSection {
    fn to_loads(&self, path: &Path) -> Result<CornerLoadCase, CliError> {
        let loads = CornerLoadCase {
            force_front: self.force_front_n,
            force_rear: self.force_rear_n,
            gravity_load: self.gravity_n,
        };
        loads.validate().map_err(|err| invalid(path, err))?;
        Ok(loads)
    }
}

pub fn load_surface(path: &Path) -> Result<(SurfacePatch, Option<CornerLoadCase>), CliError> {
    let file: SurfaceFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    let patch = file.surface.to_patch(path)?;
    let corner = match file.corner {
        Some(section) => Some(section.to_loads(path)?),
        None => None,
    };
    Ok((patch, corner))
}

// ---------------------------------------------------------------------------
// World file: chained patches plus corner joints
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldFile {
    pub schema_version: u32,
    #[serde(rename = "patch")]
    pub patches: Vec<WorldPatchSection>,
    #[serde(rename = "corner", default)]
    pub corners: Vec<WorldCornerSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldPatchSection {
    pub orientation_deg: f64,
    pub thickness_mm: f64,
    pub friction_mu: f64,
    pub terrain: Terrain,
    pub width_m: f64,
    pub height_m: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldCornerSection {
    pub from_patch: usize,
    pub to_patch: usize,
    pub force_front_n: f64,
    pub force_rear_n: f64,
    pub gravity_n: f64,
}

pub fn load_world(path: &Path) -> Result<SurfaceWorld, CliError> {
    let file: WorldFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    let mut patches = Vec::with_capacity(file.patches.len());
    for section in &file.patches {
        let patch = SurfacePatch::new(
            section.orientation_deg,
            section.thickness_mm,
            section.friction_mu,
            section.terrain,
        )
        .map_err(|err| invalid(path, err))?;
        patches.push((
            patch,
            PatchExtent {
                width: section.width_m,
                height: section.height_m,
            },
        ));
    }
    let corners = file
        .corners
        .iter()
        .map(|section| CornerJoint {
            from_patch: section.from_patch,
            to_patch: section.to_patch,
            loads: CornerLoadCase {
                force_front: section.force_front_n,
                force_rear: section.force_rear_n,
                gravity_load: section.gravity_n,
            },
        })
        .collect();
    SurfaceWorld::new(patches, corners).map_err(|err| invalid(path, err))
}

// ---------------------------------------------------------------------------
// Path file: waypoints, controller overrides, initial conditions
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub schema_version: u32,
    #[serde(default)]
    pub controller: ControllerSection,
    #[serde(default)]
    pub start: StartSection,
    #[serde(rename = "waypoint")]
    pub waypoints: Vec<WaypointSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSection {
    #[serde(default = "default_lookahead")]
    pub lookahead_m: f64,
    #[serde(default = "default_course_speed")]
    pub speed_mps: f64,
    #[serde(default = "default_goal_tolerance")]
    pub goal_tolerance_m: f64,
}

impl Default for ControllerSection {
    fn default() -> Self {
        Self {
            lookahead_m: default_lookahead(),
            speed_mps: default_course_speed(),
            goal_tolerance_m: default_goal_tolerance(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartSection {
    #[serde(default)]
    pub payload_kg: f64,
    #[serde(default = "default_soc")]
    pub battery_soc: f64,
}

impl Default for StartSection {
    fn default() -> Self {
        Self {
            payload_kg: 0.0,
            battery_soc: 1.0,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaypointSection {
    pub x_m: f64,
    pub y_m: f64,
}

fn default_lookahead() -> f64 {
    0.1
}

fn default_course_speed() -> f64 {
    0.3
}

fn default_goal_tolerance() -> f64 {
    0.01
}

fn default_soc() -> f64 {
    1.0
}

pub struct PathPlan {
    pub waypoints: Vec<(f64, f64)>,
    pub params: PursuitParams,
    pub payload: f64,
    pub battery_soc: f64,
}

pub fn load_path(path: &Path) -> Result<PathPlan, CliError> {
    let file: PathFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    let params = PursuitParams {
        lookahead: file.controller.lookahead_m,
        speed: file.controller.speed_mps,
        goal_tolerance: file.controller.goal_tolerance_m,
    };
    params.validate().map_err(|err| invalid(path, err))?;
    Ok(PathPlan {
        waypoints: file.waypoints.iter().map(|w| (w.x_m, w.y_m)).collect(),
        params,
        payload: file.start.payload_kg,
        battery_soc: file.start.battery_soc,
    })
}

// ---------------------------------------------------------------------------
// Calibration file
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationFile {
    pub schema_version: u32,
    pub calibration: CalibrationSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationSection {
    #[serde(default = "default_v_max")]
    pub v_max_mps: f64,
    #[serde(default = "default_load_slope")]
    pub load_slope_per_kg: f64,
    #[serde(default = "default_batt_floor")]
    pub batt_floor: f64,
    #[serde(default = "default_knee")]
    pub incline_knee_deg: f64,
    #[serde(default = "default_incline_45")]
    pub incline_45_factor: f64,
    #[serde(default)]
    pub terrain_speed: TerrainSpeedSection,
    #[serde(default = "default_endurance")]
    pub full_speed_endurance_s: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerrainSpeedSection {
    #[serde(default = "default_smooth_speed")]
    pub smooth: f64,
    #[serde(default = "default_rusted_speed")]
    pub rusted: f64,
    #[serde(default = "default_debris_speed")]
    pub debris: f64,
}

impl Default for TerrainSpeedSection {
    fn default() -> Self {
        Self {
            smooth: default_smooth_speed(),
            rusted: default_rusted_speed(),
            debris: default_debris_speed(),
        }
    }
}

fn default_v_max() -> f64 {
    0.55
}

fn default_load_slope() -> f64 {
    0.4 / 27.5
}

fn default_batt_floor() -> f64 {
    0.5
}

fn default_knee() -> f64 {
    15.0
}

fn default_incline_45() -> f64 {
    0.7
}

fn default_endurance() -> f64 {
    3600.0
}

fn default_smooth_speed() -> f64 {
    1.0
}

fn default_rusted_speed() -> f64 {
    0.9
}

fn default_debris_speed() -> f64 {
    0.8
}

pub fn load_calibration(path: Option<&Path>) -> Result<SpeedCalibration, CliError> {
    let Some(path) = path else {
        return Ok(SpeedCalibration::default());
    };
    let file: CalibrationFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    let section = file.calibration;
    let cal = SpeedCalibration {
        max_speed: section.v_max_mps,
        load_slope: section.load_slope_per_kg,
        battery_floor: section.batt_floor,
        incline_knee_deg: section.incline_knee_deg,
        incline_45_factor: section.incline_45_factor,
        terrain_speed: TerrainSpeedFactors {
            smooth: section.terrain_speed.smooth,
            rusted: section.terrain_speed.rusted,
            debris: section.terrain_speed.debris,
        },
        full_speed_endurance_s: section.full_speed_endurance_s,
    };
    cal.validate().map_err(|err| invalid(path, err))?;
    Ok(cal)
}

// ---------------------------------------------------------------------------
// Design requirements and component catalog
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequirementsFile {
    pub schema_version: u32,
    pub requirements: RequirementsSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequirementsSection {
    #[serde(default)]
    pub payload_kg: f64,
    pub robot_mass_kg: f64,
    #[serde(default = "default_wheel_count")]
    pub wheel_count: u32,
    pub wheel_radius_m: f64,
    pub contact_area_m2: f64,
    #[serde(default = "default_sf_adhesion")]
    pub sf_adhesion: f64,
    #[serde(default = "default_sf_torque")]
    pub sf_torque: f64,
    #[serde(default)]
    pub geometry: GeometrySection,
    pub surface: SurfaceSection,
}

fn default_wheel_count() -> u32 {
    2
}

pub fn load_requirements(path: &Path) -> Result<DesignRequest, CliError> {
    let file: RequirementsFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    let section = file.requirements;
    let request = DesignRequest {
        payload: section.payload_kg,
        robot_mass: section.robot_mass_kg,
        wheel_count: section.wheel_count,
        wheel_radius: section.wheel_radius_m,
        contact_area: section.contact_area_m2,
        sf_adhesion: section.sf_adhesion,
        sf_torque: section.sf_torque,
        geometry: GeometrySpec {
            lever_arm_1: section.geometry.lever_arm_1_m,
            lever_arm_2: section.geometry.lever_arm_2_m,
            weight_distribution: section.geometry.weight_distribution_k,
        },
        surface: section.surface.to_patch(path)?,
    };
    request.validate().map_err(|err| invalid(path, err))?;
    Ok(request)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub schema_version: u32,
    #[serde(rename = "entry", default)]
    pub entries: Vec<CatalogEntrySection>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CatalogEntrySection {
    Magnet {
        name: String,
        flux_density_t: f64,
        contact_area_m2: f64,
    },
    Motor {
        name: String,
        torque_nm: f64,
        mass_kg: f64,
    },
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, CliError> {
    let file: CatalogFile = load_toml(path)?;
    check_schema(path, file.schema_version)?;
    if file.entries.is_empty() {
        return Err(CliError::Config {
            path: path.display().to_string(),
            message: "catalog lists no entries".to_string(),
        });
    }
    let mut entries = Vec::with_capacity(file.entries.len());
    for section in file.entries {
        let entry = match section {
            CatalogEntrySection::Magnet {
                name,
                flux_density_t,
                contact_area_m2,
            } => CatalogEntry::Magnet {
                name,
                flux_density: flux_density_t,
                contact_area: contact_area_m2,
            },
            CatalogEntrySection::Motor {
                name,
                torque_nm,
                mass_kg,
            } => CatalogEntry::Motor {
                name,
                torque: torque_nm,
                mass: mass_kg,
            },
        };
        entry.validate().map_err(|err| invalid(path, err))?;
        entries.push(entry);
    }
    Ok(entries)
}
