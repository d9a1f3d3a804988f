//! Deterministic time-stepped locomotion on ferromagnetic surfaces.
//!
//! The motion model is a unicycle integrated with explicit Euler. Achieved
//! speed is the commanded speed clamped by a calibrated multiplicative
//! derating model (payload × battery × incline × terrain), and contact is
//! classified per step from the magnet/friction balance. Identical inputs
//! produce bit-identical trajectories.

mod path;

pub use path::{
    follow_path, follow_path_world, s_curve_course, square_course, start_state_for, PathRun,
    PursuitParams, RunOutcome, Trajectory, TrajectorySample, TrajectorySummary,
};

use serde::{Deserialize, Serialize};

use crate::error::{
    ensure_finite, ensure_in_range, ensure_non_negative, ensure_positive, ModelError, ModelResult,
};
use crate::physics::{
    decompose_gravity, effective_adhesion, friction_capacity, min_corner_torque,
    required_adhesion, CornerLoadCase, EnvironmentConstants, RobotSpec, SurfacePatch, Terrain,
};

/// Per-terrain speed derating factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TerrainSpeedFactors {
    pub smooth: f64,
    pub rusted: f64,
    pub debris: f64,
}

impl TerrainSpeedFactors {
    pub fn for_terrain(&self, terrain: Terrain) -> f64 {
        match terrain {
            Terrain::Smooth => self.smooth,
            Terrain::Rusted => self.rusted,
            Terrain::Debris => self.debris,
        }
    }
}

/// Calibrated speed model: top speed and its derating anchors.
///
/// Achieved speed is `max_speed` scaled by independent multiplicative
/// factors for payload, battery state of charge, incline, and terrain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedCalibration {
    /// Top speed with no payload, full battery, flat smooth steel (m/s).
    pub max_speed: f64,
    /// Speed loss per kilogram of payload (1/kg).
    pub load_slope: f64,
    /// Speed fraction remaining at 0% charge.
    pub battery_floor: f64,
    /// Incline angle up to which speed is unaffected (degrees).
    pub incline_knee_deg: f64,
    /// Speed fraction at a 45° incline; held constant beyond 45°.
    pub incline_45_factor: f64,
    pub terrain_speed: TerrainSpeedFactors,
    /// Seconds of continuous full-speed driving that empty the battery.
    pub full_speed_endurance_s: f64,
}

impl Default for SpeedCalibration {
    fn default() -> Self {
        Self {
            max_speed: 0.55,
            load_slope: 0.4 / 27.5,
            battery_floor: 0.5,
            incline_knee_deg: 15.0,
            incline_45_factor: 0.7,
            terrain_speed: TerrainSpeedFactors {
                smooth: 1.0,
                rusted: 0.9,
                debris: 0.8,
            },
            full_speed_endurance_s: 3600.0,
        }
    }
}

impl SpeedCalibration {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_positive("max_speed", self.max_speed)?;
        ensure_non_negative("load_slope", self.load_slope)?;
        ensure_in_range("battery_floor", 0.0, 1.0, self.battery_floor)?;
        // The knee must sit strictly below the 45° anchor.
        ensure_non_negative("incline_knee_deg", self.incline_knee_deg)?;
        if self.incline_knee_deg >= 45.0 {
            return Err(ModelError::OutOfRange {
                name: "incline_knee_deg",
                min: 0.0,
                max: 45.0,
                value: self.incline_knee_deg,
            });
        }
        ensure_in_range("incline_45_factor", f64::MIN_POSITIVE, 1.0, self.incline_45_factor)?;
        for (name, f) in [
            ("terrain_speed.smooth", self.terrain_speed.smooth),
            ("terrain_speed.rusted", self.terrain_speed.rusted),
            ("terrain_speed.debris", self.terrain_speed.debris),
        ] {
            ensure_in_range(name, f64::MIN_POSITIVE, 1.0, f)?;
        }
        ensure_positive("full_speed_endurance_s", self.full_speed_endurance_s)
    }
}

/// Instantaneous simulation state in the current patch's local frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RobotState {
    /// Index of the patch the robot stands on.
    pub surface_id: usize,
    /// Position in the patch frame (m).
    pub x: f64,
    pub y: f64,
    /// Heading in the patch frame (rad).
    pub heading: f64,
    /// Achieved speed magnitude (m/s).
    pub speed: f64,
    /// Battery state of charge in [0, 1].
    pub battery_soc: f64,
    /// Carried payload (kg).
    pub payload: f64,
}

impl RobotState {
    /// At rest at the patch-frame origin with a full battery and no payload.
    pub fn at_origin() -> Self {
        Self {
            surface_id: 0,
            x: 0.0,
            y: 0.0,
            heading: 0.0,
            speed: 0.0,
            battery_soc: 1.0,
            payload: 0.0,
        }
    }

    pub fn validate(&self) -> ModelResult<()> {
        ensure_finite("x", self.x)?;
        ensure_finite("y", self.y)?;
        ensure_finite("heading", self.heading)?;
        ensure_non_negative("speed", self.speed)?;
        ensure_in_range("battery_soc", 0.0, 1.0, self.battery_soc)?;
        ensure_non_negative("payload", self.payload)
    }
}

/// Requested body velocities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Command {
    /// Requested linear velocity (m/s); sign sets direction of travel.
    pub linear: f64,
    /// Requested angular velocity (rad/s).
    pub angular: f64,
}

impl Command {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_finite("command.linear", self.linear)?;
        ensure_finite("command.angular", self.angular)
    }
}

/// Contact classification for one simulation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContactStatus {
    /// Friction holds the gravity-parallel pull.
    Stable,
    /// Attached, but friction cannot hold the in-plane pull.
    Slip,
    /// Net normal force is zero or negative: the robot detaches.
    PullOff,
}

impl ContactStatus {
    pub fn name(self) -> &'static str {
        match self {
            ContactStatus::Stable => "stable",
            ContactStatus::Slip => "slip",
            ContactStatus::PullOff => "pulloff",
        }
    }
}

/// Achievable speed for the given payload, charge, and surface.
pub fn speed_limit(
    payload: f64,
    soc: f64,
    surface: SurfacePatch,
    cal: SpeedCalibration,
) -> ModelResult<f64> {
    ensure_non_negative("payload", payload)?;
    ensure_in_range("soc", 0.0, 1.0, soc)?;
    surface.validate()?;
    cal.validate()?;

    let load_factor = (1.0 - cal.load_slope * payload).max(0.0);
    let battery_factor = cal.battery_floor + (1.0 - cal.battery_floor) * soc;
    let incline_factor = incline_speed_factor(surface.orientation_deg, cal);
    let terrain_factor = cal.terrain_speed.for_terrain(surface.terrain);
    Ok(cal.max_speed * load_factor * battery_factor * incline_factor * terrain_factor)
}

/// Unity up to the knee angle, linear down to the 45° factor, then held
/// constant: past 45° the limiting effect is drive torque, which the
/// feasibility checks cover, not a further speed derate.
fn incline_speed_factor(orientation_deg: f64, cal: SpeedCalibration) -> f64 {
    if orientation_deg <= cal.incline_knee_deg {
        1.0
    } else if orientation_deg >= 45.0 {
        cal.incline_45_factor
    } else {
        let span = 45.0 - cal.incline_knee_deg;
        1.0 + (cal.incline_45_factor - 1.0) * (orientation_deg - cal.incline_knee_deg) / span
    }
}

/// Classify the contact between robot and surface.
///
/// The net normal force is the magnet holding force plus the signed
/// gravity-normal component; friction capacity on that net normal is
/// compared against the gravity-parallel pull.
pub fn contact_status(
    robot: &RobotSpec,
    state: &RobotState,
    surface: SurfacePatch,
    env: EnvironmentConstants,
) -> ContactStatus {
    let total_mass = robot.mass + state.payload;
    let adhesion = match effective_adhesion(robot.wheels, surface, env) {
        Ok(force) => force,
        Err(_) => return ContactStatus::PullOff,
    };
    let gravity = match decompose_gravity(total_mass, surface.orientation_deg, env) {
        Ok(components) => components,
        Err(_) => return ContactStatus::PullOff,
    };
    let net_normal = adhesion + gravity.normal;
    if net_normal <= 0.0 {
        return ContactStatus::PullOff;
    }
    let grip = friction_capacity(surface.friction, net_normal)
        .expect("validated inputs cannot produce a domain error");
    if grip < gravity.parallel {
        ContactStatus::Slip
    } else {
        ContactStatus::Stable
    }
}

/// Fraction of the achievable speed retained while slipping.
const SLIP_SPEED_FACTOR: f64 = 0.5;

/// Advance the state by one explicit-Euler step.
///
/// The commanded linear speed is clamped to [`speed_limit`] at both the
/// pre-step and post-drain charge; a slipping contact additionally halves
/// it. Position integrates before heading, so a pure rotation leaves the
/// position untouched and straight-line motion is exact. Battery drains in
/// proportion to achieved speed. Errors with [`ModelError::Detached`] if
/// the contact is `PullOff` before or after the step.
pub fn step(
    robot: &RobotSpec,
    state: &RobotState,
    cmd: Command,
    dt: f64,
    surface: SurfacePatch,
    cal: SpeedCalibration,
    env: EnvironmentConstants,
) -> ModelResult<RobotState> {
    ensure_positive("dt", dt)?;
    state.validate()?;
    cmd.validate()?;
    robot.validate()?;

    let contact_before = contact_status(robot, state, surface, env);
    if contact_before == ContactStatus::PullOff {
        return Err(detachment_error(robot, state, surface, env));
    }

    let limit = speed_limit(state.payload, state.battery_soc, surface, cal)?;
    let mut magnitude = cmd.linear.abs().min(limit);
    if contact_before == ContactStatus::Slip {
        magnitude *= SLIP_SPEED_FACTOR;
    }
    let next_soc = (state.battery_soc
        - magnitude / cal.max_speed * dt / cal.full_speed_endurance_s)
        .max(0.0);
    // Re-clamp against the post-drain limit so a recorded sample never
    // carries a speed above the limit for its own state of charge.
    let magnitude = magnitude.min(speed_limit(state.payload, next_soc, surface, cal)?);
    let velocity = magnitude.copysign(cmd.linear);

    let mut next = *state;
    next.x += velocity * state.heading.cos() * dt;
    next.y += velocity * state.heading.sin() * dt;
    next.heading += cmd.angular * dt;
    next.speed = magnitude;
    next.battery_soc = next_soc;

    if contact_status(robot, &next, surface, env) == ContactStatus::PullOff {
        return Err(detachment_error(robot, &next, surface, env));
    }
    Ok(next)
}

fn detachment_error(
    robot: &RobotSpec,
    state: &RobotState,
    surface: SurfacePatch,
    env: EnvironmentConstants,
) -> ModelError {
    let adhesion = effective_adhesion(robot.wheels, surface, env).unwrap_or(0.0);
    let normal = decompose_gravity(robot.mass + state.payload, surface.orientation_deg, env)
        .map(|g| g.normal)
        .unwrap_or(0.0);
    ModelError::Detached {
        net_normal_n: adhesion + normal,
    }
}

/// Rectangular extent of a patch in its local frame (m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatchExtent {
    pub width: f64,
    pub height: f64,
}

/// Internal-corner joint between two adjacent patches.
///
/// The fold line sits at `x = width` of the departing patch and maps onto
/// `x = 0` of the arriving patch with the `y` coordinate unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CornerJoint {
    pub from_patch: usize,
    pub to_patch: usize,
    /// Wheel loads the motors must overcome during the transition.
    pub loads: CornerLoadCase,
}

/// Chain of surface patches joined by internal corners.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceWorld {
    patches: Vec<(SurfacePatch, PatchExtent)>,
    corners: Vec<CornerJoint>,
}

/// Outcome of an internal-corner transition attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CornerOutcome {
    /// Transitioned; the state is re-expressed in the arriving patch frame.
    Success(RobotState),
    /// Motor torque does not exceed the required threshold.
    Stall { required_torque: f64 },
}

impl SurfaceWorld {
    pub fn new(
        patches: Vec<(SurfacePatch, PatchExtent)>,
        corners: Vec<CornerJoint>,
    ) -> ModelResult<Self> {
        if patches.is_empty() {
            return Err(ModelError::CountBelowOne {
                name: "patch count",
                value: 0,
            });
        }
        for (patch, extent) in &patches {
            patch.validate()?;
            ensure_positive("patch width", extent.width)?;
            ensure_positive("patch height", extent.height)?;
        }
        for joint in &corners {
            for index in [joint.from_patch, joint.to_patch] {
                if index >= patches.len() {
                    return Err(ModelError::UnknownPatch {
                        index,
                        count: patches.len(),
                    });
                }
            }
            joint.loads.validate()?;
        }
        Ok(Self { patches, corners })
    }

    /// One large patch, no corners: the setting for single-surface runs.
    pub fn single(patch: SurfacePatch) -> Self {
        Self {
            patches: vec![(
                patch,
                PatchExtent {
                    width: f64::INFINITY,
                    height: f64::INFINITY,
                },
            )],
            corners: Vec::new(),
        }
    }

    pub fn patch(&self, index: usize) -> ModelResult<SurfacePatch> {
        self.patches
            .get(index)
            .map(|(patch, _)| *patch)
            .ok_or(ModelError::UnknownPatch {
                index,
                count: self.patches.len(),
            })
    }

    pub fn extent(&self, index: usize) -> ModelResult<PatchExtent> {
        self.patches
            .get(index)
            .map(|(_, extent)| *extent)
            .ok_or(ModelError::UnknownPatch {
                index,
                count: self.patches.len(),
            })
    }

    pub fn patch_count(&self) -> usize {
        self.patches.len()
    }

    pub fn corners(&self) -> &[CornerJoint] {
        &self.corners
    }

    /// The joint leaving `patch` across its far edge, if one exists.
    pub fn joint_from(&self, patch: usize) -> Option<(usize, &CornerJoint)> {
        self.corners
            .iter()
            .enumerate()
            .find(|(_, joint)| joint.from_patch == patch)
    }

    /// Attempt the internal-corner transition at `joint_index`.
    ///
    /// Succeeds only if the robot's motor torque strictly exceeds the
    /// corner threshold; equality stalls. On success the pose is
    /// re-expressed in the arriving patch frame, preserving the position
    /// along the fold line. Callers are expected to invoke this at the
    /// fold; the path follower event-detects the crossing between steps.
    pub fn traverse_corner(
        &self,
        robot: &RobotSpec,
        state: &RobotState,
        joint_index: usize,
        _env: EnvironmentConstants,
    ) -> ModelResult<CornerOutcome> {
        let joint = self
            .corners
            .get(joint_index)
            .ok_or(ModelError::UnknownJoint {
                index: joint_index,
                count: self.corners.len(),
            })?;
        if state.surface_id != joint.from_patch {
            return Err(ModelError::WrongPatch {
                expected: joint.from_patch,
                actual: state.surface_id,
            });
        }
        let required = min_corner_torque(
            robot.wheels.radius,
            joint.loads,
            robot.geometry.weight_distribution,
        )?;
        if robot.motor_torque <= required {
            return Ok(CornerOutcome::Stall {
                required_torque: required,
            });
        }
        let fold_x = self.extent(joint.from_patch)?.width;
        let mut next = *state;
        next.surface_id = joint.to_patch;
        next.x = state.x - fold_x;
        Ok(CornerOutcome::Success(next))
    }
}

/// Adhesion margin of the robot at this state: available holding force over
/// the safety-factored requirement for robot plus payload.
pub fn adhesion_margin(
    robot: &RobotSpec,
    state: &RobotState,
    surface: SurfacePatch,
    env: EnvironmentConstants,
) -> ModelResult<f64> {
    let available = effective_adhesion(robot.wheels, surface, env)?;
    let required = required_adhesion(
        robot.mass + state.payload,
        robot.sf_adhesion,
        robot.wheels.count,
        env,
    )?;
    Ok(available / required.total)
}
