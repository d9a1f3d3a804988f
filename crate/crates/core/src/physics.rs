//! Static force and torque models for magnetic-wheel climbing robots.
//!
//! Everything in this module is a pure function of immutable value types:
//! magnet holding force, gravity decomposition on inclined surfaces,
//! friction capacity, safety-factored adhesion and drive-torque
//! requirements, and the internal-corner / extreme-pose thresholds.
//! Composite feasibility checks are assembled by [`feasibility_report`].
//!
//! Units are SI throughout, except surface orientation and plate thickness,
//! which are accepted in degrees and millimeters at the interface and
//! converted internally.

use serde::{Deserialize, Serialize};

use crate::error::{
    ensure_at_least_one, ensure_in_range, ensure_non_negative, ensure_positive, ModelError,
    ModelResult,
};

/// Standard gravitational acceleration (m/s²).
pub const STANDARD_GRAVITY: f64 = 9.81;

/// Permeability of free space, 4π×10⁻⁷ (H/m).
pub const VACUUM_PERMEABILITY: f64 = 4.0e-7 * std::f64::consts::PI;

/// Physical constants the force models depend on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentConstants {
    /// Gravitational acceleration (m/s²).
    pub gravity: f64,
    /// Permeability of free space (H/m).
    pub vacuum_permeability: f64,
}

impl Default for EnvironmentConstants {
    fn default() -> Self {
        Self {
            gravity: STANDARD_GRAVITY,
            vacuum_permeability: VACUUM_PERMEABILITY,
        }
    }
}

impl EnvironmentConstants {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_positive("gravity", self.gravity)?;
        ensure_positive("vacuum_permeability", self.vacuum_permeability)
    }
}

/// Magnetic drive-wheel parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagneticWheelSpec {
    /// Magnetic flux density at the wheel-surface contact (T).
    pub flux_density: f64,
    /// Contact area between one wheel and the surface (m²).
    pub contact_area: f64,
    /// Wheel radius (m).
    pub radius: f64,
    /// Number of magnetic wheels.
    pub count: u32,
}

impl MagneticWheelSpec {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_non_negative("flux_density", self.flux_density)?;
        ensure_positive("contact_area", self.contact_area)?;
        ensure_positive("radius", self.radius)?;
        if self.count < 1 {
            return Err(ModelError::CountBelowOne {
                name: "wheel count",
                value: self.count,
            });
        }
        Ok(())
    }
}

/// Lever arms and weight distribution used by the extreme-pose thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    /// First wheel-configuration lever arm (m).
    pub lever_arm_1: f64,
    /// Second wheel-configuration lever arm (m).
    pub lever_arm_2: f64,
    /// Weight-distribution constant applied to the rear-wheel load.
    pub weight_distribution: f64,
}

impl Default for GeometrySpec {
    fn default() -> Self {
        Self {
            lever_arm_1: 1.0,
            lever_arm_2: 1.0,
            weight_distribution: 1.0,
        }
    }
}

impl GeometrySpec {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_positive("lever_arm_1", self.lever_arm_1)?;
        ensure_positive("lever_arm_2", self.lever_arm_2)?;
        ensure_positive("weight_distribution", self.weight_distribution)
    }
}

/// Full robot parameterization for the feasibility and locomotion models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobotSpec {
    /// Robot mass excluding payload (kg).
    pub mass: f64,
    pub wheels: MagneticWheelSpec,
    pub geometry: GeometrySpec,
    /// Safety factor applied to the adhesion requirement.
    pub sf_adhesion: f64,
    /// Safety factor applied to the drive-torque requirement.
    pub sf_torque: f64,
    /// Available torque per drive motor (N·m).
    pub motor_torque: f64,
}

impl RobotSpec {
    /// Baseline two-wheel inspection robot: 27.5 kg chassis, 0.1 m wheels,
    /// 0.002 m² contact patches, adhesion/torque safety factors 5 and 3.
    ///
    /// The magnets (0.9207 T, ~674.6 N per wheel) and motors (80.94 N·m)
    /// sit just above the vertical-wall requirement for the bare chassis,
    /// so both feasibility margins come out at 1.0 to within 2×10⁻⁴.
    pub fn baseline() -> Self {
        Self {
            mass: 27.5,
            wheels: MagneticWheelSpec {
                flux_density: 0.9207,
                contact_area: 0.002,
                radius: 0.1,
                count: 2,
            },
            geometry: GeometrySpec::default(),
            sf_adhesion: 5.0,
            sf_torque: 3.0,
            motor_torque: 80.94,
        }
    }

    /// Baseline chassis with magnets and motors re-sized so the vertical-wall
    /// adhesion margin crosses 1.0 exactly when `max_payload` kg ride on top
    /// of the robot's own mass.
    pub fn rated_for_payload(max_payload: f64) -> Self {
        let mut spec = Self::baseline();
        let env = EnvironmentConstants::default();
        let rated_mass = spec.mass + max_payload;
        let per_wheel =
            spec.sf_adhesion * rated_mass * env.gravity / f64::from(spec.wheels.count);
        spec.wheels.flux_density =
            (2.0 * env.vacuum_permeability * per_wheel / spec.wheels.contact_area).sqrt();
        spec.motor_torque = spec.sf_torque * rated_mass * env.gravity * spec.wheels.radius;
        spec
    }

    pub fn validate(&self) -> ModelResult<()> {
        ensure_positive("mass", self.mass)?;
        self.wheels.validate()?;
        self.geometry.validate()?;
        ensure_at_least_one("sf_adhesion", self.sf_adhesion)?;
        ensure_at_least_one("sf_torque", self.sf_torque)?;
        ensure_non_negative("motor_torque", self.motor_torque)
    }
}

/// Surface condition classes encountered during inspection runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Terrain {
    Smooth,
    Rusted,
    Debris,
}

impl Terrain {
    /// Magnetic-adhesion derating for the surface class. Rust degrades the
    /// magnetic contact more than loose debris does.
    pub fn adhesion_factor(self) -> f64 {
        match self {
            Terrain::Smooth => 1.0,
            Terrain::Rusted => 0.9,
            Terrain::Debris => 0.95,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Terrain::Smooth => "smooth",
            Terrain::Rusted => "rusted",
            Terrain::Debris => "debris",
        }
    }
}

impl std::str::FromStr for Terrain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "smooth" => Ok(Terrain::Smooth),
            "rusted" => Ok(Terrain::Rusted),
            "debris" => Ok(Terrain::Debris),
            other => Err(format!("unknown terrain `{other}`")),
        }
    }
}

/// Local patch of ferromagnetic surface the robot stands on.
///
/// Orientation runs from 0° (floor) through 90° (vertical wall) to
/// 180° (ceiling).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePatch {
    /// Surface attitude (degrees, 0 = floor, 90 = wall, 180 = ceiling).
    pub orientation_deg: f64,
    /// Plate thickness (mm).
    pub thickness_mm: f64,
    /// Coulomb friction coefficient between wheel and surface.
    pub friction: f64,
    pub terrain: Terrain,
}

impl SurfacePatch {
    pub fn new(
        orientation_deg: f64,
        thickness_mm: f64,
        friction: f64,
        terrain: Terrain,
    ) -> ModelResult<Self> {
        let patch = Self {
            orientation_deg,
            thickness_mm,
            friction,
            terrain,
        };
        patch.validate()?;
        Ok(patch)
    }

    /// Thick smooth steel (10 mm, μ = 0.6) at the given orientation.
    pub fn smooth_steel(orientation_deg: f64) -> Self {
        Self {
            orientation_deg,
            thickness_mm: 10.0,
            friction: 0.6,
            terrain: Terrain::Smooth,
        }
    }

    pub fn validate(&self) -> ModelResult<()> {
        ensure_in_range("orientation_deg", 0.0, 180.0, self.orientation_deg)?;
        ensure_positive("thickness_mm", self.thickness_mm)?;
        ensure_in_range("friction", 0.0, 2.0, self.friction)
    }
}

/// Wheel loads during an internal-corner transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerLoadCase {
    /// Adhesive force acting on the front wheel (N).
    pub force_front: f64,
    /// Adhesive force acting on the rear wheel (N).
    pub force_rear: f64,
    /// Gravitational force carried through the transition (N).
    pub gravity_load: f64,
}

impl CornerLoadCase {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_non_negative("force_front", self.force_front)?;
        ensure_non_negative("force_rear", self.force_rear)?;
        ensure_non_negative("gravity_load", self.gravity_load)
    }
}

/// Components of the robot's weight relative to the surface plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GravityComponents {
    /// Component parallel to the surface, pulling the robot downhill (N).
    pub parallel: f64,
    /// Component normal to the surface (N). Positive presses the robot onto
    /// the surface; negative (orientations past 90°) pulls it away.
    pub normal: f64,
}

/// Safety-factored adhesion requirement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdhesionRequirement {
    /// Total required holding force across all wheels (N).
    pub total: f64,
    /// Required holding force per wheel (N).
    pub per_wheel: f64,
}

/// Aggregate pass/fail snapshot for a robot on a surface.
///
/// `feasible` is true exactly when both the adhesion and the torque margin
/// reach 1.0. The corner and extreme-pose entries are informational infima:
/// callers comparing against them must demand a strict excess.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub adhesion_required_total: f64,
    pub adhesion_required_per_wheel: f64,
    pub adhesion_available_total: f64,
    /// Available over required holding force.
    pub adhesion_margin: f64,
    pub torque_required: f64,
    /// Available over required drive torque.
    pub torque_margin: f64,
    /// Infimum motor torque for the supplied corner transition, if any (N·m).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner_torque_min: Option<f64>,
    /// Infimum adhesive force for the extreme-pose stability condition (N).
    pub extreme_adhesion_min: f64,
    pub feasible: bool,
}

/// Lumped magnet holding force: B²·A / (2·μ₀).
///
/// This is the standard air-gap estimate; no field simulation is attempted.
pub fn magnetic_force(
    flux_density: f64,
    contact_area: f64,
    env: EnvironmentConstants,
) -> ModelResult<f64> {
    ensure_non_negative("flux_density", flux_density)?;
    ensure_positive("contact_area", contact_area)?;
    env.validate()?;
    Ok(flux_density * flux_density * contact_area / (2.0 * env.vacuum_permeability))
}

/// Thickness calibration anchors: (plate thickness mm, adhesion factor).
/// Linear interpolation between anchors, clamped to 0.1 below 1 mm and
/// saturating at 1.0 from 7 mm up.
const THICKNESS_ANCHORS: [(f64, f64); 4] = [(1.0, 0.1), (3.0, 0.7), (5.0, 0.85), (7.0, 1.0)];

/// Adhesion derating for thin ferromagnetic plates, in (0, 1].
///
/// Nondecreasing in thickness and exactly 1.0 from 7 mm on.
pub fn thickness_factor(thickness_mm: f64) -> ModelResult<f64> {
    ensure_positive("thickness_mm", thickness_mm)?;
    let (first_t, first_f) = THICKNESS_ANCHORS[0];
    if thickness_mm <= first_t {
        return Ok(first_f);
    }
    for window in THICKNESS_ANCHORS.windows(2) {
        let (t0, f0) = window[0];
        let (t1, f1) = window[1];
        if thickness_mm <= t1 {
            return Ok(f0 + (f1 - f0) * (thickness_mm - t0) / (t1 - t0));
        }
    }
    Ok(1.0)
}

/// Total magnet holding force across all wheels on a given surface patch,
/// derated for plate thickness and terrain class.
pub fn effective_adhesion(
    wheels: MagneticWheelSpec,
    surface: SurfacePatch,
    env: EnvironmentConstants,
) -> ModelResult<f64> {
    wheels.validate()?;
    surface.validate()?;
    let per_wheel = magnetic_force(wheels.flux_density, wheels.contact_area, env)?;
    let factor = thickness_factor(surface.thickness_mm)?;
    Ok(f64::from(wheels.count) * per_wheel * factor * surface.terrain.adhesion_factor())
}

/// Split the robot's weight into surface-parallel and surface-normal
/// components: m·g·sin(θ) and m·g·cos(θ).
///
/// The normal component is signed: past 90° gravity pulls away from the
/// surface and the component goes negative.
pub fn decompose_gravity(
    mass: f64,
    orientation_deg: f64,
    env: EnvironmentConstants,
) -> ModelResult<GravityComponents> {
    ensure_positive("mass", mass)?;
    ensure_in_range("orientation_deg", 0.0, 180.0, orientation_deg)?;
    env.validate()?;
    let theta = orientation_deg.to_radians();
    let weight = mass * env.gravity;
    Ok(GravityComponents {
        parallel: weight * theta.sin(),
        normal: weight * theta.cos(),
    })
}

/// Coulomb friction capacity: μ · F_normal.
pub fn friction_capacity(friction: f64, normal_force: f64) -> ModelResult<f64> {
    ensure_non_negative("friction", friction)?;
    ensure_non_negative("normal_force", normal_force)?;
    Ok(friction * normal_force)
}

/// Safety-factored holding-force requirement: total = sf·m·g, split evenly
/// across the wheels.
pub fn required_adhesion(
    mass: f64,
    safety_factor: f64,
    wheel_count: u32,
    env: EnvironmentConstants,
) -> ModelResult<AdhesionRequirement> {
    ensure_positive("mass", mass)?;
    ensure_at_least_one("safety_factor", safety_factor)?;
    if wheel_count < 1 {
        return Err(ModelError::CountBelowOne {
            name: "wheel_count",
            value: wheel_count,
        });
    }
    env.validate()?;
    let total = safety_factor * mass * env.gravity;
    Ok(AdhesionRequirement {
        total,
        per_wheel: total / f64::from(wheel_count),
    })
}

/// Safety-factored drive torque: sf · F_total · r.
pub fn required_torque(
    total_force: f64,
    wheel_radius: f64,
    safety_factor: f64,
) -> ModelResult<f64> {
    ensure_non_negative("total_force", total_force)?;
    ensure_positive("wheel_radius", wheel_radius)?;
    ensure_at_least_one("safety_factor", safety_factor)?;
    Ok(safety_factor * total_force * wheel_radius)
}

/// Infimum adhesive force needed to hold an extreme pose: P_h / (X₁·X₂).
///
/// The quotient is carried literally with both lever arms in meters; callers
/// must demand a strict excess over the returned value. Note the published
/// form is dimensionally odd (the product of two lengths divides a force),
/// so treat the output as a calibrated threshold rather than a general law.
pub fn min_extreme_adhesion(horizontal_load: f64, geometry: GeometrySpec) -> ModelResult<f64> {
    ensure_non_negative("horizontal_load", horizontal_load)?;
    geometry.validate()?;
    let product = geometry.lever_arm_1 * geometry.lever_arm_2;
    if product == 0.0 {
        return Err(ModelError::NotPositive {
            name: "lever arm product",
            value: product,
        });
    }
    Ok(horizontal_load / product)
}

/// Infimum motor torque for an internal-corner transition:
/// r · (F_front + k·F_rear + P/2).
///
/// Callers must demand a strict excess over the returned value.
pub fn min_corner_torque(
    wheel_radius: f64,
    loads: CornerLoadCase,
    weight_distribution: f64,
) -> ModelResult<f64> {
    ensure_positive("wheel_radius", wheel_radius)?;
    ensure_positive("weight_distribution", weight_distribution)?;
    loads.validate()?;
    Ok(wheel_radius
        * (loads.force_front + weight_distribution * loads.force_rear + loads.gravity_load / 2.0))
}

/// Compose the individual force and torque checks into a single report.
///
/// The drive-torque requirement is evaluated against the gravity-parallel
/// component on the given surface, and the extreme-pose threshold against the
/// same component (the worst in-plane pull at that attitude). On a floor the
/// torque requirement is zero and the torque margin is reported as infinite.
pub fn feasibility_report(
    robot: RobotSpec,
    surface: SurfacePatch,
    corner: Option<CornerLoadCase>,
    env: EnvironmentConstants,
) -> ModelResult<FeasibilityReport> {
    robot.validate()?;
    surface.validate()?;

    let requirement = required_adhesion(robot.mass, robot.sf_adhesion, robot.wheels.count, env)?;
    let available = effective_adhesion(robot.wheels, surface, env)?;
    let adhesion_margin = available / requirement.total;

    let gravity = decompose_gravity(robot.mass, surface.orientation_deg, env)?;
    let torque_required = required_torque(gravity.parallel, robot.wheels.radius, robot.sf_torque)?;
    let torque_margin = if torque_required > 0.0 {
        robot.motor_torque / torque_required
    } else {
        f64::INFINITY
    };

    let corner_torque_min = match corner {
        Some(loads) => Some(min_corner_torque(
            robot.wheels.radius,
            loads,
            robot.geometry.weight_distribution,
        )?),
        None => None,
    };
    let extreme_adhesion_min = min_extreme_adhesion(gravity.parallel, robot.geometry)?;

    Ok(FeasibilityReport {
        adhesion_required_total: requirement.total,
        adhesion_required_per_wheel: requirement.per_wheel,
        adhesion_available_total: available,
        adhesion_margin,
        torque_required,
        torque_margin,
        corner_torque_min,
        extreme_adhesion_min,
        feasible: adhesion_margin >= 1.0 && torque_margin >= 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ENV: EnvironmentConstants = EnvironmentConstants {
        gravity: STANDARD_GRAVITY,
        vacuum_permeability: VACUUM_PERMEABILITY,
    };

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected} +- {tol}, got {actual}"
        );
    }

    #[test]
    fn magnetic_force_zero_flux_is_zero() {
        assert_eq!(magnetic_force(0.0, 0.001, ENV).unwrap(), 0.0);
    }

    #[test]
    fn magnetic_force_hand_value() {
        // 0.5² · 0.001 / (2 · 4π×10⁻⁷) = 99.4718...
        assert_close(magnetic_force(0.5, 0.001, ENV).unwrap(), 99.47, 0.01);
    }

    #[test]
    fn magnetic_force_matches_per_wheel_requirement() {
        // Inverting the formula at 674.45 N with A = 0.002 m² gives 0.9206 T.
        let b = (2.0 * VACUUM_PERMEABILITY * 674.45 / 0.002).sqrt();
        assert_close(b, 0.9206, 0.0001);
        assert_close(magnetic_force(b, 0.002, ENV).unwrap(), 674.45, 0.05);
    }

    #[test]
    fn magnetic_force_rejects_bad_inputs() {
        assert!(magnetic_force(-0.1, 0.001, ENV).is_err());
        assert!(magnetic_force(0.5, 0.0, ENV).is_err());
        assert!(magnetic_force(0.5, -1.0, ENV).is_err());
    }

    #[test]
    fn thickness_factor_anchors() {
        assert_eq!(thickness_factor(7.0).unwrap(), 1.0);
        assert_eq!(thickness_factor(10.0).unwrap(), 1.0);
        assert_close(thickness_factor(3.0).unwrap(), 0.7, 1e-12);
        assert_close(thickness_factor(5.0).unwrap(), 0.85, 1e-12);
        assert_close(thickness_factor(0.5).unwrap(), 0.1, 1e-12);
        assert!(thickness_factor(0.0).is_err());
        assert!(thickness_factor(-3.0).is_err());
    }

    #[test]
    fn thickness_factor_interpolates_between_anchors() {
        assert_close(thickness_factor(4.0).unwrap(), 0.775, 1e-12);
        assert_close(thickness_factor(6.0).unwrap(), 0.925, 1e-12);
        assert_close(thickness_factor(2.0).unwrap(), 0.4, 1e-12);
    }

    #[test]
    fn effective_adhesion_composes_factors() {
        let b = (2.0 * VACUUM_PERMEABILITY * 674.45 / 0.002).sqrt();
        let wheels = MagneticWheelSpec {
            flux_density: b,
            contact_area: 0.002,
            radius: 0.1,
            count: 2,
        };
        let thick = SurfacePatch::smooth_steel(90.0);
        assert_close(effective_adhesion(wheels, thick, ENV).unwrap(), 1348.9, 0.1);

        let thin = SurfacePatch {
            thickness_mm: 3.0,
            ..thick
        };
        assert_close(effective_adhesion(wheels, thin, ENV).unwrap(), 944.23, 0.1);

        let zero = MagneticWheelSpec {
            flux_density: 0.0,
            ..wheels
        };
        assert_eq!(effective_adhesion(zero, thick, ENV).unwrap(), 0.0);
    }

    #[test]
    fn gravity_decomposition_on_floor_wall_and_slope() {
        let floor = decompose_gravity(27.5, 0.0, ENV).unwrap();
        assert_eq!(floor.parallel, 0.0);
        assert_close(floor.normal, 269.775, 1e-9);

        let wall = decompose_gravity(27.5, 90.0, ENV).unwrap();
        assert_close(wall.parallel, 269.78, 0.01);

        let slope = decompose_gravity(27.5, 30.0, ENV).unwrap();
        assert_close(slope.parallel, 134.89, 0.01);
    }

    #[test]
    fn gravity_normal_component_is_signed() {
        let ceiling = decompose_gravity(27.5, 180.0, ENV).unwrap();
        assert_close(ceiling.normal, -269.775, 1e-9);
        assert!(decompose_gravity(0.0, 45.0, ENV).is_err());
    }

    #[test]
    fn friction_capacity_products() {
        assert_eq!(friction_capacity(0.0, 1000.0).unwrap(), 0.0);
        assert_close(friction_capacity(0.6, 1000.0).unwrap(), 600.0, 1e-9);
        assert_close(friction_capacity(0.6, 1348.9).unwrap(), 809.34, 0.01);
        assert!(friction_capacity(-0.1, 10.0).is_err());
        assert!(friction_capacity(0.5, -10.0).is_err());
    }

    #[test]
    fn required_adhesion_reference_values() {
        let bare = required_adhesion(27.5, 1.0, 2, ENV).unwrap();
        assert_close(bare.total, 269.78, 0.01);
        assert_close(bare.per_wheel, 134.89, 0.01);

        let factored = required_adhesion(27.5, 5.0, 2, ENV).unwrap();
        assert_close(factored.total, 1348.9, 0.1);
        assert_close(factored.per_wheel, 674.45, 0.05);
    }

    #[test]
    fn required_adhesion_vanishes_with_mass() {
        let tiny = required_adhesion(1e-9, 5.0, 2, ENV).unwrap();
        assert!(tiny.total < 1e-6);
        assert!(required_adhesion(10.0, 0.5, 2, ENV).is_err());
        assert!(required_adhesion(10.0, 5.0, 0, ENV).is_err());
    }

    #[test]
    fn required_torque_reference_values() {
        assert_close(required_torque(269.78, 0.1, 1.0).unwrap(), 26.98, 0.01);
        assert_close(required_torque(269.78, 0.1, 3.0).unwrap(), 80.94, 0.01);
        assert_eq!(required_torque(0.0, 0.1, 3.0).unwrap(), 0.0);
        assert!(required_torque(100.0, 0.0, 3.0).is_err());
    }

    #[test]
    fn extreme_adhesion_threshold() {
        let unit = GeometrySpec::default();
        assert_eq!(min_extreme_adhesion(0.0, unit).unwrap(), 0.0);
        assert_close(min_extreme_adhesion(2.227, unit).unwrap(), 2.227, 0.001);

        let wide = GeometrySpec {
            lever_arm_1: 2.0,
            lever_arm_2: 0.5,
            ..unit
        };
        assert_close(min_extreme_adhesion(1.0, wide).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn corner_torque_threshold() {
        let zero = CornerLoadCase {
            force_front: 0.0,
            force_rear: 0.0,
            gravity_load: 0.0,
        };
        assert_eq!(min_corner_torque(0.1, zero, 1.0).unwrap(), 0.0);

        let loaded = CornerLoadCase {
            force_front: 100.0,
            force_rear: 50.0,
            gravity_load: 269.775,
        };
        assert_close(min_corner_torque(0.1, loaded, 1.0).unwrap(), 28.489, 0.001);
        // Linearity in the radius.
        let half = min_corner_torque(0.1, loaded, 1.0).unwrap();
        let full = min_corner_torque(0.2, loaded, 1.0).unwrap();
        assert_eq!(full, 2.0 * half);
    }

    #[test]
    fn feasibility_of_baseline_robot_on_wall() {
        let report =
            feasibility_report(RobotSpec::baseline(), SurfacePatch::smooth_steel(90.0), None, ENV)
                .unwrap();
        assert!(report.feasible);
        assert_close(report.adhesion_margin, 1.0, 1e-3);
        assert_close(report.torque_margin, 1.0, 1e-3);
        assert_close(report.adhesion_required_total, 1348.9, 0.1);
        assert_close(report.adhesion_required_per_wheel, 674.45, 0.05);
        assert!(report.corner_torque_min.is_none());
    }

    #[test]
    fn feasibility_collapses_with_halved_flux() {
        let mut robot = RobotSpec::baseline();
        robot.wheels.flux_density *= 0.5;
        let report =
            feasibility_report(robot, SurfacePatch::smooth_steel(90.0), None, ENV).unwrap();
        assert!(!report.feasible);
        assert_close(report.adhesion_margin, 0.25, 1e-3);
    }

    #[test]
    fn feasibility_on_floor_is_easy() {
        let report =
            feasibility_report(RobotSpec::baseline(), SurfacePatch::smooth_steel(0.0), None, ENV)
                .unwrap();
        assert!(report.feasible);
        assert!(report.torque_margin.is_infinite());
        assert_eq!(report.torque_required, 0.0);
    }

    #[test]
    fn feasibility_carries_corner_threshold_through() {
        let loads = CornerLoadCase {
            force_front: 100.0,
            force_rear: 50.0,
            gravity_load: 269.775,
        };
        let report = feasibility_report(
            RobotSpec::baseline(),
            SurfacePatch::smooth_steel(90.0),
            Some(loads),
            ENV,
        )
        .unwrap();
        assert_close(report.corner_torque_min.unwrap(), 28.489, 0.001);
    }

    #[test]
    fn rated_robot_crosses_margin_at_its_payload_capacity() {
        let robot = RobotSpec::rated_for_payload(27.5);
        let wall = SurfacePatch::smooth_steel(90.0);
        let available = effective_adhesion(robot.wheels, wall, ENV).unwrap();
        let at_capacity = required_adhesion(robot.mass + 27.5, robot.sf_adhesion, 2, ENV)
            .unwrap()
            .total;
        assert_close(available / at_capacity, 1.0, 1e-12);
    }
}
