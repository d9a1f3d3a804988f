//! Inverse sizing: from payload and surface assumptions to required flux
//! density and motor torque, plus component selection from a catalog.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, ModelError, ModelResult};
use crate::physics::{
    decompose_gravity, magnetic_force, required_adhesion, required_torque, thickness_factor,
    EnvironmentConstants, GeometrySpec, SurfacePatch,
};

/// A purchasable component: a magnet wheel assembly or a drive motor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CatalogEntry {
    Magnet {
        name: String,
        /// Flux density at the contact (T).
        flux_density: f64,
        /// Contact area per wheel (m²).
        contact_area: f64,
    },
    Motor {
        name: String,
        /// Deliverable torque (N·m).
        torque: f64,
        /// Component mass (kg).
        mass: f64,
    },
}

impl CatalogEntry {
    pub fn validate(&self) -> ModelResult<()> {
        match self {
            CatalogEntry::Magnet {
                flux_density,
                contact_area,
                ..
            } => {
                ensure_positive("magnet flux_density", *flux_density)?;
                ensure_positive("magnet contact_area", *contact_area)
            }
            CatalogEntry::Motor { torque, mass, .. } => {
                ensure_positive("motor torque", *torque)?;
                ensure_positive("motor mass", *mass)
            }
        }
    }
}

/// A small stock catalog. The 80 kg-class servo is carried at 100 N·m
/// deliverable torque; hobby-servo mass-class ratings do not convert to
/// N·m without a lever-arm convention, so the figure is a documented
/// stand-in, not a datasheet value.
pub fn default_catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry::Magnet {
            name: "ferrite-ring".to_string(),
            flux_density: 0.30,
            contact_area: 0.002,
        },
        CatalogEntry::Magnet {
            name: "n35-ring".to_string(),
            flux_density: 0.60,
            contact_area: 0.002,
        },
        CatalogEntry::Magnet {
            name: "n45-ring".to_string(),
            flux_density: 0.80,
            contact_area: 0.002,
        },
        CatalogEntry::Magnet {
            name: "n52-ring".to_string(),
            flux_density: 0.95,
            contact_area: 0.002,
        },
        CatalogEntry::Magnet {
            name: "n52-stacked".to_string(),
            flux_density: 1.35,
            contact_area: 0.002,
        },
        CatalogEntry::Motor {
            name: "servo-20kg".to_string(),
            torque: 25.0,
            mass: 0.3,
        },
        CatalogEntry::Motor {
            name: "servo-40kg".to_string(),
            torque: 50.0,
            mass: 0.42,
        },
        CatalogEntry::Motor {
            name: "servo-80kg".to_string(),
            torque: 100.0,
            mass: 0.65,
        },
        CatalogEntry::Motor {
            name: "servo-160kg-dual".to_string(),
            torque: 200.0,
            mass: 1.3,
        },
    ]
}

/// A selected magnet with its delivered force and margin over the requirement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagnetSelection {
    pub name: String,
    pub flux_density: f64,
    pub contact_area: f64,
    /// Holding force on the design surface (N).
    pub force: f64,
    pub margin: f64,
}

/// A selected motor with its margin over the requirement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotorSelection {
    pub name: String,
    pub torque: f64,
    pub margin: f64,
}

/// Sizing inputs: masses, wheel geometry, safety factors, and the surface
/// the design must survive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignRequest {
    /// Payload the robot must carry (kg).
    pub payload: f64,
    /// Robot mass excluding payload (kg).
    pub robot_mass: f64,
    pub wheel_count: u32,
    pub wheel_radius: f64,
    /// Magnet contact area assumed when inverting for flux density (m²).
    pub contact_area: f64,
    pub sf_adhesion: f64,
    pub sf_torque: f64,
    pub geometry: GeometrySpec,
    pub surface: SurfacePatch,
}

impl DesignRequest {
    /// Sizing request for the 27.5 kg reference robot on a 90° wall.
    pub fn reference() -> Self {
        Self {
            payload: 0.0,
            robot_mass: 27.5,
            wheel_count: 2,
            wheel_radius: 0.1,
            contact_area: 0.002,
            sf_adhesion: 5.0,
            sf_torque: 3.0,
            geometry: GeometrySpec::default(),
            surface: SurfacePatch::smooth_steel(90.0),
        }
    }

    pub fn validate(&self) -> ModelResult<()> {
        ensure_non_negative("payload", self.payload)?;
        ensure_positive("robot_mass", self.robot_mass)?;
        if self.wheel_count < 1 {
            return Err(ModelError::CountBelowOne {
                name: "wheel_count",
                value: self.wheel_count,
            });
        }
        ensure_positive("wheel_radius", self.wheel_radius)?;
        ensure_positive("contact_area", self.contact_area)?;
        self.geometry.validate()?;
        self.surface.validate()
    }
}

/// Full sizing output: requirements, selections, margins, feasibility.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignReport {
    /// Safety-factored holding force per wheel (N).
    pub adhesion_required_per_wheel: f64,
    /// Flux density that meets the per-wheel force on the design surface (T).
    pub flux_density_required: f64,
    /// Safety-factored drive torque on the design surface (N·m).
    pub torque_required: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub magnet: Option<MagnetSelection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motor: Option<MotorSelection>,
    pub feasible: bool,
    /// Human-readable reasons when a selection failed.
    pub notes: Vec<String>,
}

/// Flux density whose holding force meets `per_wheel_force` through a plate
/// of the given thickness: invert the lumped force model after removing the
/// thickness derating.
pub fn size_magnet(
    per_wheel_force: f64,
    contact_area: f64,
    thickness_mm: f64,
    env: EnvironmentConstants,
) -> ModelResult<f64> {
    ensure_non_negative("per_wheel_force", per_wheel_force)?;
    ensure_positive("contact_area", contact_area)?;
    env.validate()?;
    let raw_force = per_wheel_force / thickness_factor(thickness_mm)?;
    Ok((2.0 * env.vacuum_permeability * raw_force / contact_area).sqrt())
}

/// Smallest catalog motor whose torque meets the requirement.
///
/// Margin is torque over requirement; an exactly zero requirement reports an
/// infinite margin.
pub fn size_motor(
    required_torque_nm: f64,
    catalog: &[CatalogEntry],
) -> ModelResult<MotorSelection> {
    ensure_non_negative("required_torque", required_torque_nm)?;
    let mut motors: Vec<(&String, f64)> = catalog
        .iter()
        .filter_map(|entry| match entry {
            CatalogEntry::Motor { name, torque, .. } => Some((name, *torque)),
            CatalogEntry::Magnet { .. } => None,
        })
        .collect();
    if motors.is_empty() {
        return Err(ModelError::EmptyCatalog);
    }
    motors.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite torque").then(a.0.cmp(b.0)));
    let (name, torque) = motors
        .into_iter()
        .find(|(_, torque)| *torque >= required_torque_nm)
        .ok_or(ModelError::NoSuitableMotor {
            required_nm: required_torque_nm,
        })?;
    let margin = if required_torque_nm > 0.0 {
        torque / required_torque_nm
    } else {
        f64::INFINITY
    };
    Ok(MotorSelection {
        name: name.clone(),
        torque,
        margin,
    })
}

/// Smallest catalog magnet whose force on the design surface meets the
/// per-wheel requirement.
pub fn size_magnet_from_catalog(
    per_wheel_force: f64,
    thickness_mm: f64,
    catalog: &[CatalogEntry],
    env: EnvironmentConstants,
) -> ModelResult<MagnetSelection> {
    ensure_non_negative("per_wheel_force", per_wheel_force)?;
    let derating = thickness_factor(thickness_mm)?;
    let mut magnets = Vec::new();
    for entry in catalog {
        if let CatalogEntry::Magnet {
            name,
            flux_density,
            contact_area,
        } = entry
        {
            let force = magnetic_force(*flux_density, *contact_area, env)? * derating;
            magnets.push((name, *flux_density, *contact_area, force));
        }
    }
    if magnets.is_empty() {
        return Err(ModelError::EmptyCatalog);
    }
    magnets.sort_by(|a, b| a.3.partial_cmp(&b.3).expect("finite force").then(a.0.cmp(b.0)));
    let (name, flux_density, contact_area, force) = magnets
        .into_iter()
        .find(|(_, _, _, force)| *force >= per_wheel_force)
        .ok_or(ModelError::NoSuitableMagnet {
            required_n: per_wheel_force,
        })?;
    let margin = if per_wheel_force > 0.0 {
        force / per_wheel_force
    } else {
        f64::INFINITY
    };
    Ok(MagnetSelection {
        name: name.clone(),
        flux_density,
        contact_area,
        force,
        margin,
    })
}

/// Compute requirements from the request and select components.
///
/// Catalog exhaustion is reported through `feasible = false` and `notes`,
/// not as an error; errors are reserved for invalid inputs.
pub fn design_report(
    request: &DesignRequest,
    catalog: &[CatalogEntry],
    env: EnvironmentConstants,
) -> ModelResult<DesignReport> {
    request.validate()?;
    for entry in catalog {
        entry.validate()?;
    }

    let total_mass = request.robot_mass + request.payload;
    let requirement =
        required_adhesion(total_mass, request.sf_adhesion, request.wheel_count, env)?;
    let flux_required = size_magnet(
        requirement.per_wheel,
        request.contact_area,
        request.surface.thickness_mm,
        env,
    )?;
    let gravity = decompose_gravity(total_mass, request.surface.orientation_deg, env)?;
    let torque = required_torque(gravity.parallel, request.wheel_radius, request.sf_torque)?;

    let mut notes = Vec::new();
    let magnet = match size_magnet_from_catalog(
        requirement.per_wheel,
        request.surface.thickness_mm,
        catalog,
        env,
    ) {
        Ok(selection) => Some(selection),
        Err(err) => {
            notes.push(err.to_string());
            None
        }
    };
    let motor = match size_motor(torque, catalog) {
        Ok(selection) => Some(selection),
        Err(err) => {
            notes.push(err.to_string());
            None
        }
    };

    let feasible = magnet.is_some() && motor.is_some();
    Ok(DesignReport {
        adhesion_required_per_wheel: requirement.per_wheel,
        flux_density_required: flux_required,
        torque_required: torque,
        magnet,
        motor,
        feasible,
        notes,
    })
}
