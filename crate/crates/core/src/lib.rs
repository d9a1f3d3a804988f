//! Design-feasibility and locomotion models for magnetic-adhesion climbing
//! inspection robots on ferromagnetic surfaces.
//!
//! The crate is organized as four layers:
//!
//! - [`physics`]: pure force/torque formulas — magnet holding force,
//!   gravity decomposition, friction, safety-factored requirements, and
//!   internal-corner / extreme-pose thresholds, composed into a
//!   [`physics::FeasibilityReport`].
//! - [`sim`]: deterministic explicit-Euler unicycle simulation with a
//!   calibrated speed model, contact classification, corner transitions
//!   across chained patches, and pure-pursuit path following.
//! - [`experiments`]: six built-in scenario runners (payload, plate
//!   thickness, incline, maneuver courses, speed matrix, terrain suite)
//!   emitting tables plus named findings.
//! - [`design`]: inverse sizing of magnets and motors against a component
//!   catalog.
//!
//! All quantities are SI; angles are degrees at public interfaces and
//! radians internally. Every function here is a pure function of value
//! types, so concurrent use needs no synchronization.

pub mod design;
pub mod error;
pub mod experiments;
pub mod physics;
pub mod sim;

pub use error::{ModelError, ModelResult};
