//! Error type shared by every model in the crate.

use thiserror::Error;

/// Domain and runtime errors raised by the force, sizing, and simulation models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} must be > 0 (got {value})")]
    NotPositive { name: &'static str, value: f64 },

    #[error("{name} must be >= 0 (got {value})")]
    Negative { name: &'static str, value: f64 },

    #[error("{name} must be >= 1 (got {value})")]
    BelowOne { name: &'static str, value: f64 },

    #[error("{name} must be within [{min}, {max}] (got {value})")]
    OutOfRange {
        name: &'static str,
        min: f64,
        max: f64,
        value: f64,
    },

    #[error("{name} must be finite (got {value})")]
    NotFinite { name: &'static str, value: f64 },

    #[error("{name} must be >= 1 (got {value})")]
    CountBelowOne { name: &'static str, value: u32 },

    /// Net normal force dropped to zero or below: the robot detached.
    #[error("robot pulled off the surface (net normal {net_normal_n:.3} N)")]
    Detached { net_normal_n: f64 },

    #[error("patch index {index} out of bounds ({count} patches)")]
    UnknownPatch { index: usize, count: usize },

    #[error("corner joint {index} out of bounds ({count} joints)")]
    UnknownJoint { index: usize, count: usize },

    #[error("state is on patch {actual} but the joint departs from patch {expected}")]
    WrongPatch { expected: usize, actual: usize },

    #[error("path needs at least two waypoints (got {got})")]
    TooFewWaypoints { got: usize },

    #[error("catalog has no motor entries")]
    EmptyCatalog,

    #[error("no catalog motor provides {required_nm:.3} N*m")]
    NoSuitableMotor { required_nm: f64 },

    #[error("no catalog magnet provides {required_n:.3} N per wheel")]
    NoSuitableMagnet { required_n: f64 },
}

/// Convenience alias used throughout the crate.
pub type ModelResult<T> = Result<T, ModelError>;

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> ModelResult<()> {
    if !value.is_finite() {
        return Err(ModelError::NotFinite { name, value });
    }
    if value <= 0.0 {
        return Err(ModelError::NotPositive { name, value });
    }
    Ok(())
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> ModelResult<()> {
    if !value.is_finite() {
        return Err(ModelError::NotFinite { name, value });
    }
    if value < 0.0 {
        return Err(ModelError::Negative { name, value });
    }
    Ok(())
}

pub(crate) fn ensure_at_least_one(name: &'static str, value: f64) -> ModelResult<()> {
    if !value.is_finite() {
        return Err(ModelError::NotFinite { name, value });
    }
    if value < 1.0 {
        return Err(ModelError::BelowOne { name, value });
    }
    Ok(())
}

pub(crate) fn ensure_in_range(
    name: &'static str,
    min: f64,
    max: f64,
    value: f64,
) -> ModelResult<()> {
    if !value.is_finite() {
        return Err(ModelError::NotFinite { name, value });
    }
    if value < min || value > max {
        return Err(ModelError::OutOfRange {
            name,
            min,
            max,
            value,
        });
    }
    Ok(())
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> ModelResult<()> {
    if !value.is_finite() {
        return Err(ModelError::NotFinite { name, value });
    }
    Ok(())
}
