//! Physical configuration of the ring: action quantum, particle mass, radius.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Units for the ring problem.
///
/// Defaults are chosen so that `hbar^2 / (2 * mass) = 1` on a unit ring,
/// which makes the mode-`n` ring energy exactly `n^2`. Energies on a ring
/// of radius `R` scale as `1/R^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingConfig {
    hbar: f64,
    mass: f64,
    radius: f64,
}

impl Default for RingConfig {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 0.5,
            radius: 1.0,
        }
    }
}

impl RingConfig {
    pub fn new(hbar: f64, mass: f64, radius: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("mass", mass), ("radius", radius)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositive { name, value });
            }
        }
        Ok(Self { hbar, mass, radius })
    }

    /// Default constants with a different ring radius.
    pub fn with_radius(radius: f64) -> Result<Self> {
        Self::new(1.0, 0.5, radius)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `hbar^2 / (2 * mass * radius^2)`, the scale of every energy in the model.
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass * self.radius * self.radius)
    }
}
