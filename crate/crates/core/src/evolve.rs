//! Post-insertion time evolution and wave-function sampling.
//!
//! Each well mode acquires the phase `exp(-i E_n t / hbar)`; chambers are
//! decoupled wells, so a two-chamber state evolves chamber by chamber. Norm
//! and energy are invariant by construction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RingConfig;
use crate::error::{Error, Result};
use crate::well::{well_energy, ChamberExpansion, TwoChamberState};

/// Uniform sampling times `t_start..=t_end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::NonPositive {
                name: "steps",
                value: 0.0,
            });
        }
        if !(t_end - t_start).is_finite() || t_end < t_start {
            return Err(Error::NonPositive {
                name: "t_end - t_start",
                value: t_end - t_start,
            });
        }
        Ok(Self {
            t_start,
            t_end,
            steps,
        })
    }

    /// The sampling instants, endpoints included.
    pub fn times(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.t_start];
        }
        (0..self.steps)
            .map(|i| {
                self.t_start
                    + (self.t_end - self.t_start) * i as f64 / (self.steps - 1) as f64
            })
            .collect()
    }
}

/// Applies `exp(-i E_n t / hbar)` to each mode of one well expansion.
pub fn evolve(expansion: &ChamberExpansion, t: f64, config: &RingConfig) -> ChamberExpansion {
    let well = *expansion.well();
    let coeffs = expansion
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let phase = -well_energy(i + 1, &well, config) * t / config.hbar();
            c * Complex64::from_polar(1.0, phase)
        })
        .collect();
    ChamberExpansion::new(well, coeffs)
}

/// Evolves both chambers independently.
pub fn evolve_two_chamber(state: &TwoChamberState, t: f64, config: &RingConfig) -> TwoChamberState {
    TwoChamberState::from_parts(
        evolve(state.left(), t, config),
        evolve(state.right(), t, config),
    )
    .expect("evolution preserves the chamber partition")
}

/// Samples a single-well expansion on a list of angles.
pub fn sample_grid(expansion: &ChamberExpansion, thetas: &[f64]) -> Result<Vec<Complex64>> {
    thetas.iter().map(|&t| expansion.value_at(t)).collect()
}

/// Samples a two-chamber state on a list of angles.
pub fn sample_grid_two(state: &TwoChamberState, thetas: &[f64]) -> Result<Vec<Complex64>> {
    thetas.iter().map(|&t| state.value_at(t)).collect()
}
