//! Infinite-well geometry on the ring and truncated sine-basis expansions.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::config::RingConfig;
use crate::error::{Error, Result};

/// An arc `(left, left + length)` of the ring treated as a hard-walled well.
///
/// A single barrier at `theta0` produces the full-circumference well
/// `(theta0, theta0 + 2pi)`; a double insertion at `0` and `alpha` produces
/// the chambers `(0, alpha)` and `(alpha, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    left: f64,
    length: f64,
}

impl WellSpec {
    pub fn new(left: f64, length: f64) -> Result<Self> {
        if !(0.0..TAU).contains(&left) {
            return Err(Error::WellLeftOutOfRange(left));
        }
        if !(length > 0.0 && length <= TAU) || !length.is_finite() {
            return Err(Error::DegenerateWell(length));
        }
        Ok(Self { left, length })
    }

    /// The well produced by one barrier: full circumference, wrapped at `2pi`.
    pub fn single_barrier(theta0: f64) -> Result<Self> {
        Self::new(theta0.rem_euclid(TAU), TAU)
    }

    /// Chamber `(0, alpha)` of a double insertion.
    pub fn left_chamber(alpha: f64) -> Result<Self> {
        Self::new(0.0, alpha)
    }

    /// Chamber `(alpha, 2pi)` of a double insertion.
    pub fn right_chamber(alpha: f64) -> Result<Self> {
        Self::new(alpha, TAU - alpha)
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn right(&self) -> f64 {
        self.left + self.length
    }

    /// Maps `theta` into the local coordinate `x in [0, length]`, unwrapping
    /// once around the ring if needed. `None` when the angle is outside.
    pub fn local_coordinate(&self, theta: f64) -> Option<f64> {
        let mut x = theta - self.left;
        if x < 0.0 {
            x += TAU;
        }
        (0.0..=self.length).contains(&x).then_some(x)
    }

    /// Orthonormal mode `sqrt(2/L) * sin(n pi x / L)` at local coordinate `x`.
    pub fn basis_value_local(&self, mode: usize, x: f64) -> f64 {
        (2.0 / self.length).sqrt() * (mode as f64 * std::f64::consts::PI * x / self.length).sin()
    }

    pub fn basis_value(&self, mode: usize, theta: f64) -> Result<f64> {
        let x = self
            .local_coordinate(theta)
            .ok_or(Error::OutOfDomain { theta })?;
        Ok(self.basis_value_local(mode, x))
    }
}

/// Well eigenenergy `n^2 pi^2 hbar^2 / (2 M L^2 R^2)` for angular length `L`.
///
/// Evaluated as `(n * (pi/L))^2`; the ratio first, so that wells whose length
/// is an exact binary multiple of `pi` (the full circumference in particular)
/// reproduce the ring spectrum bit for bit.
pub fn well_energy(mode: usize, well: &WellSpec, config: &RingConfig) -> f64 {
    let k = mode as f64 * (std::f64::consts::PI / well.length());
    k * k * config.kinetic_scale()
}

/// Truncated expansion over the orthonormal sine modes of one well.
///
/// Coefficients are stored complex so that time evolution does not need a
/// parallel type; freshly inserted states have zero imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ChamberExpansion {
    well: WellSpec,
    coeffs: Vec<Complex64>,
}

impl ChamberExpansion {
    pub fn new(well: WellSpec, coeffs: Vec<Complex64>) -> Self {
        Self { well, coeffs }
    }

    pub fn well(&self) -> &WellSpec {
        &self.well
    }

    /// Coefficient of mode `n` (1-based); zero beyond the truncation.
    pub fn coeff(&self, mode: usize) -> Complex64 {
        if mode == 0 || mode > self.coeffs.len() {
            Complex64::ZERO
        } else {
            self.coeffs[mode - 1]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// Total squared coefficient mass.
    pub fn sum_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Amplitude at `theta` (complex once evolved).
    pub fn value_at(&self, theta: f64) -> Result<Complex64> {
        let x = self
            .well
            .local_coordinate(theta)
            .ok_or(Error::OutOfDomain { theta })?;
        let mut acc = Complex64::ZERO;
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * self.well.basis_value_local(i + 1, x);
        }
        Ok(acc)
    }
}

/// The pair of chamber expansions produced by a double insertion at `0` and `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoChamberState {
    left: ChamberExpansion,
    right: ChamberExpansion,
    alpha: f64,
}

impl TwoChamberState {
    /// Assembles the state, checking that the chambers partition `(0, 2pi)`.
    pub fn from_parts(left: ChamberExpansion, right: ChamberExpansion) -> Result<Self> {
        let alpha = left.well().right();
        if left.well().left() != 0.0
            || right.well().left() != alpha
            || (right.well().right() - TAU).abs() > 1e-12
        {
            return Err(Error::DegenerateWell(right.well().length()));
        }
        Ok(Self { left, right, alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn left(&self) -> &ChamberExpansion {
        &self.left
    }

    pub fn right(&self) -> &ChamberExpansion {
        &self.right
    }

    pub fn sum_sq(&self) -> f64 {
        self.left.sum_sq() + self.right.sum_sq()
    }

    /// Amplitude at `theta`; the barrier angle itself belongs to the left
    /// chamber boundary where every mode vanishes.
    pub fn value_at(&self, theta: f64) -> Result<Complex64> {
        if self.left.well().local_coordinate(theta).is_some() {
            self.left.value_at(theta)
        } else {
            self.right.value_at(theta)
        }
    }
}

/// Anything made of chamber expansions; lets diagnostics and the energy
/// functional treat one- and two-well states uniformly.
pub trait Chambered {
    fn chambers(&self) -> Vec<&ChamberExpansion>;

    fn total_sum_sq(&self) -> f64 {
        self.chambers().iter().map(|c| c.sum_sq()).sum()
    }
}

impl Chambered for ChamberExpansion {
    fn chambers(&self) -> Vec<&ChamberExpansion> {
        vec![self]
    }
}

impl Chambered for TwoChamberState {
    fn chambers(&self) -> Vec<&ChamberExpansion> {
        vec![&self.left, &self.right]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring_energy;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn well_energy_examples() {
        let defaults = RingConfig::default();
        let quarter = WellSpec::new(0.0, FRAC_PI_4).unwrap();
        assert_eq!(well_energy(1, &quarter, &defaults), 16.0);

        let full = WellSpec::single_barrier(0.0).unwrap();
        assert_eq!(well_energy(2, &full, &defaults), 1.0);
        assert_eq!(well_energy(1, &full, &defaults), 0.25);
    }

    #[test]
    fn nodal_reindexing_matches_ring_spectrum() {
        let defaults = RingConfig::default();
        let full = WellSpec::single_barrier(0.0).unwrap();
        for n in 1..=64 {
            assert_eq!(
                ring_energy(n, &defaults),
                well_energy(2 * n, &full, &defaults),
                "mode {n}"
            );
        }
    }

    #[test]
    fn rejects_degenerate_wells() {
        assert!(WellSpec::new(0.0, 0.0).is_err());
        assert!(WellSpec::new(0.0, -1.0).is_err());
        assert!(WellSpec::new(0.0, TAU + 0.1).is_err());
        assert!(WellSpec::new(-0.1, 1.0).is_err());
    }

    #[test]
    fn wrapped_well_contains_the_whole_ring() {
        let well = WellSpec::single_barrier(FRAC_PI_4).unwrap();
        // 0 is reached by unwrapping once around.
        let x = well.local_coordinate(0.0).unwrap();
        assert!((x - (TAU - FRAC_PI_4)).abs() < 1e-12);
        assert!(well.local_coordinate(PI).is_some());
    }

    #[test]
    fn chamber_partition_is_enforced() {
        let left = ChamberExpansion::new(WellSpec::left_chamber(FRAC_PI_4).unwrap(), vec![]);
        let right = ChamberExpansion::new(WellSpec::right_chamber(FRAC_PI_4).unwrap(), vec![]);
        assert!(TwoChamberState::from_parts(left.clone(), right).is_ok());

        let mismatched = ChamberExpansion::new(WellSpec::right_chamber(0.5).unwrap(), vec![]);
        assert!(TwoChamberState::from_parts(left, mismatched).is_err());
    }
}
