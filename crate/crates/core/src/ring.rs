//! States on the ring: finite superpositions over the degenerate
//! eigenbasis `{sin(n*theta), cos(n*theta)}`.

use std::f64::consts::PI;

use crate::config::RingConfig;
use crate::error::{Error, Result};

/// One degenerate mode pair: `sin_coeff * sin(n*theta) + cos_coeff * cos(n*theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingTerm {
    pub mode: usize,
    pub sin_coeff: f64,
    pub cos_coeff: f64,
}

impl RingTerm {
    pub fn new(mode: usize, sin_coeff: f64, cos_coeff: f64) -> Self {
        Self {
            mode,
            sin_coeff,
            cos_coeff,
        }
    }
}

/// A finite superposition on the ring.
///
/// The wave function is `normalization * sum_n (u_n sin(n theta) + v_n cos(n theta))`.
/// The standard constructors use `normalization = 1/sqrt(pi)` so that a single
/// unit-coefficient term has unit L2 norm on `[0, 2pi]`. The empty term list is
/// the zero state.
#[derive(Debug, Clone, PartialEq)]
pub struct RingState {
    terms: Vec<RingTerm>,
    normalization: f64,
}

/// `1/sqrt(pi)`, the prefactor that makes one-term states unit norm.
pub fn unit_prefactor() -> f64 {
    1.0 / PI.sqrt()
}

impl RingState {
    /// Builds a state from explicit terms. Modes must be positive and distinct.
    pub fn new(mut terms: Vec<RingTerm>, normalization: f64) -> Result<Self> {
        terms.sort_by_key(|t| t.mode);
        for pair in terms.windows(2) {
            if pair[0].mode == pair[1].mode {
                return Err(Error::DuplicateMode(pair[0].mode));
            }
        }
        for t in &terms {
            if t.mode == 0 {
                return Err(Error::InvalidMode);
            }
            if !t.sin_coeff.is_finite() || !t.cos_coeff.is_finite() {
                return Err(Error::NonPositive {
                    name: "ring coefficient (must be finite)",
                    value: if t.sin_coeff.is_finite() {
                        t.cos_coeff
                    } else {
                        t.sin_coeff
                    },
                });
            }
        }
        if !normalization.is_finite() {
            return Err(Error::NonPositive {
                name: "normalization (must be finite)",
                value: normalization,
            });
        }
        Ok(Self {
            terms,
            normalization,
        })
    }

    pub fn zero() -> Self {
        Self {
            terms: Vec::new(),
            normalization: unit_prefactor(),
        }
    }

    /// `sin(n*theta)/sqrt(pi)`: unit norm, fixed node at the origin.
    pub fn sine(mode: usize) -> Self {
        Self::new(vec![RingTerm::new(mode, 1.0, 0.0)], unit_prefactor())
            .expect("positive mode expected")
    }

    /// `cos(n*theta)/sqrt(pi)`: unit norm, no node at the origin.
    pub fn cosine(mode: usize) -> Self {
        Self::new(vec![RingTerm::new(mode, 0.0, 1.0)], unit_prefactor())
            .expect("positive mode expected")
    }

    /// `sin(n*(theta - shift))/sqrt(pi)`: unit norm, fixed node at `shift`.
    ///
    /// Stored through the rotation identity
    /// `sin(n theta - d) = cos(d) sin(n theta) - sin(d) cos(n theta)` with `d = n*shift`.
    pub fn shifted_sine(mode: usize, shift: f64) -> Self {
        let d = mode as f64 * shift;
        Self::new(
            vec![RingTerm::new(mode, d.cos(), -d.sin())],
            unit_prefactor(),
        )
        .expect("positive mode expected")
    }

    pub fn terms(&self) -> &[RingTerm] {
        &self.terms
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Amplitude at `theta`. Periodic, so any real angle is accepted.
    pub fn evaluate(&self, theta: f64) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                let nt = t.mode as f64 * theta;
                t.sin_coeff * nt.sin() + t.cos_coeff * nt.cos()
            })
            .sum();
        self.normalization * sum
    }

    /// Amplitude of the single energy component with the given mode at `theta`.
    ///
    /// Distinct modes have distinct energies, so a point is a fixed node of
    /// the time-dependent state exactly when every component vanishes there.
    pub fn component_at(&self, mode: usize, theta: f64) -> f64 {
        self.terms
            .iter()
            .find(|t| t.mode == mode)
            .map(|t| {
                let nt = mode as f64 * theta;
                self.normalization * (t.sin_coeff * nt.sin() + t.cos_coeff * nt.cos())
            })
            .unwrap_or(0.0)
    }

    /// L2 norm over `[0, 2pi]`.
    ///
    /// Each of `sin(n theta)`, `cos(n theta)` integrates to `pi` in square,
    /// and distinct terms are orthogonal, so the squared norm is
    /// `normalization^2 * pi * sum(u^2 + v^2)`.
    pub fn norm(&self) -> f64 {
        let sum_sq: f64 = self
            .terms
            .iter()
            .map(|t| t.sin_coeff * t.sin_coeff + t.cos_coeff * t.cos_coeff)
            .sum();
        self.normalization.abs() * (PI * sum_sq).sqrt()
    }

    /// `a * s1 + b * s2` as a new state with the prefactor folded into the
    /// coefficients (`normalization = 1`).
    pub fn linear_combination(a: f64, s1: &Self, b: f64, s2: &Self) -> Self {
        let mut terms: Vec<RingTerm> = Vec::new();
        let mut absorb = |scale: f64, state: &Self| {
            for t in &state.terms {
                let u = scale * state.normalization * t.sin_coeff;
                let v = scale * state.normalization * t.cos_coeff;
                match terms.iter_mut().find(|e| e.mode == t.mode) {
                    Some(e) => {
                        e.sin_coeff += u;
                        e.cos_coeff += v;
                    }
                    None => terms.push(RingTerm::new(t.mode, u, v)),
                }
            }
        };
        absorb(a, s1);
        absorb(b, s2);
        terms.sort_by_key(|t| t.mode);
        Self {
            terms,
            normalization: 1.0,
        }
    }

    pub fn max_mode(&self) -> usize {
        self.terms.iter().map(|t| t.mode).max().unwrap_or(0)
    }
}

/// Ring eigenenergy `hbar^2 n^2 / (2 M R^2)`. Exact for integer modes.
pub fn ring_energy(mode: usize, config: &RingConfig) -> f64 {
    (mode * mode) as f64 * config.kinetic_scale()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn ring_energy_examples() {
        let defaults = RingConfig::default();
        assert_eq!(ring_energy(1, &defaults), 1.0);
        assert_eq!(ring_energy(0, &defaults), 0.0);
        // 1/R^2 scaling: E_3 on a radius-2 ring is 9/4.
        let scaled = RingConfig::with_radius(2.0).unwrap();
        assert_eq!(ring_energy(3, &scaled), 2.25);
    }

    #[test]
    fn evaluate_examples() {
        let phi = RingState::sine(1);
        assert_eq!(phi.evaluate(0.0), 0.0);
        assert_abs_diff_eq!(phi.evaluate(FRAC_PI_2), unit_prefactor(), epsilon = 1e-15);

        let psi = RingState::shifted_sine(1, std::f64::consts::FRAC_PI_4);
        assert_eq!(psi.evaluate(std::f64::consts::FRAC_PI_4), 0.0);
    }

    #[test]
    fn norm_examples() {
        assert_abs_diff_eq!(RingState::sine(1).norm(), 1.0, epsilon = 1e-15);
        assert_eq!(RingState::zero().norm(), 0.0);
        let combined = RingState::linear_combination(
            1.0,
            &RingState::sine(1),
            1.0,
            &RingState::cosine(1),
        );
        assert_abs_diff_eq!(combined.norm(), 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn rejects_invalid_terms() {
        assert_eq!(
            RingState::new(vec![RingTerm::new(0, 1.0, 0.0)], 1.0),
            Err(Error::InvalidMode)
        );
        assert_eq!(
            RingState::new(
                vec![RingTerm::new(2, 1.0, 0.0), RingTerm::new(2, 0.0, 1.0)],
                1.0
            ),
            Err(Error::DuplicateMode(2))
        );
    }

    #[test]
    fn shifted_sine_matches_direct_evaluation() {
        let alpha = 0.37;
        let psi = RingState::shifted_sine(1, alpha);
        for theta in [0.0, 0.4, 1.1, 3.0, 5.9] {
            assert_abs_diff_eq!(
                psi.evaluate(theta),
                (theta - alpha).sin() * unit_prefactor(),
                epsilon = 1e-15
            );
        }
    }
}
