//! Energy bookkeeping: transfer energies for the double insertion, truncated
//! energy expectations, and the non-nodal divergence diagnostic.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RingConfig;
use crate::error::{Error, Result};
use crate::insertion::{classify_point, insert_single, PointClass, DEFAULT_NODE_TOL};
use crate::overlap::{closed_form_coeff, CoeffConvention, CoeffFamily};
use crate::ring::{ring_energy, RingState};
use crate::well::{well_energy, Chambered, WellSpec};

/// Which form of the transfer energy to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyConvention {
    /// Convex combination of the post-insertion chamber energies with
    /// orthonormal (probability) weights, minus the true pre-insertion
    /// energy. Identical for both candidate states because the chamber
    /// coefficient magnitudes coincide.
    Corrected,
    /// Verbatim transcription of the original printed form: unnormalized
    /// coefficient weights, a factor 2 on the left-chamber term for the
    /// sine candidate (absent for the shifted-sine candidate), and a
    /// constant offset equal to the ground-state energy of the
    /// full-circumference well instead of the pre-insertion energy.
    Uncorrected,
}

/// The two candidate states of the double-insertion analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Candidate {
    /// `sin(theta)/sqrt(pi)`: fixed node at the origin barrier.
    Sine,
    /// `sin(theta - alpha)/sqrt(pi)`: fixed node at the offset barrier.
    ShiftedSine,
}

impl Candidate {
    pub fn families(&self) -> (CoeffFamily, CoeffFamily) {
        match self {
            Candidate::Sine => (CoeffFamily::SineLeft, CoeffFamily::SineRight),
            Candidate::ShiftedSine => {
                (CoeffFamily::ShiftedSineLeft, CoeffFamily::ShiftedSineRight)
            }
        }
    }

    pub fn state(&self, alpha: f64) -> RingState {
        match self {
            Candidate::Sine => RingState::sine(1),
            Candidate::ShiftedSine => RingState::shifted_sine(1, alpha),
        }
    }
}

/// Transfer energy for the transition of `candidate` into the pair of
/// chamber modes `(n, m)` at separation `alpha`.
///
/// Returned as the signed particle energy change; the non-nodal barrier's
/// ledger entry is its negation.
pub fn delta_energy(
    n: usize,
    m: usize,
    candidate: Candidate,
    alpha: f64,
    config: &RingConfig,
    convention: EnergyConvention,
) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidMode);
    }
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let (left_family, right_family) = candidate.families();
    match convention {
        EnergyConvention::Corrected => {
            let cl = closed_form_coeff(left_family, n, alpha, CoeffConvention::Orthonormal)?;
            let cr = closed_form_coeff(right_family, m, alpha, CoeffConvention::Orthonormal)?;
            let wl = cl * cl;
            let wr = cr * cr;
            let weight = wl / (wl + wr);
            let left_energy = well_energy(n, &WellSpec::left_chamber(alpha)?, config);
            let right_energy = well_energy(m, &WellSpec::right_chamber(alpha)?, config);
            Ok(weight * left_energy + (1.0 - weight) * right_energy - ring_energy(1, config))
        }
        EnergyConvention::Uncorrected => {
            let cl = closed_form_coeff(left_family, n, alpha, CoeffConvention::Unnormalized)?;
            let cr = closed_form_coeff(right_family, m, alpha, CoeffConvention::Unnormalized)?;
            let wl = cl * cl;
            let wr = cr * cr;
            let weight = wl / (wl + wr);
            let nf = n as f64;
            let mf = m as f64;
            let left_factor = match candidate {
                Candidate::Sine => 2.0,
                Candidate::ShiftedSine => 1.0,
            };
            let beta = 2.0 * PI - alpha;
            let bracket = weight * left_factor * nf * nf / (alpha * alpha)
                + (1.0 - weight) * mf * mf / (beta * beta)
                - 1.0 / (4.0 * PI * PI);
            Ok(PI * PI * config.kinetic_scale() * bracket)
        }
    }
}

/// Energy expectation of a truncated expansion: the coefficient-weighted sum
/// of well energies, additive across chambers.
pub fn truncated_energy<E: Chambered>(expansion: &E, config: &RingConfig) -> f64 {
    expansion
        .chambers()
        .iter()
        .map(|chamber| {
            chamber
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c.norm_sqr() * well_energy(i + 1, chamber.well(), config))
                .sum::<f64>()
        })
        .sum()
}

/// Partial post-insertion energies of a single-barrier insertion at a list of
/// truncation orders. Rejects fixed-node insertion points, where the energy
/// is constant and the scan is meaningless; at non-nodal points the partial
/// sums grow without bound.
pub fn divergence_scan(
    state: &RingState,
    theta0: f64,
    truncations: &[usize],
    config: &RingConfig,
) -> Result<Vec<(usize, f64)>> {
    if classify_point(state, theta0, DEFAULT_NODE_TOL) == PointClass::FixedNode {
        return Err(Error::FixedNodeInput { theta0 });
    }
    let max_trunc = truncations.iter().copied().max().unwrap_or(0);
    let expansion = insert_single(state, theta0, max_trunc)?;
    let well = *expansion.well();
    let mut prefix = Vec::with_capacity(max_trunc + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for (i, c) in expansion.coeffs().iter().enumerate() {
        acc += c.norm_sqr() * well_energy(i + 1, &well, config);
        prefix.push(acc);
    }
    Ok(truncations.iter().map(|&n| (n, prefix[n])).collect())
}

/// Table of transfer energies over a mode grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub alpha: f64,
    pub candidate: Candidate,
    pub convention: EnergyConvention,
    pub pre_energy: f64,
    pub n_max: usize,
    pub m_max: usize,
    /// Row-major `(n, m)` entries, `n` and `m` starting at 1.
    pub table: Vec<f64>,
}

impl EnergyLedger {
    /// Computes the full table; rows are evaluated in parallel and assembled
    /// in index order, so the result is independent of thread count.
    pub fn build(
        candidate: Candidate,
        alpha: f64,
        n_max: usize,
        m_max: usize,
        config: &RingConfig,
        convention: EnergyConvention,
    ) -> Result<Self> {
        let rows: Vec<Vec<f64>> = (1..=n_max)
            .into_par_iter()
            .map(|n| {
                (1..=m_max)
                    .map(|m| delta_energy(n, m, candidate, alpha, config, convention))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(Self {
            alpha,
            candidate,
            convention,
            pre_energy: ring_energy(1, config),
            n_max,
            m_max,
            table: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.table[(n - 1) * self.m_max + (m - 1)]
    }

    pub fn min_abs(&self) -> f64 {
        self.table.iter().fold(f64::INFINITY, |a, b| a.min(b.abs()))
    }
}
