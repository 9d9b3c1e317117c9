//! Instantaneous barrier insertions: point classification, re-expansion of a
//! ring state into the post-insertion well bases, and construction of
//! barrier-entangled extended states with locality bookkeeping.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RingConfig;
use crate::error::{Error, Result};
use crate::ring::{ring_energy, RingState};
use crate::well::{well_energy, ChamberExpansion, TwoChamberState, WellSpec};

/// Tolerance below which an amplitude counts as a node.
pub const DEFAULT_NODE_TOL: f64 = 1e-9;

/// How an insertion point relates to the state being cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    /// Zero amplitude at all times: every energy component vanishes there.
    FixedNode,
    /// Zero total amplitude now, but some component is nonzero, so the zero
    /// moves with time.
    TransitoryNode,
    NonNodal,
}

/// Classifies `theta0` for `state`.
///
/// A point is a fixed node exactly when each distinct-energy component
/// vanishes there; this matches the time-dependent definition without
/// sampling in time, because distinct modes evolve with distinct phases.
pub fn classify_point(state: &RingState, theta0: f64, tol: f64) -> PointClass {
    let every_component = state
        .terms()
        .iter()
        .all(|t| state.component_at(t.mode, theta0).abs() < tol);
    if every_component {
        PointClass::FixedNode
    } else if state.evaluate(theta0).abs() < tol {
        PointClass::TransitoryNode
    } else {
        PointClass::NonNodal
    }
}

/// `sin(d*L)/d`, continued through `d = 0` with the value `L`.
fn sine_over(d: f64, length: f64) -> f64 {
    if d == 0.0 {
        length
    } else {
        (d * length).sin() / d
    }
}

/// `(1 - cos(d*L))/d`, continued through `d = 0` with the value `0`,
/// evaluated as `2 sin^2(dL/2)/d` to avoid cancellation.
fn versine_over(d: f64, length: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        let s = (0.5 * d * length).sin();
        2.0 * s * s / d
    }
}

/// Orthonormal coefficients of `state` on the given well, by exact
/// product-to-sum antiderivatives of the trig overlaps.
fn chamber_coefficients(state: &RingState, well: &WellSpec, n_trunc: usize) -> Vec<Complex64> {
    let length = well.length();
    let left = well.left();
    let ortho = (2.0 / length).sqrt();

    // Each ring term re-expressed around the well's left edge:
    // u sin(m theta) + v cos(m theta) = s' sin(m x) + c' cos(m x), x = theta - left.
    let rotated: Vec<(f64, f64, f64)> = state
        .terms()
        .iter()
        .map(|t| {
            let ml = t.mode as f64 * left;
            (
                t.mode as f64,
                t.sin_coeff * ml.cos() - t.cos_coeff * ml.sin(),
                t.sin_coeff * ml.sin() + t.cos_coeff * ml.cos(),
            )
        })
        .collect();

    (1..=n_trunc)
        .map(|n| {
            let k = n as f64 * PI / length;
            let mut acc = 0.0;
            for &(m, s_rot, c_rot) in &rotated {
                let sine_part =
                    0.5 * (sine_over(k - m, length) - sine_over(k + m, length));
                let cosine_part =
                    0.5 * (versine_over(k + m, length) + versine_over(k - m, length));
                acc += s_rot * sine_part + c_rot * cosine_part;
            }
            Complex64::new(state.normalization() * ortho * acc, 0.0)
        })
        .collect()
}

/// Re-expands `state` in the single well `(theta0, theta0 + 2pi)` created by
/// one barrier at `theta0`.
///
/// Non-nodal insertion points are legal and produce slowly decaying tails;
/// a fixed-node insertion reproduces the state exactly with finite support.
pub fn insert_single(state: &RingState, theta0: f64, n_trunc: usize) -> Result<ChamberExpansion> {
    let well = WellSpec::single_barrier(theta0)?;
    let expansion = ChamberExpansion::new(well, chamber_coefficients(state, &well, n_trunc));
    debug_assert!(
        expansion.sum_sq() <= state.norm().powi(2) * (1.0 + 1e-9) + 1e-12,
        "coefficient mass exceeds the source norm"
    );
    Ok(expansion)
}

/// Re-expands `state` in the two chambers `(0, alpha)` and `(alpha, 2pi)`
/// created by simultaneous barriers at `0` and `alpha`.
pub fn insert_double(state: &RingState, alpha: f64, n_trunc: usize) -> Result<TwoChamberState> {
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let left_well = WellSpec::left_chamber(alpha)?;
    let right_well = WellSpec::right_chamber(alpha)?;
    let left = ChamberExpansion::new(left_well, chamber_coefficients(state, &left_well, n_trunc));
    let right =
        ChamberExpansion::new(right_well, chamber_coefficients(state, &right_well, n_trunc));
    let two = TwoChamberState::from_parts(left, right)?;
    debug_assert!(
        two.sum_sq() <= state.norm().powi(2) * (1.0 + 1e-9) + 1e-12,
        "coefficient mass exceeds the source norm"
    );
    Ok(two)
}

/// How the particle entangles with the barriers during the insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntanglementMode {
    /// Each post-insertion eigenstate pair is individually entangled with
    /// the non-nodal barrier (the favoured bookkeeping).
    PerEigenstate,
    /// Each chamber's wave function as a whole is entangled with the
    /// non-nodal barrier.
    PerChamber,
}

/// A barrier factor of the extended state: where it sits and its signed
/// energy ledger entry (zero for a nodal insertion; the negation of the
/// particle's energy change otherwise, so each term conserves exactly).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierLabel {
    pub location: f64,
    pub energy_tag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChamberSide {
    Left,
    Right,
}

/// The particle factor of one extended-state term.
#[derive(Debug, Clone, PartialEq)]
pub enum ParticleComponent {
    /// One mode from each chamber, normalized within the term.
    ModePair { left_mode: usize, right_mode: usize },
    /// A whole chamber expansion (per-chamber entanglement).
    Chamber(ChamberSide),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedTerm {
    pub weight: Complex64,
    pub particle: ParticleComponent,
    /// Mean particle energy of this term minus the pre-insertion energy.
    pub particle_energy_change: f64,
    pub origin_barrier: BarrierLabel,
    pub offset_barrier: BarrierLabel,
}

impl ExtendedTerm {
    /// Particle change plus both barrier tags; zero in every term.
    pub fn conservation_residual(&self) -> f64 {
        self.particle_energy_change + self.origin_barrier.energy_tag + self.offset_barrier.energy_tag
    }
}

/// The barrier-entangled state directly after a double insertion.
///
/// Weights are kept in raw truncated form; the defect `|1 - sum|w|^2|` is
/// reported instead of silently renormalizing, so truncation error stays
/// visible to diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedState {
    terms: Vec<ExtendedTerm>,
    alpha: f64,
    mode: EntanglementMode,
    pre_energy: f64,
    weight_defect: f64,
}

impl ExtendedState {
    pub fn terms(&self) -> &[ExtendedTerm] {
        &self.terms
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mode(&self) -> EntanglementMode {
        self.mode
    }

    pub fn pre_energy(&self) -> f64 {
        self.pre_energy
    }

    /// `|1 - sum |weight|^2|` of the raw truncated weights.
    pub fn weight_defect(&self) -> f64 {
        self.weight_defect
    }
}

/// Probability mass of a unit-norm single-eigenstate `state` on `(a, b)`,
/// in closed form: the term `u sin(k theta) + v cos(k theta)` is
/// `R sin(k theta + delta)` and `sin^2` has an elementary antiderivative.
fn chamber_mass(state: &RingState, a: f64, b: f64) -> f64 {
    let term = &state.terms()[0];
    let k = term.mode as f64;
    let amp_sq = state.normalization() * state.normalization()
        * (term.sin_coeff * term.sin_coeff + term.cos_coeff * term.cos_coeff);
    let delta = term.cos_coeff.atan2(term.sin_coeff);
    let anti = |theta: f64| 0.5 * theta - (2.0 * (k * theta + delta)).sin() / (4.0 * k);
    amp_sq * (anti(b) - anti(a))
}

/// Builds the extended state for a single-eigenstate source with a fixed
/// node at `0` or at `alpha`.
///
/// Locality pins the energy tag of a nodal barrier to zero; the non-nodal
/// barrier carries the complementary entry for each term. When both points
/// are fixed nodes the insertion is exactly energy-free and every entry is
/// zero.
pub fn build_extended_after(
    state: &RingState,
    alpha: f64,
    n_trunc: usize,
    mode: EntanglementMode,
    config: &RingConfig,
) -> Result<ExtendedState> {
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if state.terms().len() != 1 {
        return Err(Error::NotAnEigenstate);
    }
    let norm = state.norm();
    if norm == 0.0 {
        return Err(Error::NotAnEigenstate);
    }
    let normalized = RingState::new(state.terms().to_vec(), state.normalization() / norm)
        .expect("terms already validated");

    let origin_nodal = classify_point(&normalized, 0.0, DEFAULT_NODE_TOL) == PointClass::FixedNode;
    let offset_nodal =
        classify_point(&normalized, alpha, DEFAULT_NODE_TOL) == PointClass::FixedNode;
    if !origin_nodal && !offset_nodal {
        return Err(Error::NoFixedNode);
    }
    let both_nodal = origin_nodal && offset_nodal;

    let two = insert_double(&normalized, alpha, n_trunc)?;
    let pre_energy = ring_energy(normalized.terms()[0].mode, config);
    let left_energies: Vec<f64> = (1..=n_trunc)
        .map(|n| well_energy(n, two.left().well(), config))
        .collect();
    let right_energies: Vec<f64> = (1..=n_trunc)
        .map(|m| well_energy(m, two.right().well(), config))
        .collect();

    let labels = |change: f64| {
        let origin = BarrierLabel {
            location: 0.0,
            energy_tag: if origin_nodal { 0.0 } else { -change },
        };
        let offset = BarrierLabel {
            location: alpha,
            energy_tag: if offset_nodal { 0.0 } else { -change },
        };
        (origin, offset)
    };

    let mut terms = Vec::new();
    match mode {
        EntanglementMode::PerEigenstate => {
            let mass_left = chamber_mass(&normalized, 0.0, alpha);
            let mass_right = chamber_mass(&normalized, alpha, TAU);
            let denom = (mass_left * mass_right).sqrt();
            for (n_idx, cl) in two.left().coeffs().iter().enumerate() {
                for (m_idx, cr) in two.right().coeffs().iter().enumerate() {
                    let weight = cl * cr / denom;
                    if weight == Complex64::ZERO {
                        continue;
                    }
                    let wl = cl.norm_sqr();
                    let wr = cr.norm_sqr();
                    let post =
                        (wl * left_energies[n_idx] + wr * right_energies[m_idx]) / (wl + wr);
                    let change = if both_nodal { 0.0 } else { post - pre_energy };
                    let (origin_barrier, offset_barrier) = labels(change);
                    terms.push(ExtendedTerm {
                        weight,
                        particle: ParticleComponent::ModePair {
                            left_mode: n_idx + 1,
                            right_mode: m_idx + 1,
                        },
                        particle_energy_change: change,
                        origin_barrier,
                        offset_barrier,
                    });
                }
            }
        }
        EntanglementMode::PerChamber => {
            for (side, chamber, energies) in [
                (ChamberSide::Left, two.left(), &left_energies),
                (ChamberSide::Right, two.right(), &right_energies),
            ] {
                let mass = chamber.sum_sq();
                if mass == 0.0 {
                    continue;
                }
                let mean: f64 = chamber
                    .coeffs()
                    .iter()
                    .zip(energies)
                    .map(|(c, e)| c.norm_sqr() * e)
                    .sum::<f64>()
                    / mass;
                let change = if both_nodal { 0.0 } else { mean - pre_energy };
                let (origin_barrier, offset_barrier) = labels(change);
                terms.push(ExtendedTerm {
                    weight: Complex64::new(mass.sqrt(), 0.0),
                    particle: ParticleComponent::Chamber(side),
                    particle_energy_change: change,
                    origin_barrier,
                    offset_barrier,
                });
            }
        }
    }

    let total: f64 = terms.iter().map(|t| t.weight.norm_sqr()).sum();
    Ok(ExtendedState {
        terms,
        alpha,
        mode,
        pre_energy,
        weight_defect: (1.0 - total).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::{closed_form_coeff, CoeffConvention, CoeffFamily};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn classifies_the_named_points() {
        let phi = RingState::sine(1);
        assert_eq!(classify_point(&phi, 0.0, DEFAULT_NODE_TOL), PointClass::FixedNode);
        assert_eq!(
            classify_point(&phi, FRAC_PI_4, DEFAULT_NODE_TOL),
            PointClass::NonNodal
        );
    }

    #[test]
    fn transitory_node_moves_with_time() {
        // (sin t + sin 2t)/sqrt(2 pi) vanishes at 2pi/3 where cos = -1/2,
        // but both components are nonzero there.
        let state = RingState::new(
            vec![
                crate::ring::RingTerm::new(1, 1.0, 0.0),
                crate::ring::RingTerm::new(2, 1.0, 0.0),
            ],
            1.0 / (TAU).sqrt(),
        )
        .unwrap();
        let theta0 = 2.0 * PI / 3.0;
        assert!(state.evaluate(theta0).abs() < 1e-12);
        assert_eq!(
            classify_point(&state, theta0, DEFAULT_NODE_TOL),
            PointClass::TransitoryNode
        );

        // Time-sampled oracle: the total amplitude returns away from zero.
        let amp1 = state.component_at(1, theta0);
        let amp2 = state.component_at(2, theta0);
        let max_over_time = (0..200)
            .map(|i| {
                let t = i as f64 * 0.05;
                let c = Complex64::from_polar(1.0, -t) * amp1
                    + Complex64::from_polar(1.0, -4.0 * t) * amp2;
                c.norm()
            })
            .fold(0.0f64, f64::max);
        assert!(max_over_time > 0.1, "stayed near zero: {max_over_time}");
    }

    #[test]
    fn nodal_single_insertion_is_a_unit_coefficient() {
        let expansion = insert_single(&RingState::sine(1), 0.0, 10).unwrap();
        for (i, c) in expansion.coeffs().iter().enumerate() {
            if i + 1 == 2 {
                assert_abs_diff_eq!(c.re, 1.0, epsilon = 1e-13);
            } else {
                assert!(c.norm() < 1e-13, "mode {} leaked {}", i + 1, c.norm());
            }
        }

        // Rotational image: the same identity at the shifted node.
        let shifted = insert_single(&RingState::shifted_sine(1, FRAC_PI_4), FRAC_PI_4, 10).unwrap();
        for (i, c) in shifted.coeffs().iter().enumerate() {
            if i + 1 == 2 {
                assert_abs_diff_eq!(c.re, 1.0, epsilon = 1e-12);
            } else {
                assert!(c.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cosine_single_insertion_matches_product_to_sum_oracle() {
        // Exact antiderivative: orthonormal coefficient 4n/(pi(n^2-4)) for odd
        // n, zero for even n.
        let expansion = insert_single(&RingState::cosine(1), 0.0, 5).unwrap();
        for (i, c) in expansion.coeffs().iter().enumerate() {
            let n = i + 1;
            if n % 2 == 1 {
                let nf = n as f64;
                let expected = 4.0 * nf / (PI * (nf * nf - 4.0));
                assert_abs_diff_eq!(c.re, expected, epsilon = 1e-13);
            } else {
                assert!(c.norm() < 1e-13, "even mode {n} leaked");
            }
        }
    }

    #[test]
    fn double_insertion_matches_closed_forms() {
        let two = insert_double(&RingState::sine(1), FRAC_PI_4, 50).unwrap();
        for n in 1..=50 {
            let expected =
                closed_form_coeff(CoeffFamily::SineLeft, n, FRAC_PI_4, CoeffConvention::Orthonormal)
                    .unwrap();
            assert_abs_diff_eq!(two.left().coeff(n).re, expected, epsilon = 1e-12);
        }

        let two_shifted = insert_double(&RingState::shifted_sine(1, FRAC_PI_4), FRAC_PI_4, 50).unwrap();
        for m in 1..=50 {
            let expected = closed_form_coeff(
                CoeffFamily::ShiftedSineRight,
                m,
                FRAC_PI_4,
                CoeffConvention::Orthonormal,
            )
            .unwrap();
            assert_abs_diff_eq!(two_shifted.right().coeff(m).re, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_state_yields_zero_chambers() {
        let two = insert_double(&RingState::zero(), FRAC_PI_4, 10).unwrap();
        assert_eq!(two.sum_sq(), 0.0);
        assert!(two.left().coeffs().iter().all(|c| *c == Complex64::ZERO));
    }

    #[test]
    fn double_insertion_rejects_bad_alpha() {
        assert_eq!(
            insert_double(&RingState::sine(1), 0.0, 4),
            Err(Error::AlphaOutOfRange(0.0))
        );
        assert_eq!(
            insert_double(&RingState::sine(1), PI / 2.0, 4),
            Err(Error::AlphaOutOfRange(PI / 2.0))
        );
    }

    #[test]
    fn extended_state_tags_follow_the_nodal_pattern() {
        let config = RingConfig::default();
        let phi = build_extended_after(
            &RingState::sine(1),
            FRAC_PI_4,
            3,
            EntanglementMode::PerEigenstate,
            &config,
        )
        .unwrap();
        assert_eq!(phi.terms().len(), 9);
        for term in phi.terms() {
            assert_eq!(term.origin_barrier.energy_tag, 0.0);
            assert_eq!(term.offset_barrier.energy_tag, -term.particle_energy_change);
            assert_eq!(term.conservation_residual(), 0.0);
        }

        let psi = build_extended_after(
            &RingState::shifted_sine(1, FRAC_PI_4),
            FRAC_PI_4,
            3,
            EntanglementMode::PerEigenstate,
            &config,
        )
        .unwrap();
        for term in psi.terms() {
            assert_eq!(term.offset_barrier.energy_tag, 0.0);
            assert_eq!(term.origin_barrier.energy_tag, -term.particle_energy_change);
        }
    }

    #[test]
    fn per_chamber_mode_has_one_term_per_chamber() {
        let config = RingConfig::default();
        let state = build_extended_after(
            &RingState::sine(1),
            FRAC_PI_4,
            2,
            EntanglementMode::PerChamber,
            &config,
        )
        .unwrap();
        assert_eq!(state.terms().len(), 2);
        assert!(matches!(
            state.terms()[0].particle,
            ParticleComponent::Chamber(ChamberSide::Left)
        ));
    }

    #[test]
    fn extended_state_rejects_unsupported_sources() {
        let config = RingConfig::default();
        // cos has no fixed node anywhere.
        assert_eq!(
            build_extended_after(
                &RingState::cosine(1),
                FRAC_PI_4,
                3,
                EntanglementMode::PerEigenstate,
                &config,
            ),
            Err(Error::NoFixedNode)
        );
        let two_term = RingState::linear_combination(
            1.0,
            &RingState::sine(1),
            1.0,
            &RingState::sine(2),
        );
        assert_eq!(
            build_extended_after(
                &two_term,
                FRAC_PI_4,
                3,
                EntanglementMode::PerEigenstate,
                &config,
            ),
            Err(Error::NotAnEigenstate)
        );
    }

    #[test]
    fn doubly_nodal_insertion_is_energy_free() {
        // sin(4 theta) has fixed nodes at both 0 and pi/4.
        let config = RingConfig::default();
        let state = build_extended_after(
            &RingState::sine(4),
            FRAC_PI_4,
            8,
            EntanglementMode::PerEigenstate,
            &config,
        )
        .unwrap();
        for term in state.terms() {
            assert_eq!(term.particle_energy_change, 0.0);
            assert_eq!(term.origin_barrier.energy_tag, 0.0);
            assert_eq!(term.offset_barrier.energy_tag, 0.0);
        }
        assert!(state.weight_defect() < 1e-9);
    }
}
