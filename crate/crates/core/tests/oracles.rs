//! Cross-checks of derived quantities against independent oracles: every
//! value here is computed twice, once through the library path under test and
//! once through quadrature or an exact term-by-term formula that shares no
//! code with it.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use approx::assert_abs_diff_eq;

use ringwell::energy::{delta_energy, Candidate, EnergyConvention};
use ringwell::insertion::{insert_double, insert_single};
use ringwell::overlap::{parseval_defect, quadrature_overlap, CoeffConvention};
use ringwell::quad::integrate;
use ringwell::ring::RingState;
use ringwell::well::{well_energy, WellSpec};
use ringwell::{QuadratureSettings, RingConfig};

fn settings() -> QuadratureSettings {
    QuadratureSettings::default()
}

/// Kinetic-energy quadrature for one well mode:
/// `E = (hbar^2 / 2 M R^2) * integral of (du/d theta)^2`.
fn well_energy_oracle(n: usize, well: &WellSpec, config: &RingConfig) -> f64 {
    let length = well.length();
    let k = n as f64 * PI / length;
    let norm_factor = 2.0 / length;
    let integral = integrate(
        |theta| {
            let slope = k * (k * (theta - well.left())).cos();
            norm_factor * slope * slope
        },
        well.left(),
        well.right(),
        &settings(),
        "well kinetic energy",
    )
    .unwrap();
    config.kinetic_scale() * integral
}

#[test]
fn well_energies_match_the_kinetic_quadrature() {
    let config = RingConfig::default();
    let quarter = WellSpec::new(0.0, FRAC_PI_4).unwrap();
    let full = WellSpec::single_barrier(0.0).unwrap();
    for (n, well, expected) in [
        (1, &quarter, 16.0),
        (1, &full, 0.25),
        (2, &full, 1.0),
        (3, &quarter, 144.0),
    ] {
        let library = well_energy(n, well, &config);
        let oracle = well_energy_oracle(n, well, &config);
        assert_eq!(library, expected);
        assert_abs_diff_eq!(library, oracle, epsilon = 1e-9);
    }
}

#[test]
fn norm_matches_the_quadrature_of_the_square() {
    let state = RingState::linear_combination(
        1.0,
        &RingState::sine(1),
        1.0,
        &RingState::cosine(1),
    );
    let norm_sq_oracle = integrate(
        |theta| state.evaluate(theta).powi(2),
        0.0,
        TAU,
        &settings(),
        "squared norm",
    )
    .unwrap();
    assert_abs_diff_eq!(state.norm(), norm_sq_oracle.sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(state.norm(), 2f64.sqrt(), epsilon = 1e-14);
}

#[test]
fn double_insertion_coefficients_match_quadrature_directly() {
    let phi = RingState::sine(1);
    let two = insert_double(&phi, FRAC_PI_4, 20).unwrap();
    for n in 1..=20 {
        let oracle = quadrature_overlap(
            &phi,
            two.left().well(),
            n,
            CoeffConvention::Orthonormal,
            &settings(),
        )
        .unwrap();
        assert_abs_diff_eq!(two.left().coeff(n).re, oracle, epsilon = 1e-10);
    }

    let psi = RingState::shifted_sine(1, FRAC_PI_4);
    let two_psi = insert_double(&psi, FRAC_PI_4, 20).unwrap();
    for m in 1..=20 {
        let oracle = quadrature_overlap(
            &psi,
            two_psi.right().well(),
            m,
            CoeffConvention::Orthonormal,
            &settings(),
        )
        .unwrap();
        assert_abs_diff_eq!(two_psi.right().coeff(m).re, oracle, epsilon = 1e-10);
    }
}

#[test]
fn transfer_energy_matches_an_independently_assembled_value() {
    // Assemble delta E(1, 2) at pi/4 from quadrature coefficients and well
    // energies only, then compare with the closed-form path.
    let config = RingConfig::default();
    let alpha = FRAC_PI_4;
    let phi = RingState::sine(1);
    let left_well = WellSpec::left_chamber(alpha).unwrap();
    let right_well = WellSpec::right_chamber(alpha).unwrap();
    let c_left =
        quadrature_overlap(&phi, &left_well, 1, CoeffConvention::Orthonormal, &settings()).unwrap();
    let c_right =
        quadrature_overlap(&phi, &right_well, 2, CoeffConvention::Orthonormal, &settings()).unwrap();
    let w = c_left * c_left / (c_left * c_left + c_right * c_right);
    let assembled = w * well_energy(1, &left_well, &config)
        + (1.0 - w) * well_energy(2, &right_well, &config)
        - 1.0;
    let library = delta_energy(
        1,
        2,
        Candidate::Sine,
        alpha,
        &config,
        EnergyConvention::Corrected,
    )
    .unwrap();
    assert_abs_diff_eq!(library, assembled, epsilon = 1e-9);
}

#[test]
fn transfer_energy_stays_finite_at_extreme_modes() {
    let config = RingConfig::default();
    for convention in [EnergyConvention::Corrected, EnergyConvention::Uncorrected] {
        let value = delta_energy(
            1_000_000,
            1_000_000,
            Candidate::Sine,
            FRAC_PI_4,
            &config,
            convention,
        )
        .unwrap();
        assert!(value.is_finite());
    }
}

#[test]
fn parseval_defect_examples() {
    // Fixed-node re-insertion is complete already at truncation 2.
    let phi = RingState::sine(1);
    for n_trunc in [2, 5, 50] {
        let expansion = insert_single(&phi, 0.0, n_trunc).unwrap();
        assert!(parseval_defect(&expansion, &phi) < 1e-12);
    }

    // The cosine insertion has a slowly decaying tail; the defect shrinks
    // with truncation and follows the tail estimate sum of (4/(pi n))^2 over
    // odd n > N, which is about 8/(pi^2 N).
    let cos_state = RingState::cosine(1);
    let coarse = parseval_defect(&insert_single(&cos_state, 0.0, 10).unwrap(), &cos_state);
    let fine = parseval_defect(&insert_single(&cos_state, 0.0, 100).unwrap(), &cos_state);
    assert!(fine > 0.0 && coarse > 0.0);
    assert!(fine < coarse);
    let tail_estimate = 8.0 / (PI * PI * 100.0);
    assert!(
        fine > 0.5 * tail_estimate && fine < 2.0 * tail_estimate,
        "defect {fine} vs tail estimate {tail_estimate}"
    );
}
