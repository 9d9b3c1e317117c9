//! Spectral toolkit for a quantum particle on a ring cut by one or two
//! instantaneous impenetrable barriers.
//!
//! The library covers the full pipeline: ring eigenstates and well geometry
//! ([`ring`], [`well`]), closed-form overlap coefficients with an independent
//! quadrature oracle ([`overlap`], [`quad`]), the insertion maps and
//! barrier-entangled extended states ([`insertion`]), transfer-energy
//! bookkeeping and divergence diagnostics ([`energy`]), post-insertion time
//! evolution ([`mod@evolve`]), and the numeric certification that locality and
//! linearity of the insertion map are incompatible ([`loclin`], with exact
//! arithmetic support in [`exact`]).

pub mod config;
pub mod energy;
mod error;
pub mod evolve;
pub mod exact;
pub mod insertion;
pub mod loclin;
pub mod overlap;
pub mod quad;
pub mod ring;
pub mod well;

pub use config::RingConfig;
pub use energy::{delta_energy, divergence_scan, truncated_energy, Candidate, EnergyConvention, EnergyLedger};
pub use error::{Error, Result};
pub use evolve::{evolve, evolve_two_chamber, sample_grid, sample_grid_two, TimeGrid};
pub use insertion::{
    build_extended_after, classify_point, insert_double, insert_single, BarrierLabel,
    EntanglementMode, ExtendedState, ExtendedTerm, PointClass, DEFAULT_NODE_TOL,
};
pub use loclin::{
    consistency_scan, default_alpha_grid, joint_residual, solve_barrier_weights,
    solve_barrier_weights_exact, BarrierWeightSolution, ConsistencyReport, Verdict,
};
pub use overlap::{closed_form_coeff, parseval_defect, quadrature_overlap, CoeffConvention, CoeffFamily};
pub use quad::QuadratureSettings;
pub use ring::{ring_energy, RingState, RingTerm};
pub use well::{well_energy, ChamberExpansion, Chambered, TwoChamberState, WellSpec};
