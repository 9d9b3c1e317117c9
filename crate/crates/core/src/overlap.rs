//! Closed-form overlap coefficients between ring states and well modes,
//! the independent quadrature oracle for them, and Parseval diagnostics.
//!
//! Two coefficient conventions coexist:
//!
//! * [`CoeffConvention::Orthonormal`]: coefficients against the orthonormal
//!   modes `sqrt(2/L) sin(n pi x / L)`, so squared coefficients are
//!   probabilities and Parseval sums approach 1.
//! * [`CoeffConvention::Unnormalized`]: the `(1/pi) * integral` overlap
//!   against the bare modes `sin(n pi x / L)`, paired with a `1/sqrt(pi)`
//!   expansion prefactor. The two conventions differ by `sqrt(2 pi / L)`
//!   per chamber; they only coincide up to that factor because the bare
//!   pairing is not mutually normalized on chambers shorter than the ring.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadratureSettings};
use crate::ring::RingState;
use crate::well::{Chambered, WellSpec};

/// Which normalization the coefficient is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffConvention {
    Orthonormal,
    Unnormalized,
}

/// The closed-form coefficient families for the candidate states.
///
/// Tags follow the conventional single letters: `a`/`A` expand
/// `sin(theta)/sqrt(pi)` on the left/right chamber of a double insertion,
/// `c`/`C` expand `sin(theta - alpha)/sqrt(pi)`, `b`/`B` expand
/// `cos(theta)/sqrt(pi)`, and `f` expands `sin(theta)/sqrt(pi)` on the single
/// full-circumference well with the barrier at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffFamily {
    SineLeft,
    SineRight,
    ShiftedSineLeft,
    ShiftedSineRight,
    CosineLeft,
    CosineRight,
    SineSingle,
}

impl CoeffFamily {
    pub const ALL: [CoeffFamily; 7] = [
        CoeffFamily::SineLeft,
        CoeffFamily::SineRight,
        CoeffFamily::ShiftedSineLeft,
        CoeffFamily::ShiftedSineRight,
        CoeffFamily::CosineLeft,
        CoeffFamily::CosineRight,
        CoeffFamily::SineSingle,
    ];

    /// The six two-chamber families (everything except `f`).
    pub const TWO_CHAMBER: [CoeffFamily; 6] = [
        CoeffFamily::SineLeft,
        CoeffFamily::SineRight,
        CoeffFamily::ShiftedSineLeft,
        CoeffFamily::ShiftedSineRight,
        CoeffFamily::CosineLeft,
        CoeffFamily::CosineRight,
    ];

    pub fn tag(&self) -> char {
        match self {
            CoeffFamily::SineLeft => 'a',
            CoeffFamily::SineRight => 'A',
            CoeffFamily::ShiftedSineLeft => 'c',
            CoeffFamily::ShiftedSineRight => 'C',
            CoeffFamily::CosineLeft => 'b',
            CoeffFamily::CosineRight => 'B',
            CoeffFamily::SineSingle => 'f',
        }
    }

    pub fn from_tag(tag: char) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.tag() == tag)
    }

    /// Whether the family lives on a chamber of the double insertion
    /// (and therefore needs `alpha`).
    pub fn needs_alpha(&self) -> bool {
        !matches!(self, CoeffFamily::SineSingle)
    }

    /// The well the family's modes belong to.
    pub fn well(&self, alpha: f64) -> Result<WellSpec> {
        match self {
            CoeffFamily::SineLeft | CoeffFamily::ShiftedSineLeft | CoeffFamily::CosineLeft => {
                WellSpec::left_chamber(alpha)
            }
            CoeffFamily::SineRight | CoeffFamily::ShiftedSineRight | CoeffFamily::CosineRight => {
                WellSpec::right_chamber(alpha)
            }
            CoeffFamily::SineSingle => WellSpec::single_barrier(0.0),
        }
    }

    /// The ring state the family expands.
    pub fn source_state(&self, alpha: f64) -> RingState {
        match self {
            CoeffFamily::SineLeft | CoeffFamily::SineRight | CoeffFamily::SineSingle => {
                RingState::sine(1)
            }
            CoeffFamily::ShiftedSineLeft | CoeffFamily::ShiftedSineRight => {
                RingState::shifted_sine(1, alpha)
            }
            CoeffFamily::CosineLeft | CoeffFamily::CosineRight => RingState::cosine(1),
        }
    }
}

impl std::fmt::Display for CoeffFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

fn parity(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < PI / 2.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// `alpha n sin(alpha) / (alpha^2 - pi^2 n^2)`, the shared core of the left-chamber
/// sine families; `a_n` and `c_n` differ from it only by the parity sign, which
/// keeps their magnitudes identical bit for bit.
fn narrow_sine_core(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    alpha * nf * alpha.sin() / (alpha * alpha - PI * PI * nf * nf)
}

/// `(2pi - alpha) n sin(alpha) / ((alpha - (n+2)pi)(alpha + (n-2)pi))`, the shared
/// core of the right-chamber sine families.
fn wide_sine_core(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    (TAU - alpha) * nf * alpha.sin() / ((alpha - (nf + 2.0) * PI) * (alpha + (nf - 2.0) * PI))
}

/// Evaluates the closed form of one coefficient family.
///
/// The unnormalized values transcribe the printed forms; orthonormal values
/// apply the per-chamber conversion factor. The `f` family has a removable
/// singularity at `n = 2`: the analytic limit of the printed form is `pi`,
/// while the orthonormal coefficient there is exactly `1`.
pub fn closed_form_coeff(
    family: CoeffFamily,
    n: usize,
    alpha: f64,
    convention: CoeffConvention,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidMode);
    }
    if family.needs_alpha() {
        check_alpha(alpha)?;
    }
    let nf = n as f64;
    let unnormalized = match family {
        CoeffFamily::SineLeft => parity(n) * narrow_sine_core(n, alpha),
        CoeffFamily::ShiftedSineLeft => narrow_sine_core(n, alpha),
        CoeffFamily::SineRight => -wide_sine_core(n, alpha),
        CoeffFamily::ShiftedSineRight => -parity(n) * wide_sine_core(n, alpha),
        CoeffFamily::CosineLeft => {
            alpha * nf * (parity(n) * alpha.cos() - 1.0) / (alpha * alpha - PI * PI * nf * nf)
        }
        CoeffFamily::CosineRight => {
            (TAU - alpha) * nf * (alpha.cos() - parity(n))
                / ((alpha + PI * (nf - 2.0)) * (PI * (nf + 2.0) - alpha))
        }
        CoeffFamily::SineSingle => {
            if n == 2 {
                PI
            } else {
                4.0 * (PI * nf).sin() / (nf * nf - 4.0)
            }
        }
    };
    Ok(match convention {
        CoeffConvention::Unnormalized => unnormalized,
        CoeffConvention::Orthonormal => match family {
            CoeffFamily::SineLeft | CoeffFamily::ShiftedSineLeft | CoeffFamily::CosineLeft => {
                unnormalized * (TAU / alpha).sqrt()
            }
            CoeffFamily::SineRight | CoeffFamily::ShiftedSineRight | CoeffFamily::CosineRight => {
                unnormalized * (TAU / (TAU - alpha)).sqrt()
            }
            CoeffFamily::SineSingle => {
                if n == 2 {
                    1.0
                } else {
                    unnormalized / PI
                }
            }
        },
    })
}

/// Independent quadrature oracle for one overlap coefficient.
///
/// Computes either the orthonormal coefficient
/// `integral of state * sqrt(2/L) sin(n pi x / L)` or the unnormalized pairing
/// `(1/pi) * integral of (state / prefactor) * sin(n pi x / L)` over the well,
/// by adaptive quadrature only; no closed form is consulted.
pub fn quadrature_overlap(
    state: &RingState,
    well: &WellSpec,
    n: usize,
    convention: CoeffConvention,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidMode);
    }
    let (a, b) = (well.left(), well.right());
    let length = well.length();
    let context = format!(
        "overlap of mode {n} on well [{a:.6}, {b:.6}] ({convention:?})"
    );
    let raw = quad::integrate(
        |theta| state.evaluate(theta) * (n as f64 * PI * (theta - a) / length).sin(),
        a,
        b,
        settings,
        &context,
    )?;
    Ok(match convention {
        CoeffConvention::Orthonormal => raw * (2.0 / length).sqrt(),
        CoeffConvention::Unnormalized => raw / (PI * state.normalization()),
    })
}

/// Completeness defect `|norm(source)^2 - sum of squared orthonormal
/// coefficients|` of a truncated expansion. Equals `|1 - sum c^2|` for the
/// unit-norm sources used throughout; nonnegative and nonincreasing in the
/// truncation order.
pub fn parseval_defect<E: Chambered>(expansion: &E, source: &RingState) -> f64 {
    let norm = source.norm();
    (norm * norm - expansion.total_sum_sq()).abs()
}
