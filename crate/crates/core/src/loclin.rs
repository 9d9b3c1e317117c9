//! Numeric certification that locality (an insertion at a fixed node is
//! energy-free) and linearity (insertions act linearly on superpositions)
//! cannot both hold for the double insertion.
//!
//! Writing the linear decomposition of the shifted-sine candidate against its
//! direct insertion forces, per mode pair `(n, m)`, two weights: `R0` for the
//! branch whose transfer energy sits entirely at the origin barrier, and
//! `Ra` for the branch with the transfer entirely at the offset barrier.
//! Matching the four groups of product terms (left/right chamber, origin/
//! offset branch) determines each weight twice; the four determinations chain
//! into one scalar condition `sin(alpha) = (-1)^(n+m)`, which fails on the
//! whole open interval. The checker evaluates each determination, the two
//! intermediate consistency residuals, and the joint residual, in floating
//! point everywhere and in exact arithmetic at the angles where sine and
//! cosine are algebraically known.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RingConfig;
use crate::energy::{delta_energy, Candidate, EnergyConvention};
use crate::error::{Error, Result};
use crate::exact::{Algebraic, ExactAngle};

/// Transfer energies below this are treated as vanishing and the angle is
/// excluded from scan grids, which are restricted to angles with exclusively
/// nonzero transfers.
pub const TRANSFER_EXCLUSION_TOL: f64 = 1e-9;

/// Which matching condition produced a weight determination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightBranch {
    /// Origin-branch weight matched on the left chamber.
    OriginFromLeft,
    /// Origin-branch weight matched on the right chamber.
    OriginFromRight,
    /// Offset-branch weight matched on the left chamber.
    OffsetFromLeft,
    /// Offset-branch weight matched on the right chamber.
    OffsetFromRight,
}

/// All weight determinations and consistency residuals for one `(n, m, alpha)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierWeightSolution {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub origin_from_left: f64,
    pub origin_from_right: f64,
    pub offset_from_left: f64,
    pub offset_from_right: f64,
    /// `R0^2 + Ra^2 - 1` using the left-chamber determinations (signed).
    pub norm_defect: f64,
    /// Residual of the condition obtained by eliminating `R0` between its
    /// two determinations.
    pub origin_residual: f64,
    /// Residual of the condition obtained by eliminating `Ra`.
    pub offset_residual: f64,
    /// Residual of the final condition `sin(alpha) = (-1)^(n+m)`.
    pub joint_residual: f64,
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// Residual of the joint condition `sin(alpha) = (-1)^(n+m)`; strictly
/// positive on `(0, pi/2)` since `sin` never reaches `+-1` there. Depends on
/// `(n, m)` only through the parity of `n + m`.
pub fn joint_residual(n: usize, m: usize, alpha: f64) -> f64 {
    (alpha.sin() - sign(n + m)).abs()
}

/// Solves the four weight determinations for one cell and evaluates the
/// consistency residuals.
pub fn solve_barrier_weights(n: usize, m: usize, alpha: f64) -> Result<BarrierWeightSolution> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidMode);
    }
    check_alpha(alpha)?;
    let c = alpha.cos();
    let s = alpha.sin();
    let sn = sign(n);
    let sm = sign(m);

    let denominators = [
        (WeightBranch::OriginFromLeft, 1.0 - sn * c),
        (WeightBranch::OriginFromRight, sm - c),
        (WeightBranch::OffsetFromLeft, sn * c - 1.0),
        (WeightBranch::OffsetFromRight, c - sm),
    ];
    for (branch, d) in denominators {
        if d == 0.0 {
            return Err(Error::DenominatorZero { branch, alpha });
        }
    }

    let origin_from_left = 1.0 / (1.0 - sn * c);
    let origin_from_right = sm * s / (sm - c);
    let offset_from_left = sn * c / (sn * c - 1.0);
    let offset_from_right = c / (c - sm);

    Ok(BarrierWeightSolution {
        n,
        m,
        alpha,
        origin_from_left,
        origin_from_right,
        offset_from_left,
        offset_from_right,
        norm_defect: origin_from_left * origin_from_left + offset_from_left * offset_from_left
            - 1.0,
        origin_residual: ((sm - c) - sm * s * (1.0 - sn * c)).abs(),
        offset_residual: (sn * (c - sm) - (sn * c - 1.0)).abs(),
        joint_residual: joint_residual(n, m, alpha),
    })
}

impl BarrierWeightSolution {
    /// Recomputes the origin-branch residual from the two weight
    /// determinations instead of from the direct formula:
    /// `|d_left * d_right * (R0_left - R0_right)|`.
    pub fn origin_residual_via_branches(&self) -> f64 {
        let c = self.alpha.cos();
        let sn = sign(self.n);
        let sm = sign(self.m);
        let d_left = 1.0 - sn * c;
        let d_right = sm - c;
        (d_left * d_right * (self.origin_from_left - self.origin_from_right)).abs()
    }

    /// Recomputes the offset-branch residual from the two weight
    /// determinations: `|(Ra_left - Ra_right) * d_left * d_right / cos(alpha)|`.
    pub fn offset_residual_via_branches(&self) -> f64 {
        let c = self.alpha.cos();
        let sn = sign(self.n);
        let sm = sign(self.m);
        let d_left = sn * c - 1.0;
        let d_right = c - sm;
        ((self.offset_from_left - self.offset_from_right) * d_left * d_right / c).abs()
    }

    /// Whether the four determinations plus the two-branch normalization
    /// `R0^2 + Ra^2 = 1` are simultaneously satisfiable within `tol`.
    pub fn jointly_satisfiable(&self, tol: f64) -> bool {
        (self.origin_from_left - self.origin_from_right).abs() <= tol
            && (self.offset_from_left - self.offset_from_right).abs() <= tol
            && self.norm_defect.abs() <= tol
    }
}

/// The same cell solved in exact arithmetic at an algebraically known angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactWeightSolution {
    pub n: usize,
    pub m: usize,
    pub angle: ExactAngle,
    pub origin_from_left: Algebraic,
    pub origin_from_right: Algebraic,
    pub offset_from_left: Algebraic,
    pub offset_from_right: Algebraic,
    pub norm_defect: Algebraic,
    pub origin_residual: Algebraic,
    pub offset_residual: Algebraic,
    pub joint_residual: Algebraic,
}

/// Exact-arithmetic counterpart of [`solve_barrier_weights`]; rules out any
/// possibility that the certified residuals are floating-point artifacts.
pub fn solve_barrier_weights_exact(n: usize, m: usize, angle: ExactAngle) -> ExactWeightSolution {
    let one = Algebraic::one();
    let c = angle.cos();
    let s = angle.sin();
    let sn = Algebraic::from_integer(if n.is_multiple_of(2) { 1 } else { -1 });
    let sm = Algebraic::from_integer(if m.is_multiple_of(2) { 1 } else { -1 });

    let origin_from_left = one / (one - sn * c);
    let origin_from_right = sm * s / (sm - c);
    let offset_from_left = sn * c / (sn * c - one);
    let offset_from_right = c / (c - sm);

    ExactWeightSolution {
        n,
        m,
        angle,
        origin_from_left,
        origin_from_right,
        offset_from_left,
        offset_from_right,
        norm_defect: origin_from_left * origin_from_left
            + offset_from_left * offset_from_left
            - one,
        origin_residual: ((sm - c) - sm * s * (one - sn * c)).abs(),
        offset_residual: (sn * (c - sm) - (sn * c - one)).abs(),
        joint_residual: (s - sn * sm).abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Incompatible,
    Inconclusive,
}

/// Outcome of a grid scan of the incompatibility argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// Angles actually scanned (after excluding vanishing-transfer angles).
    pub alpha_grid: Vec<f64>,
    /// Angles dropped because some transfer energy vanished there.
    pub excluded_alphas: Vec<f64>,
    pub n_max: usize,
    pub m_max: usize,
    pub threshold: f64,
    pub min_joint_residual: f64,
    /// The cell realizing the minimum joint residual (ties broken
    /// lexicographically by `(n, m, alpha index)`).
    pub worst_cell: (usize, usize, f64),
    /// Number of cells whose four determinations plus normalization were
    /// simultaneously satisfiable within the threshold (zero when the
    /// verdict is `Incompatible`).
    pub jointly_satisfiable_cells: usize,
    pub verdict: Verdict,
}

/// Evenly spaced angles on `[0.05, pi/2 - 0.05]`, endpoints included.
pub fn default_alpha_grid(count: usize) -> Vec<f64> {
    let lo = 0.05;
    let hi = FRAC_PI_2 - 0.05;
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Scans every `(n, m, alpha)` cell, reporting the minimum joint residual,
/// the worst cell, and the verdict: `Incompatible` when every cell keeps a
/// joint residual above the threshold and no cell admits a simultaneous
/// solution of the weight determinations with unit normalization.
pub fn consistency_scan(
    alpha_grid: &[f64],
    n_max: usize,
    m_max: usize,
    threshold: f64,
    config: &RingConfig,
) -> Result<ConsistencyReport> {
    if alpha_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::NonPositive {
            name: "threshold",
            value: threshold,
        });
    }
    for &alpha in alpha_grid {
        check_alpha(alpha)?;
    }

    // Restrict to angles with exclusively nonzero transfer energies.
    let min_transfer = |alpha: f64| -> Result<f64> {
        let mut min = f64::INFINITY;
        for n in 1..=n_max {
            for m in 1..=m_max {
                let d = delta_energy(
                    n,
                    m,
                    Candidate::Sine,
                    alpha,
                    config,
                    EnergyConvention::Corrected,
                )?;
                min = min.min(d.abs());
            }
        }
        Ok(min)
    };
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for &alpha in alpha_grid {
        if min_transfer(alpha)? < TRANSFER_EXCLUSION_TOL {
            excluded.push(alpha);
        } else {
            kept.push(alpha);
        }
    }
    if kept.is_empty() {
        return Err(Error::EmptyGrid);
    }

    struct CellSummary {
        min_residual: f64,
        min_cell: (usize, usize, usize),
        satisfiable: usize,
    }

    let per_alpha: Vec<CellSummary> = kept
        .par_iter()
        .enumerate()
        .map(|(alpha_idx, &alpha)| {
            let mut summary = CellSummary {
                min_residual: f64::INFINITY,
                min_cell: (usize::MAX, usize::MAX, alpha_idx),
                satisfiable: 0,
            };
            for n in 1..=n_max {
                for m in 1..=m_max {
                    let cell = solve_barrier_weights(n, m, alpha)?;
                    if cell.jointly_satisfiable(threshold) {
                        summary.satisfiable += 1;
                    }
                    let key = (n, m, alpha_idx);
                    if cell.joint_residual < summary.min_residual
                        || (cell.joint_residual == summary.min_residual && key < summary.min_cell)
                    {
                        summary.min_residual = cell.joint_residual;
                        summary.min_cell = key;
                    }
                }
            }
            Ok(summary)
        })
        .collect::<Result<Vec<CellSummary>>>()?;

    // Deterministic reduction in grid order with lexicographic tie-breaks.
    let mut min_joint_residual = f64::INFINITY;
    let mut worst = (usize::MAX, usize::MAX, usize::MAX);
    let mut satisfiable = 0usize;
    for summary in &per_alpha {
        satisfiable += summary.satisfiable;
        if summary.min_residual < min_joint_residual
            || (summary.min_residual == min_joint_residual && summary.min_cell < worst)
        {
            min_joint_residual = summary.min_residual;
            worst = summary.min_cell;
        }
    }

    let verdict = if min_joint_residual > threshold && satisfiable == 0 {
        Verdict::Incompatible
    } else {
        Verdict::Inconclusive
    };

    Ok(ConsistencyReport {
        alpha_grid: kept.clone(),
        excluded_alphas: excluded,
        n_max,
        m_max,
        threshold,
        min_joint_residual,
        worst_cell: (worst.0, worst.1, kept[worst.2]),
        jointly_satisfiable_cells: satisfiable,
        verdict,
    })
}
