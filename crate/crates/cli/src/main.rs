//! Command-line front end for the ring barrier-insertion toolkit.
//!
//! Every subcommand emits one machine-readable report (JSON by default, CSV
//! with `--output csv`) that is deterministic for a fixed invocation once
//! `--no-timestamp` is passed. Exit codes: 0 on success, 1 on usage or
//! validation errors, 2 on numerical failure (the message identifies the
//! offending integral).

mod parse;
mod report;

use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ringwell::energy::{truncated_energy, Candidate, EnergyConvention, EnergyLedger};
use ringwell::evolve::{evolve, evolve_two_chamber, TimeGrid};
use ringwell::insertion::{insert_double, insert_single};
use ringwell::loclin::{consistency_scan, solve_barrier_weights, Verdict};
use ringwell::overlap::{
    closed_form_coeff, parseval_defect, quadrature_overlap, CoeffConvention, CoeffFamily,
};
use ringwell::well::Chambered;
use ringwell::{Error as CoreError, QuadratureSettings, RingConfig};

use parse::{parse_angle, parse_angle_list, parse_usize_list, StateSpec};
use report::{
    CoeffRow, CsvRow, DivergenceRow, EnergyRow, EvolveRow, InsertRow, LoclinRow, LoclinSummary,
    Report, SampleRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Orthonormal,
    Unnormalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnergyConventionArg {
    Corrected,
    Uncorrected,
}

#[derive(Parser)]
#[command(name = "ringwell", version, about = "Spectral toolkit for instantaneous barrier insertions on a quantum ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Output path; '-' writes to stdout.
    #[arg(long, global = true, default_value = "-")]
    out: String,

    /// Worker threads for grid scans (defaults to all cores; the env var
    /// RINGWELL_THREADS is used when the flag is absent). Results do not
    /// depend on the thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Omit the timestamp field so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Action quantum.
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,

    /// Particle mass (default makes hbar^2/2M = 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    mass: f64,

    /// Ring radius; energies scale as 1/radius^2.
    #[arg(long, global = true, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form overlap coefficients with a quadrature cross-check column.
    Coeffs {
        /// Family tag: a, A, c, C, b, B, or f.
        #[arg(long)]
        family: char,
        /// Barrier separation (radians or pi tokens); required for the
        /// two-chamber families, ignored for f.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Unnormalized)]
        convention: ConventionArg,
        /// Quadrature relative tolerance.
        #[arg(long, default_value_t = 1e-12)]
        rel_tol: f64,
        /// Quadrature subdivision budget.
        #[arg(long, default_value_t = 1 << 20)]
        max_subdivisions: usize,
    },
    /// Re-expands a ring state after inserting one barrier (or two with
    /// --second-barrier, which requires the first barrier at 0).
    Insert {
        #[arg(long, value_enum)]
        state: StateSpec,
        /// Ring mode of the state.
        #[arg(long, default_value_t = 1)]
        mode: usize,
        /// Node offset for shifted-sin.
        #[arg(long)]
        shift: Option<String>,
        /// Barrier angle.
        #[arg(long)]
        barrier: String,
        /// Second barrier angle (double insertion at 0 and this angle).
        #[arg(long)]
        second_barrier: Option<String>,
        #[arg(long = "n-trunc")]
        n_trunc: usize,
    },
    /// Transfer-energy table for the double insertion.
    Energy {
        /// Candidate state: sin or shifted-sin.
        #[arg(long, value_enum)]
        state: StateSpec,
        #[arg(long)]
        alpha: String,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long = "m-max")]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = EnergyConventionArg::Corrected)]
        convention: EnergyConventionArg,
    },
    /// Partial post-insertion energies over a list of truncations.
    ScanDivergence {
        #[arg(long, value_enum)]
        state: StateSpec,
        #[arg(long, default_value_t = 1)]
        mode: usize,
        #[arg(long)]
        shift: Option<String>,
        #[arg(long)]
        barrier: String,
        /// Comma-separated truncation orders.
        #[arg(long = "n-list")]
        n_list: String,
    },
    /// Scans the locality/linearity weight system and reports the verdict.
    CheckLoclin {
        /// Number of grid angles.
        #[arg(long = "alpha-grid", default_value_t = 50)]
        alpha_grid: usize,
        #[arg(long = "alpha-min", default_value = "0.05")]
        alpha_min: String,
        /// Defaults to pi/2 - 0.05.
        #[arg(long = "alpha-max")]
        alpha_max: Option<String>,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
        #[arg(long = "m-max", default_value_t = 10)]
        m_max: usize,
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
    /// Evolves a post-insertion expansion and reports norm/energy (or
    /// sampled amplitudes with --sample-thetas).
    Evolve {
        #[arg(long, value_enum)]
        state: StateSpec,
        #[arg(long, default_value_t = 1)]
        mode: usize,
        #[arg(long)]
        shift: Option<String>,
        #[arg(long)]
        barrier: String,
        #[arg(long)]
        second_barrier: Option<String>,
        #[arg(long = "n-trunc")]
        n_trunc: usize,
        #[arg(long = "t-start", default_value = "0")]
        t_start: f64,
        #[arg(long = "t-end")]
        t_end: f64,
        #[arg(long)]
        steps: usize,
        /// Comma-separated sample angles; switches the rows to amplitudes.
        #[arg(long = "sample-thetas")]
        sample_thetas: Option<String>,
    },
}

enum AppError {
    Usage(String),
    Numerical(String),
}

impl From<CoreError> for AppError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::ConvergenceFailure { .. } => AppError::Numerical(err.to_string()),
            other => AppError::Usage(other.to_string()),
        }
    }
}

impl From<String> for AppError {
    fn from(message: String) -> Self {
        AppError::Usage(message)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(AppError::Numerical(message)) => {
            eprintln!("numerical failure: {message}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), AppError> {
    let count = match threads {
        Some(n) => Some(n),
        None => match std::env::var("RINGWELL_THREADS") {
            Ok(text) => Some(
                text.parse::<usize>()
                    .map_err(|_| format!("RINGWELL_THREADS must be an integer, got '{text}'"))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(n) = count {
        if n == 0 {
            return Err(AppError::Usage("--threads must be at least 1".into()));
        }
        // Ignore AlreadyInitialized: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    configure_threads(cli.threads)?;
    let config = RingConfig::new(cli.hbar, cli.mass, cli.radius)?;
    let content = match &cli.command {
        Command::Coeffs {
            family,
            alpha,
            n_max,
            convention,
            rel_tol,
            max_subdivisions,
        } => run_coeffs(
            &cli, *family, alpha.as_deref(), *n_max, *convention, *rel_tol, *max_subdivisions,
        )?,
        Command::Insert {
            state,
            mode,
            shift,
            barrier,
            second_barrier,
            n_trunc,
        } => run_insert(
            &cli,
            *state,
            *mode,
            shift.as_deref(),
            barrier,
            second_barrier.as_deref(),
            *n_trunc,
        )?,
        Command::Energy {
            state,
            alpha,
            n_max,
            m_max,
            convention,
        } => run_energy(&cli, &config, *state, alpha, *n_max, *m_max, *convention)?,
        Command::ScanDivergence {
            state,
            mode,
            shift,
            barrier,
            n_list,
        } => run_divergence(&cli, &config, *state, *mode, shift.as_deref(), barrier, n_list)?,
        Command::CheckLoclin {
            alpha_grid,
            alpha_min,
            alpha_max,
            n_max,
            m_max,
            threshold,
        } => run_loclin(
            &cli,
            &config,
            *alpha_grid,
            alpha_min,
            alpha_max.as_deref(),
            *n_max,
            *m_max,
            *threshold,
        )?,
        Command::Evolve {
            state,
            mode,
            shift,
            barrier,
            second_barrier,
            n_trunc,
            t_start,
            t_end,
            steps,
            sample_thetas,
        } => run_evolve(
            &cli,
            &config,
            *state,
            *mode,
            shift.as_deref(),
            barrier,
            second_barrier.as_deref(),
            *n_trunc,
            *t_start,
            *t_end,
            *steps,
            sample_thetas.as_deref(),
        )?,
    };
    write_output(&cli.out, &content)
}

fn write_output(out: &str, content: &str) -> Result<(), AppError> {
    if out == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(out, content)
            .map_err(|err| AppError::Usage(format!("cannot write {out}: {err}")))
    }
}

fn emit<R: Serialize + CsvRow>(cli: &Cli, mut report: Report<R>) -> String {
    if !cli.no_timestamp {
        report.stamp();
    }
    match cli.output {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    }
}

fn run_coeffs(
    cli: &Cli,
    family_tag: char,
    alpha: Option<&str>,
    n_max: usize,
    convention: ConventionArg,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<String, AppError> {
    let family = CoeffFamily::from_tag(family_tag)
        .ok_or_else(|| format!("unknown family '{family_tag}' (expected a, A, c, C, b, B, f)"))?;
    let alpha_value = match (family.needs_alpha(), alpha) {
        (true, Some(text)) => parse_angle(text)?,
        (true, None) => return Err(format!("family '{family_tag}' requires --alpha").into()),
        (false, _) => 0.0,
    };
    let core_convention = match convention {
        ConventionArg::Orthonormal => CoeffConvention::Orthonormal,
        ConventionArg::Unnormalized => CoeffConvention::Unnormalized,
    };
    let settings = QuadratureSettings {
        rel_tol,
        max_subdivisions,
    };
    let state = family.source_state(alpha_value);
    let well = family.well(alpha_value)?;
    let mut rows = Vec::with_capacity(n_max);
    let mut max_err = 0.0f64;
    for n in 1..=n_max {
        let closed = closed_form_coeff(family, n, alpha_value, core_convention)?;
        let oracle = quadrature_overlap(&state, &well, n, core_convention, &settings)?;
        let abs_error = (closed - oracle).abs();
        max_err = max_err.max(abs_error);
        rows.push(CoeffRow {
            family: family.to_string(),
            n,
            alpha: alpha_value,
            closed_form: closed,
            quadrature: oracle,
            abs_error,
        });
    }
    let mut report = Report::new(
        "coeffs",
        json!({
            "family": family.to_string(),
            "alpha": alpha_value,
            "n_max": n_max,
            "convention": format!("{core_convention:?}").to_lowercase(),
            "rel_tol": rel_tol,
            "max_subdivisions": max_subdivisions,
        }),
        rows,
    );
    report.diagnostics.quadrature_max_err = Some(max_err);
    Ok(emit(cli, report))
}

fn run_insert(
    cli: &Cli,
    state_spec: StateSpec,
    mode: usize,
    shift: Option<&str>,
    barrier: &str,
    second_barrier: Option<&str>,
    n_trunc: usize,
) -> Result<String, AppError> {
    let shift_value = shift.map(parse_angle).transpose()?;
    let state = state_spec.build(mode, shift_value)?;
    let barrier_value = parse_angle(barrier)?;
    let params = json!({
        "state": state_spec.label(),
        "mode": mode,
        "shift": shift_value,
        "barrier": barrier_value,
        "second_barrier": second_barrier.map(parse_angle).transpose()?,
        "n_trunc": n_trunc,
    });
    let (rows, defect) = match second_barrier {
        None => {
            let expansion = insert_single(&state, barrier_value, n_trunc)?;
            let rows = expansion
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| InsertRow {
                    chamber: "well".into(),
                    n: i + 1,
                    re: c.re,
                    im: c.im,
                })
                .collect();
            (rows, parseval_defect(&expansion, &state))
        }
        Some(text) => {
            if barrier_value != 0.0 {
                return Err(
                    "double insertion places the first barrier at 0; pass --barrier 0"
                        .to_string()
                        .into(),
                );
            }
            let alpha = parse_angle(text)?;
            let two = insert_double(&state, alpha, n_trunc)?;
            let mut rows = Vec::with_capacity(2 * n_trunc);
            for (label, chamber) in [("left", two.left()), ("right", two.right())] {
                rows.extend(chamber.coeffs().iter().enumerate().map(|(i, c)| InsertRow {
                    chamber: label.into(),
                    n: i + 1,
                    re: c.re,
                    im: c.im,
                }));
            }
            (rows, parseval_defect(&two, &state))
        }
    };
    let mut report = Report::new("insert", params, rows);
    report.diagnostics.parseval_defect = Some(defect);
    Ok(emit(cli, report))
}

fn run_energy(
    cli: &Cli,
    config: &RingConfig,
    state_spec: StateSpec,
    alpha: &str,
    n_max: usize,
    m_max: usize,
    convention: EnergyConventionArg,
) -> Result<String, AppError> {
    let candidate = match state_spec {
        StateSpec::Sin => Candidate::Sine,
        StateSpec::ShiftedSin => Candidate::ShiftedSine,
        StateSpec::Cos => {
            return Err("the transfer table is defined for sin and shifted-sin"
                .to_string()
                .into())
        }
    };
    let alpha_value = parse_angle(alpha)?;
    let core_convention = match convention {
        EnergyConventionArg::Corrected => EnergyConvention::Corrected,
        EnergyConventionArg::Uncorrected => EnergyConvention::Uncorrected,
    };
    let ledger = EnergyLedger::build(candidate, alpha_value, n_max, m_max, config, core_convention)?;
    let rows = (1..=n_max)
        .flat_map(|n| {
            let ledger = &ledger;
            (1..=m_max).map(move |m| EnergyRow {
                n,
                m,
                delta_e: ledger.get(n, m),
            })
        })
        .collect();
    let report = Report::new(
        "energy",
        json!({
            "state": state_spec.label(),
            "alpha": alpha_value,
            "n_max": n_max,
            "m_max": m_max,
            "convention": format!("{core_convention:?}").to_lowercase(),
            "pre_energy": ledger.pre_energy,
        }),
        rows,
    );
    Ok(emit(cli, report))
}

fn run_divergence(
    cli: &Cli,
    config: &RingConfig,
    state_spec: StateSpec,
    mode: usize,
    shift: Option<&str>,
    barrier: &str,
    n_list: &str,
) -> Result<String, AppError> {
    let shift_value = shift.map(parse_angle).transpose()?;
    let state = state_spec.build(mode, shift_value)?;
    let barrier_value = parse_angle(barrier)?;
    let truncations = parse_usize_list(n_list)?;
    let scan = ringwell::divergence_scan(&state, barrier_value, &truncations, config)?;
    let rows = scan
        .into_iter()
        .map(|(n_trunc, partial_energy)| DivergenceRow {
            n_trunc,
            partial_energy,
        })
        .collect();
    let report = Report::new(
        "scan-divergence",
        json!({
            "state": state_spec.label(),
            "mode": mode,
            "shift": shift_value,
            "barrier": barrier_value,
            "n_list": truncations,
        }),
        rows,
    );
    Ok(emit(cli, report))
}

#[allow(clippy::too_many_arguments)]
fn run_loclin(
    cli: &Cli,
    config: &RingConfig,
    grid_count: usize,
    alpha_min: &str,
    alpha_max: Option<&str>,
    n_max: usize,
    m_max: usize,
    threshold: f64,
) -> Result<String, AppError> {
    let lo = parse_angle(alpha_min)?;
    let hi = match alpha_max {
        Some(text) => parse_angle(text)?,
        None => FRAC_PI_2 - 0.05,
    };
    if grid_count == 0 {
        return Err("--alpha-grid must be at least 1".to_string().into());
    }
    if !(hi - lo).is_finite() || hi < lo {
        return Err(format!("--alpha-max ({hi}) must not be below --alpha-min ({lo})").into());
    }
    let grid: Vec<f64> = if grid_count == 1 {
        vec![lo]
    } else {
        (0..grid_count)
            .map(|i| lo + (hi - lo) * i as f64 / (grid_count - 1) as f64)
            .collect()
    };
    let scan = consistency_scan(&grid, n_max, m_max, threshold, config)?;
    let mut rows = Vec::with_capacity(scan.alpha_grid.len() * n_max * m_max);
    for &alpha in &scan.alpha_grid {
        for n in 1..=n_max {
            for m in 1..=m_max {
                let cell = solve_barrier_weights(n, m, alpha)?;
                rows.push(LoclinRow {
                    alpha,
                    n,
                    m,
                    origin_from_left: cell.origin_from_left,
                    origin_from_right: cell.origin_from_right,
                    offset_from_left: cell.offset_from_left,
                    offset_from_right: cell.offset_from_right,
                    norm_defect: cell.norm_defect,
                    origin_residual: cell.origin_residual,
                    offset_residual: cell.offset_residual,
                    joint_residual: cell.joint_residual,
                });
            }
        }
    }
    let mut report = Report::new(
        "check-loclin",
        json!({
            "alpha_grid": grid_count,
            "alpha_min": lo,
            "alpha_max": hi,
            "n_max": n_max,
            "m_max": m_max,
            "threshold": threshold,
        }),
        rows,
    );
    report.summary = Some(LoclinSummary {
        verdict: match scan.verdict {
            Verdict::Incompatible => "incompatible".into(),
            Verdict::Inconclusive => "inconclusive".into(),
        },
        min_joint_residual: scan.min_joint_residual,
        worst_n: scan.worst_cell.0,
        worst_m: scan.worst_cell.1,
        worst_alpha: scan.worst_cell.2,
        jointly_satisfiable_cells: scan.jointly_satisfiable_cells,
        excluded_alphas: scan.excluded_alphas,
    });
    Ok(emit(cli, report))
}

#[allow(clippy::too_many_arguments)]
fn run_evolve(
    cli: &Cli,
    config: &RingConfig,
    state_spec: StateSpec,
    mode: usize,
    shift: Option<&str>,
    barrier: &str,
    second_barrier: Option<&str>,
    n_trunc: usize,
    t_start: f64,
    t_end: f64,
    steps: usize,
    sample_thetas: Option<&str>,
) -> Result<String, AppError> {
    let shift_value = shift.map(parse_angle).transpose()?;
    let state = state_spec.build(mode, shift_value)?;
    let barrier_value = parse_angle(barrier)?;
    let grid = TimeGrid::new(t_start, t_end, steps)?;
    let thetas = sample_thetas.map(parse_angle_list).transpose()?;
    let params = json!({
        "state": state_spec.label(),
        "mode": mode,
        "shift": shift_value,
        "barrier": barrier_value,
        "second_barrier": second_barrier.map(parse_angle).transpose()?,
        "n_trunc": n_trunc,
        "t_start": t_start,
        "t_end": t_end,
        "steps": steps,
        "sample_thetas": thetas,
    });

    enum Prepared {
        Single(ringwell::ChamberExpansion),
        Double(ringwell::TwoChamberState),
    }
    let prepared = match second_barrier {
        None => Prepared::Single(insert_single(&state, barrier_value, n_trunc)?),
        Some(text) => {
            if barrier_value != 0.0 {
                return Err(
                    "double insertion places the first barrier at 0; pass --barrier 0"
                        .to_string()
                        .into(),
                );
            }
            Prepared::Double(insert_double(&state, parse_angle(text)?, n_trunc)?)
        }
    };

    match thetas {
        None => {
            let rows = grid
                .times()
                .into_iter()
                .map(|t| {
                    let (norm_sq, energy) = match &prepared {
                        Prepared::Single(e) => {
                            let at = evolve(e, t, config);
                            (at.total_sum_sq(), truncated_energy(&at, config))
                        }
                        Prepared::Double(two) => {
                            let at = evolve_two_chamber(two, t, config);
                            (at.total_sum_sq(), truncated_energy(&at, config))
                        }
                    };
                    EvolveRow {
                        t,
                        norm: norm_sq.sqrt(),
                        energy,
                    }
                })
                .collect();
            Ok(emit(cli, Report::new("evolve", params, rows)))
        }
        Some(thetas) => {
            let mut rows = Vec::with_capacity(grid.steps * thetas.len());
            for t in grid.times() {
                let values = match &prepared {
                    Prepared::Single(e) => {
                        ringwell::sample_grid(&evolve(e, t, config), &thetas)?
                    }
                    Prepared::Double(two) => {
                        ringwell::sample_grid_two(&evolve_two_chamber(two, t, config), &thetas)?
                    }
                };
                rows.extend(thetas.iter().zip(values).map(|(&theta, v)| SampleRow {
                    t,
                    theta,
                    re: v.re,
                    im: v.im,
                }));
            }
            Ok(emit(cli, Report::new("evolve", params, rows)))
        }
    }
}
