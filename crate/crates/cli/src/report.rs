//! The report envelope shared by every subcommand and its JSON/CSV
//! serialization.
//!
//! JSON reports have the fixed shape
//! `{ command, params, version, rows, diagnostics, [summary], [timestamp] }`
//! and re-parse losslessly into the emitting type. CSV output is one header
//! row plus one record per row; numeric cells carry 17 significant digits so
//! they round-trip bit for bit, with `.` as the decimal separator regardless
//! of locale.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parseval_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_max_err: Option<f64>,
}

/// Scan summary attached to `check-loclin` reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoclinSummary {
    pub verdict: String,
    pub min_joint_residual: f64,
    pub worst_n: usize,
    pub worst_m: usize,
    pub worst_alpha: f64,
    pub jointly_satisfiable_cells: usize,
    pub excluded_alphas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<R> {
    pub command: String,
    pub params: serde_json::Value,
    pub version: String,
    pub rows: Vec<R>,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<LoclinSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl<R> Report<R> {
    pub fn new(command: &str, params: serde_json::Value, rows: Vec<R>) -> Self {
        Self {
            command: command.to_string(),
            params,
            version: env!("CARGO_PKG_VERSION").to_string(),
            rows,
            diagnostics: Diagnostics::default(),
            summary: None,
            timestamp: None,
        }
    }

    pub fn stamp(&mut self) {
        let seconds = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.timestamp = Some(seconds.to_string());
    }
}

/// 17 significant digits: enough to reconstruct any f64 exactly.
pub fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

/// A row that knows how to print itself as a CSV record.
pub trait CsvRow {
    fn header() -> &'static [&'static str];
    fn record(&self) -> Vec<String>;
}

impl<R: Serialize + CsvRow> Report<R> {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&R::header().join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.record().join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub family: String,
    pub n: usize,
    pub alpha: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub abs_error: f64,
}

impl CsvRow for CoeffRow {
    fn header() -> &'static [&'static str] {
        &["family", "n", "alpha", "closed_form", "quadrature", "abs_error"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.n.to_string(),
            full_precision(self.alpha),
            full_precision(self.closed_form),
            full_precision(self.quadrature),
            full_precision(self.abs_error),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InsertRow {
    pub chamber: String,
    pub n: usize,
    pub re: f64,
    pub im: f64,
}

impl CsvRow for InsertRow {
    fn header() -> &'static [&'static str] {
        &["chamber", "n", "re", "im"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.chamber.clone(),
            self.n.to_string(),
            full_precision(self.re),
            full_precision(self.im),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyRow {
    pub n: usize,
    pub m: usize,
    pub delta_e: f64,
}

impl CsvRow for EnergyRow {
    fn header() -> &'static [&'static str] {
        &["n", "m", "delta_e"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            full_precision(self.delta_e),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub n_trunc: usize,
    pub partial_energy: f64,
}

impl CsvRow for DivergenceRow {
    fn header() -> &'static [&'static str] {
        &["n_trunc", "partial_energy"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.n_trunc.to_string(), full_precision(self.partial_energy)]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoclinRow {
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub origin_from_left: f64,
    pub origin_from_right: f64,
    pub offset_from_left: f64,
    pub offset_from_right: f64,
    pub norm_defect: f64,
    pub origin_residual: f64,
    pub offset_residual: f64,
    pub joint_residual: f64,
}

impl CsvRow for LoclinRow {
    fn header() -> &'static [&'static str] {
        &[
            "alpha",
            "n",
            "m",
            "origin_from_left",
            "origin_from_right",
            "offset_from_left",
            "offset_from_right",
            "norm_defect",
            "origin_residual",
            "offset_residual",
            "joint_residual",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            full_precision(self.alpha),
            self.n.to_string(),
            self.m.to_string(),
            full_precision(self.origin_from_left),
            full_precision(self.origin_from_right),
            full_precision(self.offset_from_left),
            full_precision(self.offset_from_right),
            full_precision(self.norm_defect),
            full_precision(self.origin_residual),
            full_precision(self.offset_residual),
            full_precision(self.joint_residual),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveRow {
    pub t: f64,
    pub norm: f64,
    pub energy: f64,
}

impl CsvRow for EvolveRow {
    fn header() -> &'static [&'static str] {
        &["t", "norm", "energy"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            full_precision(self.t),
            full_precision(self.norm),
            full_precision(self.energy),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub t: f64,
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

impl CsvRow for SampleRow {
    fn header() -> &'static [&'static str] {
        &["t", "theta", "re", "im"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            full_precision(self.t),
            full_precision(self.theta),
            full_precision(self.re),
            full_precision(self.im),
        ]
    }
}
