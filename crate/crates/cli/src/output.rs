//! Serialized shapes of command output. Field sets are pinned by golden tests.

use gencoh::gis::UncertaintyReport;
use gencoh::{SpectrumModel, C64};
use serde::Serialize;

use crate::config::{StateFamily, Tolerances};
use crate::suites::CheckResult;

pub const BUILD_SCHEMA: &str = "gencoh.build/1";
pub const VERIFY_SCHEMA: &str = "gencoh.verify/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Complex {
    fn from(c: C64) -> Self {
        Complex { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub n: usize,
    pub re: f64,
    pub im: f64,
    pub prob: f64,
}

pub fn coefficient_rows(coeffs: &[C64]) -> Vec<CoefficientRow> {
    coeffs.iter().enumerate().map(|(n, c)| CoefficientRow { n, re: c.re, im: c.im, prob: c.norm_sqr() }).collect()
}

/// Everything about a built state except its coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateSummary {
    pub schema: &'static str,
    pub model: SpectrumModel,
    pub family: StateFamily,
    pub z: Complex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Complex>,
    pub truncation: usize,
    pub norm: f64,
    pub mean_energy: f64,
    /// Normalization constant of the GK state.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<UncertaintyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuildOutput {
    #[serde(flatten)]
    pub summary: StateSummary,
    pub coefficients: Vec<CoefficientRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub tolerances: Tolerances,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// One grid point of a sweep; `None` fields are written as empty CSV cells.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub lambda_re: Option<f64>,
    pub lambda_im: Option<f64>,
    pub z_re: f64,
    pub z_im: f64,
    pub t: f64,
    pub norm: Option<f64>,
    pub mean_energy: Option<f64>,
    pub var_w: Option<f64>,
    pub var_p: Option<f64>,
    pub mean_g: Option<f64>,
    pub mean_f: Option<f64>,
    pub saturation_residual: Option<f64>,
    pub error: String,
}

pub fn text_table(checks: &[CheckResult]) -> String {
    let width = checks.iter().map(|c| c.check.chars().count()).max().unwrap_or(5).max(5);
    let model_w = checks.iter().map(|c| c.model.len()).max().unwrap_or(5).max(5);
    let mut s = format!(
        "{:<11} {:<model_w$} {:<width$} {:>12} {:>10}  result\n",
        "suite", "model", "check", "measured", "tolerance"
    );
    for c in checks {
        let measured = c.measured.map(|m| format!("{m:.3e}")).unwrap_or_else(|| "-".into());
        let tol = if c.tolerance > 0.0 { format!("{:.0e}", c.tolerance) } else { "-".into() };
        let pad = width - c.check.chars().count();
        s.push_str(&format!(
            "{:<11} {:<model_w$} {}{} {:>12} {:>10}  {}",
            c.suite,
            c.model,
            c.check,
            " ".repeat(pad),
            measured,
            tol,
            if c.passed { "PASS" } else { "FAIL" }
        ));
        if !c.note.is_empty() {
            s.push_str(&format!("  ({})", c.note));
        }
        s.push('\n');
    }
    s
}
