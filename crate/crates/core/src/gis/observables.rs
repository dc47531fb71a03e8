use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{SpectrumModel, TruncatedState};

pub const SPILL_LIMIT: f64 = 1e-12;

/// Moments of W = (A⁻ + A⁺)/√2 and P = i(A⁺ − A⁻)/√2 in a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub mean_w: f64,
    pub mean_p: f64,
    pub var_w: f64,
    pub var_p: f64,
    pub mean_g: f64,
    pub mean_f: f64,
    /// ½ √(⟨G⟩² + ⟨F⟩²).
    pub delta: f64,
    /// var_W var_P − (⟨G⟩² + ⟨F⟩²)/4.
    pub saturation_residual: f64,
}

fn lowered(model: &SpectrumModel, c: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); c.len()];
    for k in 0..c.len().saturating_sub(1) {
        out[k] = model.ladder_minus(k + 1).to_complex() * c[k + 1];
    }
    out
}

fn raised(model: &SpectrumModel, c: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); c.len()];
    for k in 1..c.len() {
        out[k] = model.ladder_plus(k - 1).to_complex() * c[k - 1];
    }
    out
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Norm² pushed beyond level N by A⁺ and (A⁺)².
pub fn creation_spill(state: &TruncatedState) -> f64 {
    let m = &state.model;
    let c = &state.coeffs;
    let n = c.len();
    if n == 0 {
        return 0.0;
    }
    let top = c[n - 1].norm_sqr();
    let below = if n >= 2 { c[n - 2].norm_sqr() } else { 0.0 };
    top * m.energy(n) * (1.0 + m.energy(n + 1)) + below * m.energy(n - 1) * m.energy(n)
}

/// Compute ⟨W⟩, ⟨P⟩, their variances, ⟨G⟩ and ⟨F⟩ in a normalized state.
pub fn observables(state: &TruncatedState) -> Result<UncertaintyReport> {
    let spill = creation_spill(state);
    if spill > SPILL_LIMIT {
        return Err(Error::SpillTooLarge { spill });
    }
    let model = state.model;
    let mut c = state.coeffs.clone();
    c.extend([C64::new(0.0, 0.0); 2]);
    let am = lowered(&model, &c);
    let ap = raised(&model, &c);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let wc: Vec<C64> = am.iter().zip(&ap).map(|(a, b)| (a + b) * s).collect();
    let pc: Vec<C64> = am.iter().zip(&ap).map(|(a, b)| (b - a) * C64::new(0.0, s)).collect();
    let mean_w = dot(&c, &wc).re;
    let mean_p = dot(&c, &pc).re;
    let dw: Vec<C64> = wc.iter().zip(&c).map(|(x, y)| x - y * mean_w).collect();
    let dp: Vec<C64> = pc.iter().zip(&c).map(|(x, y)| x - y * mean_p).collect();
    let var_w = dot(&dw, &dw).re;
    let var_p = dot(&dp, &dp).re;
    let mean_g: f64 = c.iter().enumerate().map(|(n, x)| x.norm_sqr() * model.g_eigenvalue(n)).sum();
    let mean_f = 2.0 * dot(&dw, &dp).re;
    let delta = 0.5 * mean_g.hypot(mean_f);
    Ok(UncertaintyReport {
        mean_w,
        mean_p,
        var_w,
        var_p,
        mean_g,
        mean_f,
        delta,
        saturation_residual: var_w * var_p - 0.25 * (mean_g * mean_g + mean_f * mean_f),
    })
}

/// ⟨F⟩ through i⟨(ΔA⁺)² − (ΔA⁻)²⟩.
pub fn mean_f_from_ladders(state: &TruncatedState) -> f64 {
    let model = state.model;
    let mut c = state.coeffs.clone();
    c.extend([C64::new(0.0, 0.0); 2]);
    let am = lowered(&model, &c);
    let ap = raised(&model, &c);
    let m_minus = dot(&c, &am);
    let m_plus = dot(&c, &ap);
    let am2 = dot(&c, &lowered(&model, &am));
    let ap2 = dot(&c, &raised(&model, &ap));
    let var_plus = ap2 - m_plus * m_plus;
    let var_minus = am2 - m_minus * m_minus;
    (C64::new(0.0, 1.0) * (var_plus - var_minus)).re
}
