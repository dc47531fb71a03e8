//! Gazeau-Klauder coherent states.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::specfun::hyp0f1;
use crate::spectrum::{SpectrumModel, TruncatedState};

pub const MAX_TRUNCATION: usize = 2000;
const ADAPTIVE_RATIO: f64 = 1e-20;
const TAIL_LIMIT: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq)]
pub struct GkState {
    pub z: C64,
    pub alpha: f64,
    pub body: TruncatedState,
    /// 𝒩(|z|).
    pub norm_constant: f64,
}

/// Σ r^{2n}/E(n) in closed form.
pub fn gk_norm_sum(model: &SpectrumModel, r: f64) -> Result<f64> {
    match model.su11() {
        None => Ok((r * r).exp()),
        Some(s) => Ok(hyp0f1(C64::new(s.b, 0.0), C64::new(r * r / s.kappa, 0.0))?.re),
    }
}

/// 𝒩(r) = (Σ r^{2n}/E(n))^{−1/2}.
pub fn gk_normalization(model: &SpectrumModel, r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::DomainViolation(format!("|z| = {r}")));
    }
    let s = gk_norm_sum(model, r)?;
    if !s.is_finite() {
        return Err(Error::Overflow { what: "GK normalization" });
    }
    Ok(s.powf(-0.5))
}

/// Smallest N with r^{2N}/E(N) below 1e−20 of the partial sum, capped at 2000.
pub fn gk_truncation(model: &SpectrumModel, r: f64) -> Result<usize> {
    let r2 = r * r;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..=MAX_TRUNCATION {
        term *= r2 / model.energy(n);
        sum += term;
        if sum > 1e200 {
            term *= 1e-200;
            sum *= 1e-200;
        }
        if term < ADAPTIVE_RATIO * sum {
            return Ok(n.max(1));
        }
    }
    Err(Error::TruncationInsufficient { truncation: MAX_TRUNCATION, tail: term / sum })
}

/// Build |z, α⟩ truncated at `n` (or adaptively when `None`).
pub fn build_gk(model: &SpectrumModel, z: C64, n: Option<usize>) -> Result<GkState> {
    model.validate()?;
    if !z.is_finite() {
        return Err(Error::DomainViolation(format!("z = {z}")));
    }
    let r = z.norm();
    let n = match n {
        Some(n) => n,
        None => gk_truncation(model, r)?,
    };
    let norm_constant = gk_normalization(model, r)?;
    let mut raw = Vec::with_capacity(n + 1);
    let mut c = C64::new(norm_constant, 0.0);
    raw.push(c);
    for k in 1..=n {
        c = c * z / model.energy(k).sqrt();
        raw.push(c);
    }
    let tail = tail_norm_sqr(model, r, n, norm_constant);
    if tail > TAIL_LIMIT {
        return Err(Error::TruncationInsufficient { truncation: n, tail });
    }
    let coeffs = raw.into_iter().enumerate().map(|(k, c)| c * model.phase(k)).collect();
    Ok(GkState { z, alpha: model.alpha, body: TruncatedState::new(coeffs, *model), norm_constant })
}

fn tail_norm_sqr(model: &SpectrumModel, r: f64, n: usize, norm_constant: f64) -> f64 {
    let r2 = r * r;
    let mut term = norm_constant * norm_constant;
    for k in 1..=n {
        term *= r2 / model.energy(k);
    }
    let mut tail = 0.0;
    let mut k = n;
    loop {
        k += 1;
        term *= r2 / model.energy(k);
        tail += term;
        if term <= 1e-30 * tail.max(1e-300) || term == 0.0 || k > n + 100_000 {
            return tail;
        }
    }
}

/// ⟨s1|s2⟩ from the coefficients; both states must share spectrum and α.
pub fn gk_overlap(s1: &GkState, s2: &GkState) -> Result<C64> {
    if !s1.body.model.same_spectrum(&s2.body.model) || s1.alpha != s2.alpha {
        return Err(Error::ModelMismatch);
    }
    Ok(s1.body.inner(&s2.body))
}

/// ⟨z1, α|z2, α⟩ from the closed form 𝒩(|z1|)𝒩(|z2|) Σ (z̄1 z2)^n / E(n).
pub fn gk_overlap_closed(model: &SpectrumModel, z1: C64, z2: C64) -> Result<C64> {
    let x = z1.conj() * z2;
    let sum = match model.su11() {
        None => x.exp(),
        Some(s) => hyp0f1(C64::new(s.b, 0.0), x / s.kappa)?,
    };
    Ok(sum * gk_normalization(model, z1.norm())? * gk_normalization(model, z2.norm())?)
}

/// Time evolution: every coefficient picks up e^{−i e_n t} and α becomes α + t.
pub fn evolve(state: &GkState, t: f64) -> GkState {
    let model = state.body.model.with_alpha(state.alpha + t);
    let coeffs =
        state.body.coeffs.iter().enumerate().map(|(n, c)| c * C64::from_polar(1.0, -model.energy(n) * t)).collect();
    GkState {
        z: state.z,
        alpha: state.alpha + t,
        body: TruncatedState::new(coeffs, model),
        norm_constant: state.norm_constant,
    }
}

/// ⟨H⟩ = Σ e_n |c_n|², which equals |z|² for these states.
pub fn mean_energy(state: &GkState) -> f64 {
    state.body.mean_energy()
}

/// Radius of convergence of Σ r^{2n}/E(n); infinite for every supported spectrum.
pub fn convergence_radius(_model: &SpectrumModel) -> f64 {
    f64::INFINITY
}
