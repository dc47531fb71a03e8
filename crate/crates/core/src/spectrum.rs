//! Spectra, ladder operators and truncated Fock-basis states.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{ln_factorial, ln_gamma_ratio};

/// The three supported spectra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Harmonic,
    InfiniteWell,
    AnharmonicX4 { epsilon: f64 },
}

/// Parameters of spectra of the form e_n = κ n (n + b − 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11 {
    pub kappa: f64,
    pub b: f64,
}

/// A spectrum together with the phase parameter α of the ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumModel {
    #[serde(flatten)]
    pub family: Family,
    pub alpha: f64,
}

/// Natural log of a non-negative product together with its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogValue {
    pub fn exp(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

/// Matrix element of a ladder operator: magnitude times e^{i·phase}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderElement {
    pub magnitude: f64,
    pub phase: f64,
}

impl LadderElement {
    pub fn to_complex(self) -> C64 {
        C64::from_polar(self.magnitude, self.phase)
    }
}

impl SpectrumModel {
    pub fn harmonic(alpha: f64) -> Self {
        SpectrumModel { family: Family::Harmonic, alpha }
    }

    pub fn infinite_well(alpha: f64) -> Self {
        SpectrumModel { family: Family::InfiniteWell, alpha }
    }

    pub fn anharmonic_x4(epsilon: f64, alpha: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("ε = {epsilon} must be positive and finite")));
        }
        Ok(SpectrumModel { family: Family::AnharmonicX4 { epsilon }, alpha })
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("α = {} must be finite", self.alpha)));
        }
        if let Family::AnharmonicX4 { epsilon } = self.family {
            Self::anharmonic_x4(epsilon, self.alpha)?;
        }
        Ok(())
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        SpectrumModel { family: self.family, alpha }
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Harmonic => "harmonic",
            Family::InfiniteWell => "infinite_well",
            Family::AnharmonicX4 { .. } => "anharmonic_x4",
        }
    }

    /// κ and b, or `None` for the harmonic spectrum.
    pub fn su11(&self) -> Option<Su11> {
        match self.family {
            Family::Harmonic => None,
            Family::InfiniteWell => Some(Su11 { kappa: 1.0, b: 3.0 }),
            Family::AnharmonicX4 { epsilon } => Some(Su11 { kappa: 1.5 * epsilon, b: 2.0 + 2.0 / (3.0 * epsilon) }),
        }
    }

    pub fn require_su11(&self) -> Result<Su11> {
        self.su11().ok_or(Error::UnsupportedModel("harmonic"))
    }

    /// Ground-state shift of the x⁴ model, kept as metadata only.
    pub fn c0(&self) -> Option<f64> {
        match self.family {
            Family::AnharmonicX4 { epsilon } => Some(0.75 * epsilon - 21.0 * epsilon * epsilon / 8.0),
            _ => None,
        }
    }

    pub fn energy(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.family {
            Family::Harmonic => nf,
            Family::InfiniteWell => nf * (nf + 2.0),
            Family::AnharmonicX4 { epsilon } => nf + 1.5 * epsilon * (nf * nf + nf),
        }
    }

    /// E(n) = e_1 e_2 ⋯ e_n, as a logarithm.
    pub fn e_product(&self, n: usize) -> LogValue {
        let ln_abs = match self.su11() {
            None => ln_factorial(n),
            Some(Su11 { kappa, b }) => n as f64 * kappa.ln() + ln_factorial(n) + ln_gamma_ratio(n, b),
        };
        LogValue { ln_abs, sign: 1.0 }
    }

    pub fn ladder_minus(&self, n: usize) -> LadderElement {
        if n == 0 {
            return LadderElement { magnitude: 0.0, phase: 0.0 };
        }
        LadderElement { magnitude: self.energy(n).sqrt(), phase: self.alpha * (self.energy(n) - self.energy(n - 1)) }
    }

    pub fn ladder_plus(&self, n: usize) -> LadderElement {
        LadderElement {
            magnitude: self.energy(n + 1).sqrt(),
            phase: -self.alpha * (self.energy(n + 1) - self.energy(n)),
        }
    }

    /// Diagonal of the commutator [A⁻, A⁺] on |n⟩.
    pub fn g_eigenvalue(&self, n: usize) -> f64 {
        self.energy(n + 1) - self.energy(n)
    }

    /// e^{−iα e_n}.
    pub fn phase(&self, n: usize) -> C64 {
        C64::from_polar(1.0, -self.alpha * self.energy(n))
    }

    /// True when both models have the same spectrum (α may differ).
    pub fn same_spectrum(&self, other: &SpectrumModel) -> bool {
        self.family == other.family
    }
}

/// A state truncated to the Fock levels 0..=N.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    pub coeffs: Vec<C64>,
    pub model: SpectrumModel,
    /// Norm² discarded by the last operation that pushed weight past level N.
    pub spill: f64,
}

impl TruncatedState {
    pub fn new(coeffs: Vec<C64>, model: SpectrumModel) -> Self {
        TruncatedState { coeffs, model, spill: 0.0 }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        TruncatedState { coeffs: self.coeffs.iter().map(|c| c / n).collect(), model: self.model, spill: self.spill }
    }

    /// Multiply by the global phase that makes the first nonzero coefficient real and positive.
    pub fn phase_fixed(&self) -> Self {
        let first = self.coeffs.iter().find(|c| c.norm() > 0.0).copied();
        match first {
            None => self.clone(),
            Some(c) => {
                let u = c.conj() / c.norm();
                TruncatedState {
                    coeffs: self.coeffs.iter().map(|x| x * u).collect(),
                    model: self.model,
                    spill: self.spill,
                }
            }
        }
    }

    /// ⟨self|other⟩ over the common levels.
    pub fn inner(&self, other: &TruncatedState) -> C64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    /// Largest coefficient-wise difference, padding the shorter state with zeros.
    pub fn max_diff(&self, other: &TruncatedState) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = C64::new(0.0, 0.0);
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(zero);
                let b = other.coeffs.get(k).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// A⁻ on the truncated vector; level N of the result is zero.
    pub fn apply_annihilation(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for k in 0..n.saturating_sub(1) {
            out[k] = self.model.ladder_minus(k + 1).to_complex() * self.coeffs[k + 1];
        }
        TruncatedState { coeffs: out, model: self.model, spill: 0.0 }
    }

    /// A⁺ on the truncated vector, dropping the component pushed to level N + 1.
    pub fn apply_creation(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for k in 1..n {
            out[k] = self.model.ladder_plus(k - 1).to_complex() * self.coeffs[k - 1];
        }
        let spill = match self.coeffs.last() {
            Some(c) => c.norm_sqr() * self.model.energy(n),
            None => 0.0,
        };
        TruncatedState { coeffs: out, model: self.model, spill }
    }

    pub fn mean_energy(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(n, c)| self.model.energy(n) * c.norm_sqr()).sum()
    }
}
