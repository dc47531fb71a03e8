//! Analytic representations of intelligent states on the plane and on the unit disk.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gis::GisParams;
use crate::quad::gauss_legendre;
use crate::specfun::{hyp0f1, hyp1f1_direct, hyp1f1_scaled, jacobi_p_complex, ln_factorial, ln_gamma, ln_gamma_ratio};
use crate::spectrum::{SpectrumModel, TruncatedState};

/// Ψ(x) = e^{cx} ₁F₁(a; b; −2cx).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerSolution {
    pub a: C64,
    pub b: f64,
    pub c: C64,
}

impl KummerSolution {
    pub fn eval(&self, x: C64) -> Result<C64> {
        hyp1f1_scaled(self.a, C64::new(self.b, 0.0), -2.0 * self.c * x, self.c * x)
    }

    /// The literal product with no change of representation.
    pub fn eval_direct(&self, x: C64) -> Result<C64> {
        Ok((self.c * x).exp() * hyp1f1_direct(self.a, C64::new(self.b, 0.0), -2.0 * self.c * x)?)
    }

    /// The same function written with the opposite sign: e^{−cx} ₁F₁(b − a; b; 2cx).
    pub fn flipped(&self) -> KummerSolution {
        KummerSolution { a: self.b - self.a, b: self.b, c: -self.c }
    }
}

/// Solution of the eigenvalue equation in the plane representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneSolution {
    Kummer(KummerSolution),
    /// λ = 1: Ψ(x) = ₀F₁(; b; s x).
    Bessel {
        b: f64,
        s: C64,
    },
}

impl PlaneSolution {
    pub fn eval(&self, x: C64) -> Result<C64> {
        match self {
            PlaneSolution::Kummer(k) => k.eval(x),
            PlaneSolution::Bessel { b, s } => hyp0f1(C64::new(*b, 0.0), s * x),
        }
    }

    /// Upper bound on the exponential growth rate along the positive real axis.
    fn growth(&self) -> f64 {
        match self {
            PlaneSolution::Kummer(k) => k.c.norm(),
            PlaneSolution::Bessel { .. } => 0.0,
        }
    }

    fn order(&self) -> f64 {
        match self {
            PlaneSolution::Kummer(k) => k.b + k.a.norm(),
            PlaneSolution::Bessel { b, s } => b + s.norm(),
        }
    }
}

/// Solution of the eigenvalue equation in the disk representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiskSolution {
    /// Φ(ζ) = (1 + wζ)^{α₊} (1 − wζ)^{α₋}.
    Product { alpha_plus: C64, alpha_minus: C64, w: C64 },
    /// λ = 1: Φ(ζ) = exp(sζ).
    Exponential { s: C64 },
}

impl DiskSolution {
    pub fn eval(&self, zeta: C64) -> C64 {
        match *self {
            DiskSolution::Product { alpha_plus, alpha_minus, w } => {
                (1.0 + w * zeta).powc(alpha_plus) * (1.0 - w * zeta).powc(alpha_minus)
            }
            DiskSolution::Exponential { s } => (s * zeta).exp(),
        }
    }

    /// Taylor coefficients about ζ = 0 from Jacobi polynomials at the origin.
    pub fn taylor_coefficients(&self, n_max: usize) -> Vec<C64> {
        match *self {
            DiskSolution::Product { alpha_plus, alpha_minus, w } => (0..=n_max)
                .map(|n| {
                    let nf = n as f64;
                    (2.0 * w).powu(n as u32)
                        * jacobi_p_complex(n, alpha_plus - nf, alpha_minus - nf, C64::new(0.0, 0.0))
                })
                .collect(),
            DiskSolution::Exponential { s } => {
                (0..=n_max).map(|n| s.powu(n as u32) * (-ln_factorial(n)).exp()).collect()
            }
        }
    }
}

fn ensure_gis_domain(params: &GisParams) -> Result<()> {
    GisParams::new(params.lambda, params.z, params.alpha)?;
    if !params.in_analytic_domain() {
        return Err(Error::OutsideAnalyticDomain(params.lambda));
    }
    Ok(())
}

fn is_unit(lambda: C64) -> bool {
    lambda == C64::new(1.0, 0.0)
}

/// Ψ in the plane representation attached to the Gazeau-Klauder states.
pub fn analytic_gk_solution(model: &SpectrumModel, params: &GisParams) -> Result<PlaneSolution> {
    ensure_gis_domain(params)?;
    let s = model.require_su11()?;
    let rk = s.kappa.sqrt();
    if is_unit(params.lambda) {
        return Ok(PlaneSolution::Bessel { b: s.b, s: params.z / s.kappa });
    }
    let w = params.w();
    let a = 0.5 * s.b - params.z / (rk * (1.0 + params.lambda) * w);
    Ok(PlaneSolution::Kummer(KummerSolution { a, b: s.b, c: w / rk }))
}

/// Φ in the disk representation attached to the Klauder-Perelomov states.
pub fn analytic_kp_solution(model: &SpectrumModel, params: &GisParams) -> Result<DiskSolution> {
    ensure_gis_domain(params)?;
    let s = model.require_su11()?;
    let rk = s.kappa.sqrt();
    if is_unit(params.lambda) {
        return Ok(DiskSolution::Exponential { s: params.z / rk });
    }
    let w = params.w();
    let d = params.z / (rk * (1.0 + params.lambda) * w);
    Ok(DiskSolution::Product { alpha_plus: -0.5 * s.b + d, alpha_minus: -0.5 * s.b - d, w })
}

/// State coefficients from the disk function: t_n [n! Γ(b)/Γ(n+b)]^{1/2} e^{−iαe_n}, normalized.
pub fn gis_state_from_disk(model: &SpectrumModel, params: &GisParams, n: Option<usize>) -> Result<TruncatedState> {
    let sol = analytic_kp_solution(model, params)?;
    let s = model.require_su11()?;
    let model = model.with_alpha(params.alpha);
    let weight = |k: usize| (0.5 * (ln_factorial(k) - ln_gamma_ratio(k, s.b))).exp();
    let n = match n {
        Some(n) => n,
        None => {
            let w = params.w().norm();
            let mut k = 16usize;
            loop {
                let t = sol.taylor_coefficients(k);
                let coeffs: Vec<f64> = t.iter().enumerate().map(|(j, c)| (c * weight(j)).norm_sqr()).collect();
                let sum: f64 = coeffs.iter().sum();
                let tail = coeffs[k] * (model.energy(k + 1) + 1.0);
                if tail < 1e-26 * sum && coeffs[k - 1] * (model.energy(k) + 1.0) < 1e-26 * sum {
                    break k;
                }
                if k >= super::MAX_TRUNCATION || !(w < 1.0) {
                    return Err(Error::NotNormalizable { truncation: k, tail: tail / sum });
                }
                k = (k * 3) / 2;
            }
        }
    };
    let coeffs =
        sol.taylor_coefficients(n).into_iter().enumerate().map(|(k, t)| t * weight(k) * model.phase(k)).collect();
    Ok(TruncatedState::new(coeffs, model).normalized().phase_fixed())
}

/// Harmonic-oscillator intelligent state in the Bargmann representation.
pub fn harmonic_gaussian(lambda: C64, z: C64, x: C64) -> C64 {
    let w2 = (lambda - 1.0) / (lambda + 1.0);
    (2.0 * z * x / (1.0 + lambda) + 0.5 * w2 * x * x).exp()
}

/// |Φ(ζ) − (√κζ)^{−b}/Γ(b) ∫₀^∞ x^{b−1} Ψ(x) e^{−x/(√κζ)} dx|.
pub fn laplace_bridge_check(model: &SpectrumModel, params: &GisParams, zeta: C64) -> Result<f64> {
    let plane = analytic_gk_solution(model, params)?;
    let disk = analytic_kp_solution(model, params)?;
    let s = model.require_su11()?;
    let lhs = disk.eval(zeta);
    let rhs = laplace_transform(&plane, s.b, s.kappa, zeta)?;
    Ok((lhs - rhs).norm())
}

/// (√κζ)^{−b}/Γ(b) ∫₀^∞ x^{b−1} Ψ(x) e^{−x/(√κζ)} dx for any plane solution Ψ.
pub fn laplace_transform(plane: &PlaneSolution, b: f64, kappa: f64, zeta: C64) -> Result<C64> {
    let sz = kappa.sqrt() * zeta;
    if sz.norm() == 0.0 {
        return Err(Error::DomainViolation("ζ = 0".into()));
    }
    let inv = 1.0 / sz;
    let decay = inv.re - plane.growth();
    if decay <= 0.05 {
        return Err(Error::DomainViolation(format!(
            "Laplace integral diverges: Re(1/(√κζ)) = {} does not exceed the growth rate {}",
            inv.re,
            plane.growth()
        )));
    }
    let power = b - 1.0 + plane.order();
    let mut r = 1.0_f64;
    while decay * r - power * r.ln() < 45.0 {
        r *= 1.25;
    }
    let ln_pre = -b * sz.ln() - ln_gamma(b);
    let integrate = |panels: usize| -> Result<C64> {
        let h = r / panels as f64;
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..panels {
            let a = h * k as f64;
            let mut err = None;
            acc += gauss_legendre(20, a, a + h, |x| {
                if x <= 0.0 {
                    return C64::new(0.0, 0.0);
                }
                let xc = C64::new(x, 0.0);
                match plane.eval(xc) {
                    Ok(psi) => psi * ((b - 1.0) * x.ln() - xc * inv + ln_pre).exp(),
                    Err(e) => {
                        err = Some(e);
                        C64::new(0.0, 0.0)
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(acc)
    };
    let mut panels = 10;
    let mut prev = integrate(panels)?;
    loop {
        panels *= 2;
        let cur = integrate(panels)?;
        let change = (cur - prev).norm();
        if change < 1e-9 * cur.norm().max(1.0) {
            return Ok(cur);
        }
        if panels > 10_000 {
            return Err(Error::QuadratureNonConvergent { change });
        }
        prev = cur;
    }
}
