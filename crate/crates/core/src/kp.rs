//! Klauder-Perelomov coherent states and the π coefficients of their expansion.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::specfun::ln_factorial;
use crate::spectrum::{SpectrumModel, TruncatedState};

pub const MAX_TRUNCATION: usize = 100_000;
const TAIL_LIMIT: f64 = 1e-16;

/// Energies rescaled by 1/κ so that the su(1,1) models share one disk.
pub fn scaled_energy(model: &SpectrumModel, n: usize) -> f64 {
    match model.su11() {
        None => model.energy(n),
        Some(s) => model.energy(n) / s.kappa,
    }
}

/// Table of π(m, j) for m ≤ n_max + 1 and j ≤ j_max.
///
/// π(m, 0) = 1, π(0, j ≥ 1) = 0 and π(m, j) = π(m−1, j) + e_m π(m+1, j−1).
#[derive(Debug, Clone)]
pub struct PiTable {
    values: Vec<Vec<f64>>,
    pub n_max: usize,
    pub j_max: usize,
    pub scaled: bool,
}

impl PiTable {
    pub fn new(model: &SpectrumModel, n_max: usize, j_max: usize, scaled: bool) -> Self {
        let e = |m: usize| if scaled { scaled_energy(model, m) } else { model.energy(m) };
        let values = pi_dp(n_max, j_max, 1.0, |m| e(m), |a, b| a + b, |a, b| a * b, 0.0);
        PiTable { values, n_max, j_max, scaled }
    }

    /// π(m, j) for 1 ≤ m ≤ n_max + 1.
    pub fn get(&self, m: usize, j: usize) -> f64 {
        self.values[j][m]
    }
}

fn pi_dp<T: Copy>(
    n_max: usize,
    j_max: usize,
    one: T,
    e: impl Fn(usize) -> T,
    add: impl Fn(T, T) -> T,
    mul: impl Fn(T, T) -> T,
    zero: T,
) -> Vec<Vec<T>> {
    let width = |j: usize| n_max + 2 + (j_max - j);
    let mut values: Vec<Vec<T>> = Vec::with_capacity(j_max + 1);
    values.push(vec![one; width(0)]);
    for j in 1..=j_max {
        let mut row = vec![zero; width(j)];
        for m in 1..width(j) {
            row[m] = add(row[m - 1], mul(e(m), values[j - 1][m + 1]));
        }
        values.push(row);
    }
    values
}

/// π(m, j) in exact integer arithmetic for spectra with integer energies.
pub fn pi_table_exact(model: &SpectrumModel, n_max: usize, j_max: usize) -> Result<Vec<Vec<u128>>> {
    let width = n_max + 2 + j_max;
    let mut energies = Vec::with_capacity(width + 1);
    for m in 0..=width {
        let e = model.energy(m);
        if e.fract() != 0.0 || e < 0.0 || e > 2f64.powi(52) {
            return Err(Error::UnsupportedModel("non-integer"));
        }
        energies.push(e as u128);
    }
    let overflow = std::cell::Cell::new(false);
    let table = pi_dp(
        n_max,
        j_max,
        1u128,
        |m| energies[m],
        |a: u128, b: u128| {
            a.checked_add(b).unwrap_or_else(|| {
                overflow.set(true);
                0
            })
        },
        |a: u128, b: u128| {
            a.checked_mul(b).unwrap_or_else(|| {
                overflow.set(true);
                0
            })
        },
        0u128,
    );
    if overflow.get() {
        return Err(Error::Overflow { what: "exact π table" });
    }
    Ok(table)
}

/// Positive number m · 2^e with an unbounded exponent.
#[derive(Debug, Clone, Copy)]
struct Wide {
    m: f64,
    e: i64,
}

impl Wide {
    const ZERO: Wide = Wide { m: 0.0, e: 0 };

    fn new(x: f64) -> Wide {
        Wide { m: x, e: 0 }.norm()
    }

    fn norm(self) -> Wide {
        if self.m == 0.0 {
            return Wide::ZERO;
        }
        let k = self.m.abs().log2().floor() as i64;
        Wide { m: self.m * 2f64.powi(-k as i32), e: self.e + k }
    }

    fn add(self, o: Wide) -> Wide {
        if self.m == 0.0 {
            return o;
        }
        if o.m == 0.0 {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let shift = lo.e - hi.e;
        if shift < -1100 {
            return hi;
        }
        Wide { m: hi.m + lo.m * 2f64.powi(shift as i32), e: hi.e }.norm()
    }

    fn scale(self, x: f64) -> Wide {
        Wide { m: self.m * x, e: self.e }.norm()
    }

    fn to_f64(self) -> f64 {
        if self.e < -1100 {
            0.0
        } else if self.e > 1100 {
            f64::INFINITY
        } else {
            self.m * 2f64.powi(self.e as i32)
        }
    }

    fn mul(self, o: Wide) -> Wide {
        Wide { m: self.m * o.m, e: self.e + o.e }.norm()
    }
}

/// ρ(m, j) = π(m, j)/(m + 2j − 1)!, computed with a division at every step.
fn rho_table(model: &SpectrumModel, m_needed: usize, j_max: usize) -> Vec<Vec<Wide>> {
    let width = |j: usize| m_needed + 2 + (j_max - j);
    let mut rows: Vec<Vec<Wide>> = Vec::with_capacity(j_max + 1);
    let mut row0 = vec![Wide::ZERO; width(0)];
    let mut inv_fact = Wide::new(1.0);
    for (m, slot) in row0.iter_mut().enumerate().skip(1) {
        if m > 1 {
            inv_fact = inv_fact.scale(1.0 / (m - 1) as f64);
        }
        *slot = inv_fact;
    }
    rows.push(row0);
    for j in 1..=j_max {
        let mut row = vec![Wide::ZERO; width(j)];
        for m in 1..width(j) {
            let d = (m + 2 * j - 1) as f64;
            row[m] = row[m - 1].add(rows[j - 1][m + 1].scale(scaled_energy(model, m))).scale(1.0 / d);
        }
        rows.push(row);
    }
    rows
}

/// c_n(r) from its power series in r² (r is |Z| = √κ |z|).
///
/// The series converges only for r < π/2; `j_max = None` doubles the number of
/// terms until three consecutive terms are negligible.
pub fn cn_series(model: &SpectrumModel, n: usize, r: f64, j_max: Option<usize>) -> Result<f64> {
    let mut j = j_max.unwrap_or(64);
    loop {
        let mut rho = rho_table(model, n + 1, j);
        let r2 = r * r;
        let mut pow = Wide::new(1.0);
        for row in rho.iter_mut() {
            row[n + 1] = row[n + 1].mul(pow);
            pow = pow.scale(r2);
        }
        let mut sum = 0.0;
        let mut small = 0;
        let mut mags = Vec::with_capacity(j + 1);
        for k in 0..=j {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let t = sign * rho[k][n + 1].to_f64();
            mags.push(t.abs());
            sum += t;
            if t.abs() < 1e-17 * sum.abs() {
                small += 1;
                if small >= 3 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
        let growing = mags[j] > mags[j / 2];
        if growing || j_max.is_some() || j >= 1024 {
            return Err(Error::NonConvergent { what: "c_n power series", terms: j + 1 });
        }
        j *= 2;
    }
}

/// c_n(r) in closed form: cosh(r)^{−n−b} sinh(r)^n / (n! r^n), or e^{−r²/2}/n! for the harmonic spectrum.
pub fn cn_closed(model: &SpectrumModel, n: usize, r: f64) -> f64 {
    ln_cn_closed(model, n, r).exp()
}

fn ln_cn_closed(model: &SpectrumModel, n: usize, r: f64) -> f64 {
    match model.su11() {
        None => -0.5 * r * r - ln_factorial(n),
        Some(s) => {
            let ln_cosh = r + (-2.0 * r).exp().ln_1p() - std::f64::consts::LN_2;
            let ratio = if r == 0.0 { 0.0 } else { (r.tanh() / r).ln() };
            -s.b * ln_cosh + n as f64 * ratio - ln_factorial(n)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KpState {
    pub z: C64,
    pub zeta: C64,
    pub alpha: f64,
    pub body: TruncatedState,
}

/// ζ = Z tanh|Z|/|Z| with Z = √κ z.
pub fn zeta_of_z(model: &SpectrumModel, z: C64) -> Result<C64> {
    let s = model.require_su11()?;
    let big = z * s.kappa.sqrt();
    let r = big.norm();
    Ok(if r == 0.0 { C64::new(0.0, 0.0) } else { big * (r.tanh() / r) })
}

/// z recovered from a point of the unit disk.
pub fn z_of_zeta(model: &SpectrumModel, zeta: C64) -> Result<C64> {
    let s = model.require_su11()?;
    let r = zeta.norm();
    if r >= 1.0 {
        return Err(Error::DomainViolation(format!("|ζ| = {r} must be < 1")));
    }
    Ok(if r == 0.0 { zeta } else { zeta * (r.atanh() / r) / s.kappa.sqrt() })
}

/// Build the state from a disk point ζ.
pub fn build_kp_zeta(model: &SpectrumModel, zeta: C64, n: Option<usize>) -> Result<KpState> {
    model.validate()?;
    let s = model.require_su11()?;
    let q = zeta.norm_sqr();
    if !(q < 1.0) {
        return Err(Error::DomainViolation(format!("|ζ| = {} must be < 1", q.sqrt())));
    }
    let mut raw = vec![C64::new((1.0 - q).powf(0.5 * s.b), 0.0)];
    let mut k = 0usize;
    let mut norm_sqr = raw[0].norm_sqr();
    loop {
        if let Some(n) = n {
            if k == n {
                break;
            }
        }
        k += 1;
        let next = raw[k - 1] * zeta * ((k as f64 + s.b - 1.0) / k as f64).sqrt();
        raw.push(next);
        norm_sqr += next.norm_sqr();
        if n.is_none() {
            let ratio = q * (k as f64 + s.b) / (k as f64 + 1.0);
            if ratio < 1.0 && next.norm_sqr() * ratio / (1.0 - ratio) < 1e-32 * norm_sqr {
                break;
            }
            if k >= MAX_TRUNCATION {
                break;
            }
        }
    }
    let last = raw[k].norm_sqr();
    let ratio = q * (k as f64 + s.b) / (k as f64 + 1.0);
    let tail = if q == 0.0 {
        0.0
    } else if ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    if tail > TAIL_LIMIT {
        return Err(Error::TruncationInsufficient { truncation: k, tail });
    }
    let coeffs = raw.into_iter().enumerate().map(|(j, c)| c * model.phase(j)).collect();
    Ok(KpState { z: z_of_zeta(model, zeta)?, zeta, alpha: model.alpha, body: TruncatedState::new(coeffs, *model) })
}

/// Build e^{zA⁺ − z̄A⁻}|0⟩ from the disk form of its coefficients.
pub fn build_kp(model: &SpectrumModel, z: C64, n: Option<usize>) -> Result<KpState> {
    if !z.is_finite() {
        return Err(Error::DomainViolation(format!("z = {z}")));
    }
    let zeta = zeta_of_z(model, z)?;
    let mut state = build_kp_zeta(model, zeta, n)?;
    state.z = z;
    Ok(state)
}

/// Coefficients z^n c_n(|Z|) √E(n) e^{−iαe_n} for n = 0..=n_max.
pub fn kp_coeffs_exp_form(model: &SpectrumModel, z: C64, n_max: usize) -> Result<Vec<C64>> {
    let s = model.require_su11()?;
    let r = z.norm();
    let big_r = r * s.kappa.sqrt();
    Ok((0..=n_max)
        .map(|n| {
            if r == 0.0 {
                return if n == 0 { model.phase(0) * cn_closed(model, 0, 0.0) } else { C64::new(0.0, 0.0) };
            }
            let ln_mag = n as f64 * r.ln() + ln_cn_closed(model, n, big_r) + 0.5 * model.e_product(n).ln_abs;
            C64::from_polar(ln_mag.exp(), n as f64 * z.arg() - model.alpha * model.energy(n))
        })
        .collect())
}

/// ⟨s1|s2⟩ from the coefficients; α may differ, the spectrum may not.
pub fn kp_overlap(s1: &KpState, s2: &KpState) -> Result<C64> {
    if !s1.body.model.same_spectrum(&s2.body.model) {
        return Err(Error::ModelMismatch);
    }
    Ok(s1.body.inner(&s2.body))
}

/// ⟨ζ1, α1|ζ2, α2⟩ = [(1−|ζ1|²)(1−|ζ2|²)]^{b/2} Σ (ζ̄1ζ2)^n Γ(n+b)/(n!Γ(b)) e^{−i(α2−α1)e_n}.
pub fn kp_overlap_closed(model: &SpectrumModel, zeta1: C64, alpha1: f64, zeta2: C64, alpha2: f64) -> Result<C64> {
    let s = model.require_su11()?;
    let x = zeta1.conj() * zeta2;
    if !(x.norm() < 1.0) {
        return Err(Error::DomainViolation("|ζ̄1 ζ2| must be < 1".into()));
    }
    let pre = ((1.0 - zeta1.norm_sqr()) * (1.0 - zeta2.norm_sqr())).powf(0.5 * s.b);
    if alpha1 == alpha2 {
        return Ok(pre * (C64::new(1.0, 0.0) - x).powf(-s.b));
    }
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut n = 0usize;
    loop {
        n += 1;
        term *= x * ((n as f64 + s.b - 1.0) / n as f64);
        let phase = C64::from_polar(1.0, -(alpha2 - alpha1) * model.energy(n));
        sum += term * phase;
        if term.norm() < 1e-18 * sum.norm() && n > 10 {
            return Ok(pre * sum);
        }
        if n > MAX_TRUNCATION {
            return Err(Error::NonConvergent { what: "KP overlap", terms: n });
        }
    }
}

pub fn evolve_kp(state: &KpState, t: f64) -> KpState {
    let model = state.body.model.with_alpha(state.alpha + t);
    let coeffs =
        state.body.coeffs.iter().enumerate().map(|(n, c)| c * C64::from_polar(1.0, -model.energy(n) * t)).collect();
    KpState { z: state.z, zeta: state.zeta, alpha: state.alpha + t, body: TruncatedState::new(coeffs, model) }
}
