//! Modified Bessel functions of real order and positive real argument.

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;

const LN_MAX: f64 = 709.0;
const LN_MIN: f64 = -708.0;

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::DomainViolation(format!("Bessel argument x = {x} must be finite and ≥ 0")));
    }
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::DomainViolation(format!("Bessel order ν = {nu} must be finite and ≥ 0")));
    }
    Ok(())
}

/// Large-argument expansion of e^{−x} I_ν(x), when it reaches full precision.
fn i_scaled_asymptotic(nu: f64, x: f64) -> Option<f64> {
    if x < 50.0 || x < nu * nu {
        return None;
    }
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let next = -term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Some(sum / (2.0 * std::f64::consts::PI * x).sqrt());
        }
    }
    None
}

/// ln I_ν(x), from the ascending series summed in log space for moderate x.
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    if let Some(v) = i_scaled_asymptotic(nu, x) {
        return Ok(v.ln() + x);
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let y = 0.25 * x * x;
    let prefactor = nu * (0.5 * x).ln() - ln_gamma(nu + 1.0);
    let mut lt = 0.0_f64;
    let mut terms = vec![0.0_f64];
    let mut k = 0usize;
    loop {
        k += 1;
        lt += y.ln() - (k as f64).ln() - (nu + k as f64).ln();
        terms.push(lt);
        let peak = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if (k as f64) > x && lt < peak - 40.0 {
            break;
        }
        if k > 100_000 {
            return Err(Error::NonConvergent { what: "Bessel I series", terms: k });
        }
    }
    let peak = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = terms.iter().map(|t| (t - peak).exp()).sum();
    Ok(prefactor + peak + s.ln())
}

/// e^{−x} I_ν(x).
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    if let Some(v) = i_scaled_asymptotic(nu, x) {
        return Ok(v);
    }
    Ok((ln_bessel_i(nu, x)? - x).exp())
}

pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let l = ln_bessel_i(nu, x)?;
    if l > LN_MAX {
        return Err(Error::Overflow { what: "Bessel I" });
    }
    Ok(l.exp())
}

/// ln K_ν(x) from K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    if x == 0.0 {
        return Ok(f64::INFINITY);
    }
    let f = |t: f64| -x * (t.cosh() - 1.0) + nu * t;
    let tstar = (nu / x).asinh();
    let m = f(tstar);
    let width = 1.0 / (x * tstar.cosh()).sqrt();
    let h = (width / 3.0).min(0.1);
    let integrand = |t: f64| {
        let g = -x * (t.cosh() - 1.0);
        0.5 * ((g + nu * t - m).exp() + (g - nu * t - m).exp())
    };
    let mut sum = 0.5 * integrand(0.0);
    let mut k = 1usize;
    loop {
        let t = k as f64 * h;
        sum += integrand(t);
        if t > tstar && f(t) - m < -45.0 {
            break;
        }
        k += 1;
        if k > 10_000_000 {
            return Err(Error::NonConvergent { what: "Bessel K integral", terms: k });
        }
    }
    Ok((sum * h).ln() + m - x)
}

/// e^{x} K_ν(x).
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    let l = ln_bessel_k(nu, x)? + x;
    if l > LN_MAX {
        return Err(Error::Overflow { what: "scaled Bessel K" });
    }
    Ok(l.exp())
}

pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let l = ln_bessel_k(nu, x)?;
    if !(LN_MIN..=LN_MAX).contains(&l) {
        return Err(Error::Overflow { what: "Bessel K" });
    }
    Ok(l.exp())
}
