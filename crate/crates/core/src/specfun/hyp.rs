//! Generalized hypergeometric series and the confluent functions built on it.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-17;

/// Outcome of a summed power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: C64,
    pub terms_used: usize,
    /// Magnitude of the last term added (zero when the series terminated).
    pub tail_bound: f64,
    /// Largest term magnitude seen; `peak_term / |value|` measures cancellation.
    pub peak_term: f64,
}

impl SeriesResult {
    pub fn digits_lost(&self) -> f64 {
        let v = self.value.norm();
        if v == 0.0 || self.peak_term <= v {
            0.0
        } else {
            (self.peak_term / v).log10()
        }
    }
}

fn nonpositive_integer(c: C64) -> Option<u64> {
    if c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0 && c.re > -1e15 {
        Some((-c.re) as u64)
    } else {
        None
    }
}

/// Sum pFq(numer; denom; x) until three consecutive terms fall below `tol` relative to the sum.
pub fn hyp_pfq(numer: &[C64], denom: &[C64], x: C64, tol: f64) -> Result<SeriesResult> {
    let stop = numer.iter().filter_map(|&a| nonpositive_integer(a)).min();
    for &b in denom {
        if let Some(d) = nonpositive_integer(b) {
            if stop.map_or(true, |k| d < k) {
                return Err(Error::DenominatorPole(b));
            }
        }
    }
    if stop.is_none() {
        if numer.len() > denom.len() + 1 {
            return Err(Error::DomainViolation(format!(
                "{}F{} series diverges for every x ≠ 0",
                numer.len(),
                denom.len()
            )));
        }
        if numer.len() == denom.len() + 1 && x.norm() >= 1.0 {
            return Err(Error::DomainViolation(format!("|x| = {} is outside the unit disk of convergence", x.norm())));
        }
    }

    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut peak: f64 = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let mut ratio = x / (kf + 1.0);
        for &a in numer {
            ratio *= a + kf;
        }
        for &b in denom {
            ratio /= b + kf;
        }
        term *= ratio;
        if term == C64::new(0.0, 0.0) {
            return Ok(SeriesResult { value: sum, terms_used: k + 1, tail_bound: 0.0, peak_term: peak });
        }
        sum += term;
        let t = term.norm();
        if !t.is_finite() || !sum.norm().is_finite() {
            return Err(Error::Overflow { what: "hypergeometric series" });
        }
        peak = peak.max(t);
        if t < tol * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(SeriesResult { value: sum, terms_used: k + 2, tail_bound: t, peak_term: peak });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergent { what: "hypergeometric series", terms: MAX_TERMS })
}

/// ₀F₁(; b; x).
pub fn hyp0f1(b: C64, x: C64) -> Result<C64> {
    let r = hyp_pfq(&[], &[b], x, DEFAULT_TOL)?;
    if r.digits_lost() > 6.0 {
        return Err(Error::PrecisionLoss { what: "0F1", digits: r.digits_lost() });
    }
    Ok(r.value)
}

/// Real-argument ₀F₁ used by normalizations.
pub fn hyp0f1_real(b: f64, x: f64) -> Result<f64> {
    hyp0f1(C64::new(b, 0.0), C64::new(x, 0.0)).map(|v| v.re)
}

/// ₁F₁(a; b; x) evaluated without cancellation where possible.
///
/// Uses Kummer's transformation for Re x < 0 and the Euler integral for parameters
/// large enough that the series itself cancels badly.
pub fn hyp1f1(a: C64, b: C64, x: C64) -> Result<C64> {
    hyp1f1_scaled(a, b, x, C64::new(0.0, 0.0))
}

/// e^{shift} ₁F₁(a; b; x), combining the exponential factors before exponentiating.
pub fn hyp1f1_scaled(a: C64, b: C64, x: C64, shift: C64) -> Result<C64> {
    let (params, arg, pre) = if x.re < 0.0 { (b - a, -x, shift + x) } else { (a, x, shift) };
    let (val, lost) = match hyp_pfq(&[params], &[b], arg, DEFAULT_TOL) {
        Ok(r) => (Some(r.value), r.digits_lost()),
        Err(e @ Error::DenominatorPole(_)) => return Err(e),
        Err(_) => (None, f64::INFINITY),
    };
    if lost <= 5.0 {
        if let Some(v) = val {
            let out = v * pre.exp();
            if out.is_finite() {
                return Ok(out);
            }
        }
    }
    if a.re > 1.0 && (b - a).re > 1.0 {
        let (m, e) = hyp1f1_euler_parts(a, b, x)?;
        let out = m * (e + shift).exp();
        if !out.is_finite() {
            return Err(Error::Overflow { what: "1F1" });
        }
        return Ok(out);
    }
    match val {
        Some(_) if lost > 5.0 => Err(Error::PrecisionLoss { what: "1F1", digits: lost }),
        Some(_) => Err(Error::Overflow { what: "1F1" }),
        None => Err(Error::NonConvergent { what: "1F1", terms: MAX_TERMS }),
    }
}

/// Series for ₁F₁ taken literally, with no transformation.
pub fn hyp1f1_direct(a: C64, b: C64, x: C64) -> Result<C64> {
    hyp_pfq(&[a], &[b], x, DEFAULT_TOL).map(|r| r.value)
}

/// Euler integral ₁F₁(a;b;x) = ∫₀¹ e^{xt} t^{a−1}(1−t)^{b−a−1} dt / ∫₀¹ t^{a−1}(1−t)^{b−a−1} dt.
///
/// Needs Re a > 1 and Re(b − a) > 1 so that the integrand is smooth at both ends.
pub fn hyp1f1_euler(a: C64, b: C64, x: C64) -> Result<C64> {
    let (m, e) = hyp1f1_euler_parts(a, b, x)?;
    let v = m * e.exp();
    if !v.is_finite() {
        return Err(Error::Overflow { what: "1F1 Euler integral" });
    }
    Ok(v)
}

/// ₁F₁ = mantissa · e^{exponent}.
fn hyp1f1_euler_parts(a: C64, b: C64, x: C64) -> Result<(C64, C64)> {
    let p = a - 1.0;
    let q = b - a - 1.0;
    if p.re <= 0.0 || q.re <= 0.0 {
        return Err(Error::DomainViolation("Euler integral needs Re a > 1 and Re(b−a) > 1".into()));
    }
    let (num, gn) = euler_window(p, q, x)?;
    let (den, gd) = euler_window(p, q, C64::new(0.0, 0.0))?;
    Ok((num / den, C64::new(gn - gd, 0.0)))
}

/// Integrate exp(φ(t) − G) over the window where Re φ is within 60 of its maximum G,
/// φ(t) = xt + p ln t + q ln(1 − t).
fn euler_window(p: C64, q: C64, x: C64) -> Result<(C64, f64)> {
    let phase = |t: f64| x * t + p * t.ln() + q * (-t).ln_1p();
    let g = |t: f64| phase(t).re;
    let dg = |t: f64| x.re + p.re / t - q.re / (1.0 - t);
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dg(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tstar = 0.5 * (lo + hi);
    let gmax = g(tstar);
    let edge = |mut inside: f64, mut outside: f64| {
        if g(outside) > gmax - 60.0 {
            return outside;
        }
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if g(mid) > gmax - 60.0 {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        outside
    };
    let left = edge(tstar, 0.0);
    let right = edge(tstar, 1.0);
    let width = right - left;
    let f = |u: f64, v: f64| -> C64 {
        let t = left + width * u;
        let one_minus_t = (1.0 - right) + width * v;
        if t <= 0.0 || one_minus_t <= 0.0 {
            return C64::new(0.0, 0.0);
        }
        (x * t + p * t.ln() + q * one_minus_t.ln() - gmax).exp()
    };
    let tol = (64.0 * f64::EPSILON * (p.norm() + q.norm() + x.norm())).max(1e-14);
    tanh_sinh(f, width, tol).map(|v| (v, gmax))
}

/// Tanh-sinh rule on [0, 1]; `f(u, 1 − u)` receives both the node and its complement.
fn tanh_sinh(f: impl Fn(f64, f64) -> C64, width: f64, tol: f64) -> Result<C64> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let eval = |h: f64, odd_only: bool| {
        let mut acc = C64::new(0.0, 0.0);
        let mut k: i64 = if odd_only { 1 } else { 0 };
        let step = if odd_only { 2 } else { 1 };
        loop {
            let t = k as f64 * h;
            let e = (half_pi * t.sinh()).exp();
            let u = e / (1.0 + e);
            let v = 1.0 / (1.0 + e);
            let w = half_pi * t.cosh() * u * v;
            let mut contrib = f(u, v) * w;
            if k != 0 {
                contrib += f(v, u) * w;
            }
            acc += contrib;
            if t > 1.0 && (w < 1e-300 || contrib.norm() < 1e-20 * acc.norm()) {
                break;
            }
            if t > 6.5 {
                break;
            }
            k += step;
        }
        acc
    };
    let mut h = 0.5;
    let mut sum = eval(h, false);
    let mut prev = sum * h;
    let mut change = f64::INFINITY;
    for _ in 0..10 {
        h *= 0.5;
        sum += eval(h, true);
        let cur = sum * h;
        change = (cur - prev).norm() / cur.norm();
        if change <= tol {
            return Ok(cur * width);
        }
        prev = cur;
    }
    Err(Error::QuadratureNonConvergent { change })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn exp_is_0f0() {
        let r = hyp_pfq(&[], &[], c(1.5), DEFAULT_TOL).unwrap();
        assert!((r.value.re - 1.5f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn terminating_numerator() {
        let r = hyp_pfq(&[c(-2.0)], &[c(1.0)], c(3.0), DEFAULT_TOL).unwrap();
        assert!((r.value.re - (1.0 - 6.0 + 4.5)).abs() < 1e-14);
        assert_eq!(r.tail_bound, 0.0);
    }

    #[test]
    fn pole_detected_unless_terminated_first() {
        assert!(matches!(hyp_pfq(&[c(1.0)], &[c(-3.0)], c(0.1), DEFAULT_TOL), Err(Error::DenominatorPole(_))));
        assert!(hyp_pfq(&[c(-2.0)], &[c(-3.0)], c(0.1), DEFAULT_TOL).is_ok());
    }

    #[test]
    fn two_f_one_outside_disk_rejected() {
        assert!(hyp_pfq(&[c(1.0), c(1.0)], &[c(2.0)], c(1.5), DEFAULT_TOL).is_err());
        let r = hyp_pfq(&[c(1.0), c(1.0)], &[c(2.0)], c(0.5), DEFAULT_TOL).unwrap();
        assert!((r.value.re + (0.5f64).ln() / 0.5).abs() < 1e-13);
    }

    #[test]
    fn kummer_path_matches_direct() {
        let a = C64::new(0.7, 0.2);
        let b = c(3.0);
        let x = C64::new(-4.0, 1.0);
        let d = hyp1f1_direct(a, b, x).unwrap();
        let k = hyp1f1(a, b, x).unwrap();
        assert!((d - k).norm() < 1e-12 * d.norm().max(1.0));
    }

    #[test]
    fn euler_matches_series() {
        let a = C64::new(2.5, 0.3);
        let b = c(6.0);
        for x in [C64::new(1.5, 0.0), C64::new(-2.0, 0.5), C64::new(0.3, -1.0)] {
            let s = hyp1f1_direct(a, b, x).unwrap();
            let e = hyp1f1_euler(a, b, x).unwrap();
            assert!((s - e).norm() < 1e-12 * s.norm(), "{x}: {s} vs {e}");
        }
    }

    #[test]
    fn large_parameter_falls_back() {
        let b = 6.0e5;
        let a = C64::new(b / 2.0 - 300.0, 10.0);
        let x = C64::new(-900.0, 30.0);
        let v = hyp1f1(a, c(b), x).unwrap();
        assert!(v.is_finite());
    }
}
