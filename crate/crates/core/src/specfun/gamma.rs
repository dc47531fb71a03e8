//! Logarithms of factorial-like products.

pub use statrs::function::gamma::{gamma, ln_gamma};

/// ln Γ(n + c) − ln Γ(c) = Σ_{k=0}^{n-1} ln(c + k), accumulated term by term.
pub fn ln_gamma_ratio(n: usize, c: f64) -> f64 {
    (0..n).map(|k| (c + k as f64).ln()).sum()
}

pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma_ratio(n, 1.0)
}

/// Pochhammer symbol (c)_n for complex c.
pub fn pochhammer(c: num_complex::Complex64, n: usize) -> num_complex::Complex64 {
    (0..n).fold(num_complex::Complex64::new(1.0, 0.0), |acc, k| acc * (c + k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_matches_ln_gamma() {
        for &c in &[0.5, 1.0, 3.0, 7.25] {
            for n in [0usize, 1, 5, 40] {
                let lhs = ln_gamma_ratio(n, c);
                let rhs = ln_gamma(n as f64 + c) - ln_gamma(c);
                assert!((lhs - rhs).abs() < 1e-11 * rhs.abs().max(1.0), "{c} {n}");
            }
        }
    }

    #[test]
    fn factorial_small() {
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-14);
        assert_eq!(ln_factorial(0), 0.0);
    }
}
