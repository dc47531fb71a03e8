//! Jacobi polynomials by the three-term recurrence in the degree.

use num_complex::Complex64 as C64;

/// P_n^{(a,b)}(x) for complex parameters and argument.
pub fn jacobi_p_complex(n: usize, a: C64, b: C64, x: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    if n == 0 {
        return one;
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) * 0.5;
    if n == 1 {
        return p1;
    }
    let (mut pm2, mut pm1) = (one, p1);
    for k in 2..=n {
        let k = k as f64;
        let s = a + b + 2.0 * k;
        let c0 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p = (c1 * pm1 - c2 * pm2) / c0;
        pm2 = pm1;
        pm1 = p;
    }
    pm1
}

pub fn jacobi_p(n: usize, a: f64, b: f64, x: f64) -> f64 {
    jacobi_p_complex(n, C64::new(a, 0.0), C64::new(b, 0.0), C64::new(x, 0.0)).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_special_case() {
        let x = 0.3;
        assert!((jacobi_p(2, 0.0, 0.0, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
        assert!((jacobi_p(3, 0.0, 0.0, x) - 0.5 * (5.0 * x.powi(3) - 3.0 * x)).abs() < 1e-15);
    }

    #[test]
    fn value_at_one() {
        // P_n^{(a,b)}(1) = (a+1)_n / n!
        let (a, b) = (1.7, -0.4);
        for n in 0..12 {
            let mut expect = 1.0;
            for k in 0..n {
                expect *= (a + 1.0 + k as f64) / (k as f64 + 1.0);
            }
            assert!((jacobi_p(n, a, b, 1.0) - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }
}
