use gencoh::specfun::{
    bessel_i, bessel_i_scaled, bessel_k_scaled, hyp0f1_real, hyp1f1, hyp_pfq, jacobi_p, jacobi_p_complex, ln_gamma,
    ln_gamma_ratio,
};
use gencoh::C64;
use proptest::prelude::*;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

proptest! {
    #[test]
    fn kummer_transformation(ar in -3.0f64..3.0, ai in -2.0f64..2.0, b in 0.5f64..6.0, xr in -3.0f64..3.0, xi in -3.0f64..3.0) {
        let a = C64::new(ar, ai);
        let x = C64::new(xr, xi);
        let lhs = hyp_pfq(&[a], &[c(b)], x, 1e-17).unwrap();
        let rhs = hyp_pfq(&[c(b) - a], &[c(b)], -x, 1e-17).unwrap();
        let rhs = x.exp() * rhs.value;
        prop_assert!((lhs.value - rhs).norm() <= 1e-11 * lhs.value.norm().max(1.0));
    }

    #[test]
    fn bessel_i_from_0f1(nu in 0.0f64..5.0, x in 0.01f64..6.0) {
        let direct = bessel_i(nu, 2.0 * x).unwrap();
        let via = x.powf(nu) / ln_gamma(nu + 1.0).exp() * hyp0f1_real(nu + 1.0, x * x).unwrap();
        prop_assert!(((direct - via) / via).abs() < 1e-12);
    }

    #[test]
    fn wronskian_identity(nu in 0.0f64..8.0, x in 0.01f64..200.0) {
        let w = bessel_i_scaled(nu, x).unwrap() * bessel_k_scaled(nu + 1.0, x).unwrap()
            + bessel_i_scaled(nu + 1.0, x).unwrap() * bessel_k_scaled(nu, x).unwrap();
        prop_assert!((w * x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_recurrence(nu in 0.0f64..6.0, x in 0.05f64..50.0) {
        // K_{ν+1} = K_{ν−1} + (2ν/x) K_ν, written with ν → ν+1
        let k0 = bessel_k_scaled(nu, x).unwrap();
        let k1 = bessel_k_scaled(nu + 1.0, x).unwrap();
        let k2 = bessel_k_scaled(nu + 2.0, x).unwrap();
        prop_assert!(((k0 + 2.0 * (nu + 1.0) / x * k1 - k2) / k2).abs() < 1e-12);
    }

    #[test]
    fn gamma_ratio_step(n in 0usize..200, cc in 0.1f64..20.0) {
        let lhs = ln_gamma_ratio(n, cc) + (n as f64 + cc).ln();
        let rhs = ln_gamma_ratio(n + 1, cc);
        prop_assert!((lhs - rhs).abs() <= 1e-15 * rhs.abs().max(1.0));
    }

    #[test]
    fn jacobi_symmetry(n in 0usize..15, a in -0.9f64..4.0, b in -0.9f64..4.0, x in -1.0f64..1.0) {
        let lhs = jacobi_p(n, a, b, -x);
        let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi_p(n, b, a, x);
        prop_assert!((lhs - rhs).abs() < 1e-11 * lhs.abs().max(1.0));
    }
}

/// P_n^{(a,b)}(x) from its explicit finite sum.
fn jacobi_explicit(n: usize, a: C64, b: C64, x: C64) -> C64 {
    let binom = |top: C64, k: usize| -> C64 {
        let mut acc = c(1.0);
        for j in 0..k {
            acc *= (top - j as f64) / (j as f64 + 1.0);
        }
        acc
    };
    (0..=n)
        .map(|s| {
            binom(a + n as f64, n - s)
                * binom(b + n as f64, s)
                * ((x - 1.0) * 0.5).powu(s as u32)
                * ((x + 1.0) * 0.5).powu((n - s) as u32)
        })
        .sum()
}

#[test]
fn jacobi_matches_explicit_sum() {
    for n in 0..=12 {
        for (a, b) in [
            (c(0.5), c(1.5)),
            (C64::new(-3.2, 0.4), C64::new(-4.1, -0.4)),
            (C64::new(-10.0, 1.0), C64::new(-7.0, -1.0)),
        ] {
            for x in [c(0.0), c(0.3), C64::new(-0.2, 0.5)] {
                let r = jacobi_p_complex(n, a, b, x);
                let e = jacobi_explicit(n, a, b, x);
                assert!((r - e).norm() < 1e-10 * e.norm().max(1.0), "n={n} a={a} b={b} x={x}");
            }
        }
    }
}

#[test]
fn confluent_reference_values() {
    // ₁F₁(1; 2; x) = (e^x − 1)/x
    let v = hyp1f1(c(1.0), c(2.0), c(-7.5)).unwrap();
    assert!((v.re - (1.0 - (-7.5f64).exp()) / 7.5).abs() < 1e-15);
    // ₀F₁(; 1/2; x²/4) = cosh x
    let v = hyp0f1_real(0.5, 0.25 * 9.0).unwrap();
    assert!((v - 3f64.cosh()).abs() < 1e-13 * v);
}
