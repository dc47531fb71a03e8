use std::f64::consts::PI;

use gencoh::gis::observables::observables;
use gencoh::gis::{
    analytic_gk_solution, analytic_kp_solution, build_gis_explore, build_gis_recurrence, gis_coeffs_closed,
    gis_state_from_disk, harmonic_gaussian, laplace_bridge_check, DiskSolution, GisParams, PlaneSolution,
};
use gencoh::gk::build_gk;
use gencoh::specfun::{ln_factorial, ln_gamma_ratio};
use gencoh::{Error, SpectrumModel, C64};
use proptest::prelude::*;

fn models() -> Vec<SpectrumModel> {
    vec![SpectrumModel::infinite_well(0.0), SpectrumModel::anharmonic_x4(0.4, 0.0).unwrap()]
}

fn lambdas() -> Vec<C64> {
    vec![C64::new(2.0, 0.0), C64::new(1.0, 1.0), C64::new(0.5, 0.0), C64::from_polar(1.0, PI / 4.0)]
}

fn zs() -> Vec<C64> {
    vec![C64::new(0.5, 0.0), C64::new(1.3, 0.2)]
}

#[test]
fn saturation_and_variance_laws() {
    for m in models() {
        for &lam in &lambdas() {
            for &z in &zs() {
                let p = GisParams::new(lam, z, 0.37).unwrap();
                let s = build_gis_recurrence(&m, &p, None).unwrap();
                let r = observables(&s).unwrap();
                let scale = r.var_w * r.var_p;
                assert!(r.saturation_residual.abs() < 1e-8 * scale, "{lam} {z}: {}", r.saturation_residual);
                assert!((r.var_w - lam.norm() * r.delta).abs() < 1e-8 * r.var_w);
                assert!((r.var_p - r.delta / lam.norm()).abs() < 1e-8 * r.var_p);
                assert!((r.mean_g - 2.0 * lam.re * r.var_p).abs() < 1e-8 * r.mean_g.abs());
                assert!((r.mean_f - 2.0 * lam.im * r.var_p).abs() < 1e-8 * r.mean_g.abs());
                if (lam.norm() - 1.0).abs() < 1e-15 {
                    assert!((r.var_w - r.var_p).abs() < 1e-9);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn closed_form_matches_recurrence(
        lr in 0.1f64..3.0, li in -2.0f64..2.0, zr in -1.5f64..1.5, zi in -1.5f64..1.5,
        alpha in 0.0f64..1.0, x4 in any::<bool>()
    ) {
        let m = if x4 { SpectrumModel::anharmonic_x4(0.4, 0.0).unwrap() } else { SpectrumModel::infinite_well(0.0) };
        let p = GisParams::new(C64::new(lr, li), C64::new(zr, zi), alpha).unwrap();
        let s = build_gis_recurrence(&m, &p, None).unwrap();
        let closed = gis_coeffs_closed(&m, &p, 12);
        let a0 = s.coeffs[0];
        for k in 0..=12 {
            prop_assert!((s.coeffs[k] / a0 - closed[k]).norm() <= 1e-10 * closed[k].norm().max(1.0));
        }
    }
}

#[test]
fn unit_lambda_is_gazeau_klauder() {
    for m in models() {
        let m = m.with_alpha(0.37);
        let z = C64::new(1.3, 0.2);
        let p = GisParams::new(C64::new(1.0, 0.0), z, 0.37).unwrap();
        let s = build_gis_recurrence(&m, &p, None).unwrap();
        let g = build_gk(&m, z, Some(s.truncation())).unwrap();
        let g = g.body.phase_fixed();
        assert!(s.max_diff(&g) < 1e-12);
    }
}

#[test]
fn degenerate_and_outside_domain() {
    assert!(matches!(GisParams::new(C64::new(-1.0, 0.0), C64::new(0.5, 0.0), 0.0), Err(Error::LambdaDegenerate(_))));
    let m = SpectrumModel::infinite_well(0.0);
    for lam in [C64::new(0.0, 1.0), C64::new(-0.3, 0.0), C64::new(-2.0, 1.0)] {
        let p = GisParams::new(lam, C64::new(0.5, 0.0), 0.0).unwrap();
        assert!(matches!(build_gis_recurrence(&m, &p, None), Err(Error::OutsideAnalyticDomain(_))));
        assert!(matches!(analytic_gk_solution(&m, &p), Err(Error::OutsideAnalyticDomain(_))));
        assert!(matches!(analytic_kp_solution(&m, &p), Err(Error::OutsideAnalyticDomain(_))));
        assert!(matches!(build_gis_explore(&m, &p, None), Err(Error::NotNormalizable { .. })));
    }
}

/// Taylor coefficients of e^{cx}₁F₁(a;b;−2cx) as a Cauchy product of two series.
fn kummer_taylor(a: C64, b: f64, c: C64, n_max: usize) -> Vec<C64> {
    let mut e = vec![C64::new(1.0, 0.0)];
    let mut f = vec![C64::new(1.0, 0.0)];
    for k in 1..=n_max {
        let kf = k as f64;
        e.push(e[k - 1] * c / kf);
        f.push(f[k - 1] * (a + kf - 1.0) * (-2.0 * c) / ((b + kf - 1.0) * kf));
    }
    (0..=n_max).map(|n| (0..=n).map(|k| e[k] * f[n - k]).sum()).collect()
}

fn binomial_series(alpha: C64, x: C64, n_max: usize) -> Vec<C64> {
    let mut out = vec![C64::new(1.0, 0.0)];
    for k in 1..=n_max {
        out.push(out[k - 1] * (alpha - (k as f64 - 1.0)) * x / k as f64);
    }
    out
}

#[test]
fn plane_taylor_coefficients_reproduce_state() {
    for m in models() {
        let s11 = m.su11().unwrap();
        let p = GisParams::new(C64::new(2.0, 0.0), C64::new(0.5, 0.0), 0.0).unwrap();
        let PlaneSolution::Kummer(k) = analytic_gk_solution(&m, &p).unwrap() else { panic!() };
        let t = kummer_taylor(k.a, s11.b, k.c, 10);
        let closed = gis_coeffs_closed(&m, &p, 10);
        for n in 0..=10 {
            let b_n = t[n] * (0.5 * m.e_product(n).ln_abs).exp();
            assert!((b_n - closed[n]).norm() < 1e-10 * closed[n].norm().max(1e-3), "n={n}");
        }
    }
}

#[test]
fn jacobi_expansion_matches_taylor_and_recurrence() {
    for m in models() {
        let s11 = m.su11().unwrap();
        for &lam in &lambdas() {
            for &z in &zs() {
                let p = GisParams::new(lam, z, 0.37).unwrap();
                let disk = analytic_kp_solution(&m, &p).unwrap();
                let DiskSolution::Product { alpha_plus, alpha_minus, w } = disk else { panic!() };
                let jac = disk.taylor_coefficients(12);
                let u = binomial_series(alpha_plus, w, 12);
                let v = binomial_series(alpha_minus, -w, 12);
                for n in 0..=12 {
                    let taylor: C64 = (0..=n).map(|k| u[k] * v[n - k]).sum();
                    assert!((jac[n] - taylor).norm() < 1e-10 * taylor.norm().max(1.0), "λ={lam} z={z} n={n}");
                }
                let closed = gis_coeffs_closed(&m, &p, 12);
                for n in 0..=12 {
                    let weight = (0.5 * (ln_factorial(n) - ln_gamma_ratio(n, s11.b))).exp();
                    let b_n = jac[n] * weight * m.with_alpha(0.37).phase(n);
                    assert!((b_n - closed[n]).norm() < 1e-10 * closed[n].norm().max(1.0));
                }
                let from_disk = gis_state_from_disk(&m, &p, None).unwrap();
                let rec = build_gis_recurrence(&m, &p, None).unwrap();
                assert!(from_disk.max_diff(&rec) < 1e-9, "λ={lam} z={z}: {}", from_disk.max_diff(&rec));
            }
        }
    }
}

#[test]
fn kummer_identity_on_plane_solution() {
    let m = SpectrumModel::infinite_well(0.0);
    let p = GisParams::new(C64::new(1.0, 1.0), C64::new(1.3, 0.2), 0.0).unwrap();
    let PlaneSolution::Kummer(k) = analytic_gk_solution(&m, &p).unwrap() else { panic!() };
    for x in [C64::new(0.3, 0.1), C64::new(-1.2, 0.5), C64::new(2.0, -1.0)] {
        let upper = k.eval_direct(x).unwrap();
        let lower = k.flipped().eval_direct(x).unwrap();
        assert!((upper - lower).norm() < 1e-11 * upper.norm().max(1.0));
    }
}

#[test]
fn laplace_bridge_calibrated_point() {
    let m = SpectrumModel::infinite_well(0.0);
    let p = GisParams::new(C64::new(2.0, 0.0), C64::new(0.5, 0.0), 0.0).unwrap();
    let r = laplace_bridge_check(&m, &p, C64::new(0.3, 0.0)).unwrap();
    assert!(r < 1e-6, "residual {r}");
    let disk = analytic_kp_solution(&m, &p).unwrap();
    assert!((disk.eval(C64::new(0.3, 0.0)).re - 1.1580148537811956).abs() < 1e-13);
}

#[test]
fn laplace_bridge_other_points() {
    let x4 = SpectrumModel::anharmonic_x4(0.4, 0.0).unwrap();
    let well = SpectrumModel::infinite_well(0.0);
    for (m, lam, z, zeta) in [
        (well, C64::new(1.0, 1.0), C64::new(1.3, 0.2), C64::new(0.2, 0.1)),
        (well, C64::new(1.0, 0.0), C64::new(0.5, 0.0), C64::new(0.3, 0.0)),
        (x4, C64::new(2.0, 0.0), C64::new(0.5, 0.0), C64::new(0.25, -0.05)),
    ] {
        let p = GisParams::new(lam, z, 0.0).unwrap();
        let r = laplace_bridge_check(&m, &p, zeta).unwrap();
        assert!(r < 1e-6, "{lam} {z} {zeta}: {r}");
    }
}

#[test]
fn harmonic_limit_of_plane_solution() {
    let m = SpectrumModel::anharmonic_x4(1e-6, 0.0).unwrap();
    let lam = C64::new(2.0, 0.5);
    let z = C64::new(0.6, 0.2);
    let p = GisParams::new(lam, z, 0.0).unwrap();
    let sol = analytic_gk_solution(&m, &p).unwrap();
    for x in [C64::new(0.5, 0.0), C64::new(-0.3, 0.7), C64::new(0.0, -1.0), C64::from_polar(1.0, 2.0)] {
        let psi = sol.eval(x).unwrap();
        let g = harmonic_gaussian(lam, z, x);
        assert!((psi - g).norm() < 1e-3 * g.norm(), "{x}: {psi} vs {g}");
    }
}
