use std::f64::consts::PI;

use gencoh::gk::gk_norm_sum;
use gencoh::kp::build_kp_zeta;
use gencoh::measure::{identity_residual, moment_check, reproduce_kernel_check, MeasureSpec, QuadConfig};
use gencoh::quad::gauss_legendre;
use gencoh::specfun::{bessel_i_scaled, bessel_k_scaled};
use gencoh::{SpectrumModel, C64};

fn quad() -> QuadConfig {
    QuadConfig::default()
}

#[test]
fn harmonic_plane_moments() {
    let spec = MeasureSpec::gk_plane(SpectrumModel::harmonic(0.0));
    for n in 1..=8 {
        let r = moment_check(&spec, n, &quad()).unwrap();
        assert!(r < 1e-12, "n={n}: {r}");
    }
}

#[test]
fn well_plane_moments() {
    let spec = MeasureSpec::gk_plane(SpectrumModel::infinite_well(0.0));
    for n in 1..=8 {
        let r = moment_check(&spec, n, &quad()).unwrap();
        assert!(r < 1e-6, "n={n}: {r}");
    }
}

#[test]
fn x4_plane_moments() {
    let spec = MeasureSpec::gk_plane(SpectrumModel::anharmonic_x4(0.4, 0.0).unwrap());
    for n in 1..=8 {
        let r = moment_check(&spec, n, &quad()).unwrap();
        assert!(r < 1e-5, "n={n}: {r}");
    }
}

/// The Bessel order as printed (K_1 for the well) fails the moment condition;
/// this pins the corrected order K_{b−1} used by the library.
#[test]
fn printed_bessel_order_fails_moments() {
    let m = SpectrumModel::infinite_well(0.0);
    let moment = |n: usize| {
        let mut acc = 0.0;
        for k in 0..80 {
            let a = 0.5 * k as f64;
            acc += gauss_legendre(30, a, a + 0.5, |r: f64| {
                if r == 0.0 {
                    return 0.0;
                }
                let d = (2.0 / PI) * bessel_i_scaled(2.0, 2.0 * r).unwrap() * bessel_k_scaled(1.0, 2.0 * r).unwrap();
                d / gk_norm_sum(&m, r).unwrap() * r.powi(2 * n as i32 - 2) * 2.0 * r
            });
        }
        acc * PI / m.e_product(n - 1).exp()
    };
    assert!((moment(1) - 1.0).abs() > 0.1);
    assert!((moment(3) - 1.0).abs() > 0.1);
}

#[test]
fn identity_residuals() {
    let h = MeasureSpec::gk_plane(SpectrumModel::harmonic(0.0));
    assert!(identity_residual(&h, 10, &quad()).unwrap() < 1e-8);
    for m in [SpectrumModel::infinite_well(0.0), SpectrumModel::anharmonic_x4(0.4, 0.0).unwrap()] {
        let d = MeasureSpec::kp_disk(m).unwrap();
        let r = identity_residual(&d, 10, &quad()).unwrap();
        assert!(r < 1e-6, "{}: {r}", m.name());
        let p = MeasureSpec::gk_plane(m);
        let r = identity_residual(&p, 8, &quad()).unwrap();
        assert!(r < 1e-5, "{} plane: {r}", m.name());
    }
}

#[test]
fn kernel_reproduction() {
    for (m, tol) in [(SpectrumModel::infinite_well(0.3), 1e-6), (SpectrumModel::anharmonic_x4(0.4, 0.3).unwrap(), 1e-5)]
    {
        let spec = MeasureSpec::kp_disk(m).unwrap();
        for zeta in [C64::new(0.0, 0.0), C64::new(0.4, 0.0), C64::from_polar(0.4, 1.1)] {
            let target = build_kp_zeta(&m, zeta, None).unwrap();
            let r = reproduce_kernel_check(&spec, &target, &quad()).unwrap();
            assert!(r < tol, "{} ζ={zeta}: {r}", m.name());
        }
    }
}

#[test]
fn densities_positive() {
    for m in [
        SpectrumModel::harmonic(0.0),
        SpectrumModel::infinite_well(0.0),
        SpectrumModel::anharmonic_x4(0.4, 0.0).unwrap(),
    ] {
        let p = MeasureSpec::gk_plane(m);
        for r in [0.0, 0.1, 1.0, 10.0, 100.0] {
            assert!(p.density(r).unwrap() > 0.0);
        }
        if let Ok(d) = MeasureSpec::kp_disk(m) {
            for r in [0.0, 0.5, 0.999] {
                assert!(d.density(r).unwrap() > 0.0);
            }
            assert!(d.density(1.0).is_err());
        }
    }
}
