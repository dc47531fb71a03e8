use gencoh::gis::{build_gis_recurrence, GisParams};
use gencoh::gk::build_gk;
use gencoh::kp::build_kp;
use gencoh::{SpectrumModel, C64};

#[test]
fn two_thirds_reproduces_the_well() {
    let x4 = SpectrumModel::anharmonic_x4(2.0 / 3.0, 0.37).unwrap();
    let well = SpectrumModel::infinite_well(0.37);
    assert_eq!(x4.su11(), well.su11());
    let z = C64::new(1.3, -0.8);
    let a = build_gk(&x4, z, None).unwrap();
    let b = build_gk(&well, z, None).unwrap();
    assert!(a.body.max_diff(&b.body) <= 1e-12);
    let a = build_kp(&x4, z, None).unwrap();
    let b = build_kp(&well, z, None).unwrap();
    assert!(a.body.max_diff(&b.body) <= 1e-12);
    let p = GisParams::new(C64::new(1.0, 1.0), z, 0.37).unwrap();
    let a = build_gis_recurrence(&x4, &p, None).unwrap();
    let b = build_gis_recurrence(&well, &p, None).unwrap();
    assert!(a.max_diff(&b) <= 1e-12);
}

#[test]
fn small_epsilon_approaches_the_oscillator() {
    let x4 = SpectrumModel::anharmonic_x4(1e-6, 0.0).unwrap();
    let ho = SpectrumModel::harmonic(0.0);
    for z in [C64::new(0.5, 0.5), C64::new(2.0, -1.0)] {
        let a = build_gk(&x4, z, None).unwrap();
        let b = build_gk(&ho, z, None).unwrap();
        for n in 0..=10 {
            assert!((a.body.coeffs[n] - b.body.coeffs[n]).norm() < 1e-4);
        }
    }
}
