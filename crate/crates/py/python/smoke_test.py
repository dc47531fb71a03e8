"""Smoke test for the gencoh Python module.

Build and install with `maturin develop -m crates/py/Cargo.toml` (or
`pip install crates/py`), then run `python crates/py/python/smoke_test.py`.
"""

import cmath
import math

import gencoh


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def gk_checks():
    well = gencoh.Spectrum.infinite_well(alpha=0.37)
    z = 2 + 1j
    s = gencoh.gk_state(well, z)
    close(s.norm(), 1.0, 1e-12)
    close(s.mean_energy(), abs(z) ** 2, 1e-9)
    lowered = s.lowered()
    residual = math.sqrt(sum(abs(a - z * c) ** 2 for a, c in zip(lowered[:-1], s.coefficients[:-1])))
    assert residual < 1e-10, residual
    evolved = s.evolve(0.5)
    rebuilt = gencoh.gk_state(well.with_alpha(0.87), z, truncation=s.truncation)
    assert max(abs(a - b) for a, b in zip(evolved.coefficients, rebuilt.coefficients)) < 1e-13
    other = gencoh.gk_state(well, 0.3 - 0.4j, truncation=s.truncation)
    close(s.inner_product(other), gencoh.gk_overlap(well, z, 0.3 - 0.4j), 1e-12)


def harmonic_limit():
    ho = gencoh.Spectrum.harmonic()
    z = 0.7 - 0.2j
    s = gencoh.gk_state(ho, z)
    for n, c in enumerate(s.coefficients[:10]):
        glauber = cmath.exp(-abs(z) ** 2 / 2) * z**n / math.sqrt(math.factorial(n))
        close(c, glauber, 1e-14)


def kp_checks():
    x4 = gencoh.Spectrum.anharmonic_x4(0.4)
    s = gencoh.kp_state(x4, 0.8 + 0.3j)
    close(s.norm(), 1.0, 1e-12)
    t = gencoh.kp_state(x4, -0.2 + 0.5j, truncation=s.truncation)
    close(s.inner_product(t), gencoh.kp_overlap(x4, s.zeta, t.zeta), 1e-10)


def gis_checks():
    for spectrum in (gencoh.Spectrum.infinite_well(), gencoh.Spectrum.anharmonic_x4(0.4)):
        for lam in (2, 1 + 1j, cmath.exp(1j * math.pi / 4)):
            u = gencoh.gis_state(spectrum, lam, 1.3 + 0.2j).uncertainty()
            assert abs(u.saturation_residual) < 1e-8 * u.var_w * u.var_p
            close(u.var_w, abs(lam) * u.delta, 1e-8 * u.var_w)
    try:
        gencoh.gis_state(gencoh.Spectrum.infinite_well(), -1, 0.5)
    except gencoh.DomainError:
        pass
    else:
        raise AssertionError("λ = −1 accepted")
    try:
        gencoh.gis_state(gencoh.Spectrum.infinite_well(), -0.5 + 1j, 0.5)
    except gencoh.GencohError:
        pass
    else:
        raise AssertionError("Re λ < 0 accepted")


def special_functions():
    try:
        import scipy.special as sc
    except ImportError:
        sc = None
    close(gencoh.hyp1f1(1, 2, 1).real, math.e - 1, 1e-14)
    close(gencoh.bessel_i(0.5, 2.0), math.sqrt(2 / (math.pi * 2.0)) * math.sinh(2.0), 1e-13)
    close(gencoh.jacobi_p(3, 0.0, 0.0, 0.4), 0.5 * (5 * 0.4**3 - 3 * 0.4), 1e-15)
    if sc is not None:
        close(gencoh.bessel_k(1.3, 2.2), sc.kv(1.3, 2.2), 1e-12)
        close(gencoh.hyp1f1(0.7, 2.5, -3.0).real, sc.hyp1f1(0.7, 2.5, -3.0), 1e-13)


def measures():
    close(gencoh.moment_residual(gencoh.Spectrum.harmonic(), 4), 0.0, 1e-12)
    assert gencoh.identity_residual(gencoh.Spectrum.infinite_well(), 10) < 1e-6


if __name__ == "__main__":
    gk_checks()
    harmonic_limit()
    kp_checks()
    gis_checks()
    special_functions()
    measures()
    print("smoke test passed")
