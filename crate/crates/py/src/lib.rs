//! Python bindings for `gencoh`.

use gencoh::gis::{build_gis_recurrence, observables, GisParams, UncertaintyReport};
use gencoh::gk::{build_gk, evolve, gk_overlap_closed};
use gencoh::kp::{build_kp, kp_overlap_closed};
use gencoh::measure::{identity_residual, moment_check, MeasureSpec, QuadConfig};
use gencoh::{specfun, ErrorClass, Family, SpectrumModel, TruncatedState, C64};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(gencoh, GencohError, PyException, "Base class for library errors.");
create_exception!(gencoh, ConfigError, GencohError, "Invalid or unsupported parameters.");
create_exception!(gencoh, NumericError, GencohError, "A numerical method did not converge.");
create_exception!(gencoh, DomainError, GencohError, "Parameters outside the mathematical domain.");

fn to_py(e: gencoh::Error) -> PyErr {
    let msg = e.to_string();
    match e.class() {
        ErrorClass::Config => ConfigError::new_err(msg),
        ErrorClass::Numeric => NumericError::new_err(msg),
        ErrorClass::Domain => DomainError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gencoh::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// A spectrum with the phase parameter α of its ladder operators.
#[pyclass(name = "Spectrum", module = "gencoh", frozen)]
#[derive(Clone)]
struct PySpectrum {
    inner: SpectrumModel,
}

#[pymethods]
impl PySpectrum {
    #[staticmethod]
    #[pyo3(signature = (alpha = 0.0))]
    fn harmonic(alpha: f64) -> Self {
        PySpectrum { inner: SpectrumModel::harmonic(alpha) }
    }

    #[staticmethod]
    #[pyo3(signature = (alpha = 0.0))]
    fn infinite_well(alpha: f64) -> Self {
        PySpectrum { inner: SpectrumModel::infinite_well(alpha) }
    }

    #[staticmethod]
    #[pyo3(signature = (epsilon, alpha = 0.0))]
    fn anharmonic_x4(epsilon: f64, alpha: f64) -> PyResult<Self> {
        Ok(PySpectrum { inner: SpectrumModel::anharmonic_x4(epsilon, alpha).py()? })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.name()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    #[getter]
    fn epsilon(&self) -> Option<f64> {
        match self.inner.family {
            Family::AnharmonicX4 { epsilon } => Some(epsilon),
            _ => None,
        }
    }

    fn with_alpha(&self, alpha: f64) -> Self {
        PySpectrum { inner: self.inner.with_alpha(alpha) }
    }

    /// e_n
    fn energy(&self, n: usize) -> f64 {
        self.inner.energy(n)
    }

    fn __repr__(&self) -> String {
        match self.epsilon() {
            Some(e) => format!("Spectrum.anharmonic_x4({e}, alpha={})", self.inner.alpha),
            None => format!("Spectrum.{}(alpha={})", self.inner.name(), self.inner.alpha),
        }
    }
}

/// A truncated state in the energy eigenbasis.
#[pyclass(name = "State", module = "gencoh", frozen)]
#[derive(Clone)]
struct PyState {
    inner: TruncatedState,
    #[pyo3(get)]
    family: &'static str,
    #[pyo3(get)]
    z: C64,
    #[pyo3(get)]
    zeta: Option<C64>,
    #[pyo3(get)]
    lam: Option<C64>,
    #[pyo3(get)]
    norm_constant: Option<f64>,
}

#[pymethods]
impl PyState {
    #[getter]
    fn coefficients(&self) -> Vec<C64> {
        self.inner.coeffs.clone()
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    #[getter]
    fn spectrum(&self) -> PySpectrum {
        PySpectrum { inner: self.inner.model }
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn mean_energy(&self) -> f64 {
        self.inner.mean_energy()
    }

    /// ⟨self|other⟩
    fn inner_product(&self, other: &PyState) -> C64 {
        self.inner.inner(&other.inner)
    }

    /// Coefficients of A⁻ applied to the state.
    fn lowered(&self) -> Vec<C64> {
        self.inner.apply_annihilation().coeffs
    }

    /// The state evolved for time t under H.
    fn evolve(&self, t: f64) -> Self {
        let coeffs = self
            .inner
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * C64::from_polar(1.0, -self.inner.model.energy(n) * t))
            .collect();
        PyState { inner: TruncatedState::new(coeffs, self.inner.model), ..self.clone() }
    }

    fn uncertainty(&self) -> PyResult<PyUncertainty> {
        Ok(PyUncertainty { inner: observables(&self.inner).py()? })
    }

    fn __len__(&self) -> usize {
        self.inner.coeffs.len()
    }

    fn __repr__(&self) -> String {
        format!("State(family={:?}, truncation={}, z={})", self.family, self.inner.truncation(), self.z)
    }
}

/// Means and variances of W and P, and the saturation residual.
#[pyclass(name = "Uncertainty", module = "gencoh", frozen)]
struct PyUncertainty {
    inner: UncertaintyReport,
}

#[pymethods]
impl PyUncertainty {
    #[getter]
    fn mean_w(&self) -> f64 {
        self.inner.mean_w
    }
    #[getter]
    fn mean_p(&self) -> f64 {
        self.inner.mean_p
    }
    #[getter]
    fn var_w(&self) -> f64 {
        self.inner.var_w
    }
    #[getter]
    fn var_p(&self) -> f64 {
        self.inner.var_p
    }
    #[getter]
    fn mean_g(&self) -> f64 {
        self.inner.mean_g
    }
    #[getter]
    fn mean_f(&self) -> f64 {
        self.inner.mean_f
    }
    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta
    }
    #[getter]
    fn saturation_residual(&self) -> f64 {
        self.inner.saturation_residual
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (spectrum, z, truncation = None))]
fn gk_state(spectrum: &PySpectrum, z: C64, truncation: Option<usize>) -> PyResult<PyState> {
    let s = build_gk(&spectrum.inner, z, truncation).py()?;
    Ok(PyState { inner: s.body, family: "gk", z, zeta: None, lam: None, norm_constant: Some(s.norm_constant) })
}

#[pyfunction]
#[pyo3(signature = (spectrum, z, truncation = None))]
fn kp_state(spectrum: &PySpectrum, z: C64, truncation: Option<usize>) -> PyResult<PyState> {
    let s = build_kp(&spectrum.inner, z, truncation).py()?;
    Ok(PyState { inner: s.body, family: "kp", z, zeta: Some(s.zeta), lam: None, norm_constant: None })
}

#[pyfunction]
#[pyo3(signature = (spectrum, lam, z, truncation = None))]
fn gis_state(spectrum: &PySpectrum, lam: C64, z: C64, truncation: Option<usize>) -> PyResult<PyState> {
    let p = GisParams::new(lam, z, spectrum.inner.alpha).py()?;
    let s = build_gis_recurrence(&spectrum.inner, &p, truncation).py()?;
    Ok(PyState { inner: s, family: "gis", z, zeta: None, lam: Some(lam), norm_constant: None })
}

/// GK state evolved for time t (equivalently rebuilt at α + t).
#[pyfunction]
fn gk_evolve(spectrum: &PySpectrum, z: C64, t: f64) -> PyResult<PyState> {
    let s = evolve(&build_gk(&spectrum.inner, z, None).py()?, t);
    Ok(PyState { inner: s.body, family: "gk", z, zeta: None, lam: None, norm_constant: Some(s.norm_constant) })
}

#[pyfunction]
fn gk_overlap(spectrum: &PySpectrum, z1: C64, z2: C64) -> PyResult<C64> {
    gk_overlap_closed(&spectrum.inner, z1, z2).py()
}

#[pyfunction]
fn kp_overlap(spectrum: &PySpectrum, zeta1: C64, zeta2: C64) -> PyResult<C64> {
    let a = spectrum.inner.alpha;
    kp_overlap_closed(&spectrum.inner, zeta1, a, zeta2, a).py()
}

#[pyfunction]
fn hyp1f1(a: C64, b: C64, x: C64) -> PyResult<C64> {
    specfun::hyp1f1(a, b, x).py()
}

#[pyfunction]
fn hyp0f1(b: C64, x: C64) -> PyResult<C64> {
    specfun::hyp0f1(b, x).py()
}

#[pyfunction]
fn bessel_i(nu: f64, x: f64) -> PyResult<f64> {
    specfun::bessel_i(nu, x).py()
}

#[pyfunction]
fn bessel_k(nu: f64, x: f64) -> PyResult<f64> {
    specfun::bessel_k(nu, x).py()
}

#[pyfunction]
fn jacobi_p(n: usize, a: f64, b: f64, x: f64) -> f64 {
    specfun::jacobi_p(n, a, b, x)
}

fn measure(spectrum: &PySpectrum, kind: &str) -> PyResult<MeasureSpec> {
    match kind {
        "plane" => Ok(MeasureSpec::gk_plane(spectrum.inner)),
        "disk" => MeasureSpec::kp_disk(spectrum.inner).py(),
        other => Err(ConfigError::new_err(format!("unknown measure {other:?}; expected 'plane' or 'disk'"))),
    }
}

/// |∫ r^{2n} dμ − E(n)| / E(n) for the plane measure.
#[pyfunction]
fn moment_residual(spectrum: &PySpectrum, n: usize) -> PyResult<f64> {
    moment_check(&MeasureSpec::gk_plane(spectrum.inner), n, &QuadConfig::default()).py()
}

/// max_n |⟨n|∫|ψ⟩⟨ψ| dμ|n⟩ − 1| for n ≤ n_max.
#[pyfunction]
#[pyo3(signature = (spectrum, n_max, kind = "disk"))]
fn identity_residual_of(spectrum: &PySpectrum, n_max: usize, kind: &str) -> PyResult<f64> {
    identity_residual(&measure(spectrum, kind)?, n_max, &QuadConfig::default()).py()
}

#[pymodule]
#[pyo3(name = "gencoh")]
fn gencoh_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("GencohError", py.get_type::<GencohError>())?;
    m.add("ConfigError", py.get_type::<ConfigError>())?;
    m.add("NumericError", py.get_type::<NumericError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyUncertainty>()?;
    m.add_function(wrap_pyfunction!(gk_state, m)?)?;
    m.add_function(wrap_pyfunction!(kp_state, m)?)?;
    m.add_function(wrap_pyfunction!(gis_state, m)?)?;
    m.add_function(wrap_pyfunction!(gk_evolve, m)?)?;
    m.add_function(wrap_pyfunction!(gk_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(kp_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(hyp1f1, m)?)?;
    m.add_function(wrap_pyfunction!(hyp0f1, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_i, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_p, m)?)?;
    m.add_function(wrap_pyfunction!(moment_residual, m)?)?;
    m.add("identity_residual", wrap_pyfunction!(identity_residual_of, m)?)?;
    Ok(())
}
