//! Coherent and intelligent states for factorizable discrete spectra.
//!
//! The crate builds Gazeau-Klauder and Klauder-Perelomov coherent states and
//! generalized intelligent states for the harmonic oscillator, the infinite
//! square well and the x⁴-perturbed oscillator, and provides the numerical
//! checks (eigenvalue residuals, uncertainty saturation, resolution of the
//! identity) that certify them.

pub mod error;
pub mod gis;
pub mod gk;
pub mod kp;
pub mod measure;
pub mod quad;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, ErrorClass, Result};
pub use num_complex::Complex64 as C64;
pub use spectrum::{Family, SpectrumModel, TruncatedState};
