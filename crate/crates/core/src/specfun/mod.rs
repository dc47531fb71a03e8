pub mod bessel;
pub mod gamma;
pub mod hyp;
pub mod jacobi;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled, ln_bessel_i, ln_bessel_k};
pub use gamma::{ln_factorial, ln_gamma, ln_gamma_ratio, pochhammer};
pub use hyp::{hyp0f1, hyp0f1_real, hyp1f1, hyp1f1_direct, hyp1f1_euler, hyp1f1_scaled, hyp_pfq, SeriesResult};
pub use jacobi::{jacobi_p, jacobi_p_complex};
