//! Generalized intelligent states: eigenstates of (1 + λ)A⁻ + (1 − λ)A⁺ with eigenvalue 2z.

pub mod analytic;
pub mod observables;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{SpectrumModel, TruncatedState};

pub use analytic::{
    analytic_gk_solution, analytic_kp_solution, gis_state_from_disk, harmonic_gaussian, laplace_bridge_check,
    DiskSolution, KummerSolution, PlaneSolution,
};
pub use observables::{observables, UncertaintyReport};

pub const MAX_TRUNCATION: usize = 5000;
const STOP_RATIO: f64 = 1e-26;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GisParams {
    pub lambda: C64,
    pub z: C64,
    pub alpha: f64,
}

impl GisParams {
    /// Rejects λ = −1, where the eigenvalue equation has no normalizable solution.
    pub fn new(lambda: C64, z: C64, alpha: f64) -> Result<Self> {
        if !lambda.is_finite() || !z.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidParameter("λ, z and α must be finite".into()));
        }
        if lambda == C64::new(-1.0, 0.0) {
            return Err(Error::LambdaDegenerate(lambda));
        }
        Ok(GisParams { lambda, z, alpha })
    }

    pub fn in_analytic_domain(&self) -> bool {
        self.lambda.re > 0.0
    }

    /// w = √((λ − 1)/(λ + 1)), the geometric decay rate of the coefficients.
    pub fn w(&self) -> C64 {
        ((self.lambda - 1.0) / (self.lambda + 1.0)).sqrt()
    }
}

/// Build the state from the three-term recurrence, requiring Re λ > 0.
pub fn build_gis_recurrence(model: &SpectrumModel, params: &GisParams, n: Option<usize>) -> Result<TruncatedState> {
    if !params.in_analytic_domain() {
        return Err(Error::OutsideAnalyticDomain(params.lambda));
    }
    build_gis_explore(model, params, n)
}

/// Same as [`build_gis_recurrence`] without the domain guard; non-decaying
/// coefficients are reported as `NotNormalizable`.
pub fn build_gis_explore(model: &SpectrumModel, params: &GisParams, n: Option<usize>) -> Result<TruncatedState> {
    model.validate()?;
    let params = GisParams::new(params.lambda, params.z, params.alpha)?;
    let model = model.with_alpha(params.alpha);
    let lam = params.lambda;
    let two_z = 2.0 * params.z;
    let cap = n.unwrap_or(MAX_TRUNCATION);
    let mut a = vec![C64::new(1.0, 0.0)];
    let mut sum = 1.0;
    let mut quiet = 0;
    for k in 0..cap {
        let prev = if k == 0 { C64::new(0.0, 0.0) } else { a[k - 1] };
        let next =
            (two_z * a[k] - (1.0 - lam) * model.energy(k).sqrt() * prev) / ((1.0 + lam) * model.energy(k + 1).sqrt());
        if !next.is_finite() {
            return Err(Error::NotNormalizable { truncation: k + 1, tail: f64::INFINITY });
        }
        a.push(next);
        let w = next.norm_sqr() * (model.energy(k + 2) + 1.0);
        sum += next.norm_sqr();
        if n.is_none() {
            if w < STOP_RATIO * sum {
                quiet += 1;
                if quiet >= 4 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    let last = a.len() - 1;
    let tail = a[last].norm_sqr() * (model.energy(last + 1) + 1.0) / sum;
    let limit = if n.is_some() { 1e-16 } else { STOP_RATIO * 1e4 };
    if !(tail < limit) {
        return Err(Error::NotNormalizable { truncation: last, tail });
    }
    let coeffs = a.into_iter().enumerate().map(|(k, c)| c * model.phase(k)).collect();
    Ok(TruncatedState::new(coeffs, model).normalized().phase_fixed())
}

/// Table of Δ(n, h) = Δ(n−1, h) + e_{n−1} Δ(n−2, h−1), Δ(n, 0) = 1.
#[derive(Debug, Clone)]
pub struct DeltaTable {
    values: Vec<Vec<f64>>,
}

impl DeltaTable {
    pub fn new(model: &SpectrumModel, n_max: usize) -> Self {
        let h_max = n_max / 2;
        let mut values = vec![vec![0.0; h_max + 1]; n_max + 1];
        for row in values.iter_mut() {
            row[0] = 1.0;
        }
        for n in 2..=n_max {
            for h in 1..=n / 2 {
                values[n][h] = values[n - 1][h] + model.energy(n - 1) * values[n - 2][h - 1];
            }
        }
        DeltaTable { values }
    }

    pub fn get(&self, n: usize, h: usize) -> f64 {
        if 2 * h > n {
            0.0
        } else {
            self.values[n][h]
        }
    }
}

/// Unnormalized coefficient a_n (with a_0 = 1) from the closed Δ-sum.
pub fn gis_coeff_closed(model: &SpectrumModel, params: &GisParams, n: usize) -> C64 {
    gis_coeffs_closed(model, params, n)[n]
}

/// Unnormalized coefficients a_0..=a_{n_max} from the closed Δ-sum.
pub fn gis_coeffs_closed(model: &SpectrumModel, params: &GisParams, n_max: usize) -> Vec<C64> {
    let model = model.with_alpha(params.alpha);
    let table = DeltaTable::new(&model, n_max);
    let lam = params.lambda;
    let two_z = 2.0 * params.z;
    let g = -(1.0 - lam * lam);
    (0..=n_max)
        .map(|n| {
            let mut sum = C64::new(0.0, 0.0);
            for h in 0..=n / 2 {
                sum += g.powu(h as u32) * two_z.powu((n - 2 * h) as u32) * table.get(n, h);
            }
            let scale = (1.0 + lam).powu(n as u32) * (0.5 * model.e_product(n).ln_abs).exp();
            sum / scale * model.phase(n)
        })
        .collect()
}
