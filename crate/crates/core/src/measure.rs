//! Resolution-of-identity measures and their quadrature checks.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gk::gk_norm_sum;
use crate::kp::KpState;
use crate::quad::rule;
use crate::specfun::{bessel_i_scaled, bessel_k_scaled, ln_factorial, ln_gamma_ratio};
use crate::spectrum::SpectrumModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureFamily {
    GkPlane,
    KpDisk,
}

/// Radial quadrature node: radius, 1 − r², and weight including density and r dr.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialNode {
    pub r: f64,
    pub q: f64,
    pub weight: f64,
}

/// A rotation-invariant measure dμ = density(r) r dr dφ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    pub family: MeasureFamily,
    pub model: SpectrumModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Gauss-Legendre points per radial panel on the plane.
    pub order: usize,
    /// Radial panel width on the plane.
    pub panel_width: f64,
    /// Gauss-Legendre points on the disk.
    pub disk_nodes: usize,
    /// Largest radius the plane quadrature may reach.
    pub max_radius: f64,
    /// Allowed change when the rule is refined.
    pub refine_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { order: 30, panel_width: 1.0, disk_nodes: 200, max_radius: 400.0, refine_tol: 1e-9 }
    }
}

impl QuadConfig {
    fn refined(&self) -> Self {
        QuadConfig { order: self.order * 2, disk_nodes: self.disk_nodes * 2, ..*self }
    }
}

impl MeasureSpec {
    pub fn gk_plane(model: SpectrumModel) -> Self {
        MeasureSpec { family: MeasureFamily::GkPlane, model }
    }

    pub fn kp_disk(model: SpectrumModel) -> Result<Self> {
        model.require_su11()?;
        Ok(MeasureSpec { family: MeasureFamily::KpDisk, model })
    }

    pub fn domain_radius(&self) -> f64 {
        match self.family {
            MeasureFamily::GkPlane => f64::INFINITY,
            MeasureFamily::KpDisk => 1.0,
        }
    }

    /// Density with respect to r dr dφ.
    pub fn density(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || r >= self.domain_radius() {
            return Err(Error::DomainViolation(format!("r = {r} outside the measure's domain")));
        }
        match (self.family, self.model.su11()) {
            (MeasureFamily::GkPlane, None) => Ok(1.0 / PI),
            (MeasureFamily::GkPlane, Some(s)) => {
                let nu = s.b - 1.0;
                let pre = 2.0 / (PI * s.kappa);
                if r == 0.0 {
                    return Ok(pre / (2.0 * nu));
                }
                let x = 2.0 * r / s.kappa.sqrt();
                Ok(pre * bessel_i_scaled(nu, x)? * bessel_k_scaled(nu, x)?)
            }
            (MeasureFamily::KpDisk, Some(s)) => Ok((s.b - 1.0) / PI / (1.0 - r * r).powi(2)),
            (MeasureFamily::KpDisk, None) => Err(Error::UnsupportedModel("harmonic")),
        }
    }

    /// ln |c_n(r)|² for the family's coherent states; `q` is 1 − r², passed separately to keep precision near the disk edge.
    fn ln_amp2(&self, n: usize, r: f64, q: f64) -> Result<f64> {
        let ln_r = if n == 0 { 0.0 } else { r.ln() };
        match self.family {
            MeasureFamily::GkPlane => {
                let sum = gk_norm_sum(&self.model, r)?;
                if !sum.is_finite() {
                    return Err(Error::Overflow { what: "GK normalization" });
                }
                Ok(2.0 * n as f64 * ln_r - self.model.e_product(n).ln_abs - sum.ln())
            }
            MeasureFamily::KpDisk => {
                let s = self.model.require_su11()?;
                Ok(s.b * q.ln() + 2.0 * n as f64 * ln_r + ln_gamma_ratio(n, s.b) - ln_factorial(n))
            }
        }
    }

    /// Radial nodes (r, 1 − r², weight) approximating ∫ f(r) density(r) r dr, sized for levels ≤ n_max.
    pub fn radial_nodes(&self, n_max: usize, quad: &QuadConfig) -> Result<Vec<RadialNode>> {
        match self.family {
            MeasureFamily::KpDisk => {
                let b = self.model.require_su11()?.b;
                let rl = rule(quad.disk_nodes);
                let mut out = Vec::with_capacity(quad.disk_nodes);
                for (x, w) in rl.nodes.iter().zip(&rl.weights) {
                    // u = r² = 1 − (1 − s)^4 clusters nodes at the rim
                    let t = 0.5 * (1.0 - x);
                    let q = t.powi(4);
                    let r = (1.0 - q).sqrt();
                    let density = (b - 1.0) / PI / (q * q);
                    out.push(RadialNode { r, q, weight: 0.5 * w * 0.5 * 4.0 * t.powi(3) * density });
                }
                Ok(out)
            }
            MeasureFamily::GkPlane => {
                let cutoff = self.plane_cutoff(n_max, quad)?;
                let panels = (cutoff / quad.panel_width).ceil() as usize;
                let h = cutoff / panels as f64;
                let rl = rule(quad.order);
                let mut out = Vec::with_capacity(panels * quad.order);
                for p in 0..panels {
                    let a = h * p as f64;
                    for (x, w) in rl.nodes.iter().zip(&rl.weights) {
                        let r = a + 0.5 * h * (x + 1.0);
                        out.push(RadialNode { r, q: 1.0 - r * r, weight: 0.5 * h * w * r * self.density(r)? });
                    }
                }
                Ok(out)
            }
        }
    }

    fn plane_cutoff(&self, n_max: usize, quad: &QuadConfig) -> Result<f64> {
        let integrand =
            |r: f64| -> Result<f64> { Ok(self.ln_amp2(n_max, r, 1.0 - r * r)? + r.ln() + self.density(r)?.ln()) };
        let mut peak = f64::NEG_INFINITY;
        let mut r = 0.25;
        loop {
            let v = integrand(r)?;
            peak = peak.max(v);
            if v < peak - 60.0 {
                return Ok(r);
            }
            r += 0.25;
            if r > quad.max_radius {
                return Err(Error::QuadratureNonConvergent { change: (v - peak).exp() });
            }
        }
    }
}

fn refine<F>(spec: &MeasureSpec, n_max: usize, quad: &QuadConfig, f: F) -> Result<Vec<f64>>
where
    F: Fn(&[RadialNode]) -> Result<Vec<f64>>,
{
    let coarse = f(&spec.radial_nodes(n_max, quad)?)?;
    let fine = f(&spec.radial_nodes(n_max, &quad.refined())?)?;
    let change = coarse.iter().zip(&fine).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if change > quad.refine_tol {
        return Err(Error::QuadratureNonConvergent { change });
    }
    Ok(fine)
}

/// Diagonal M_nn = 2π ∫ |c_n(r)|² density(r) r dr for n ≤ n_max (off-diagonal terms vanish by rotation).
pub fn identity_diagonal(spec: &MeasureSpec, n_max: usize, quad: &QuadConfig) -> Result<Vec<f64>> {
    refine(spec, n_max, quad, |nodes| {
        (0..=n_max)
            .map(|n| {
                let mut acc = 0.0;
                for nd in nodes {
                    acc += nd.weight * spec.ln_amp2(n, nd.r, nd.q)?.exp();
                }
                Ok(2.0 * PI * acc)
            })
            .collect()
    })
}

/// max_n |M_nn − 1|.
pub fn identity_residual(spec: &MeasureSpec, n_max: usize, quad: &QuadConfig) -> Result<f64> {
    Ok(identity_diagonal(spec, n_max, quad)?.iter().map(|m| (m - 1.0).abs()).fold(0.0, f64::max))
}

/// Relative error of the moment condition at order n ≥ 1.
///
/// On the plane: ∫₀^∞ h(r²) r^{2n−2} 2r dr against E(n−1)/π, where h = density / Σ r^{2k}/E(k).
/// On the disk: |M_{n−1,n−1} − 1|.
pub fn moment_check(spec: &MeasureSpec, n: usize, quad: &QuadConfig) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("moment order starts at 1".into()));
    }
    match spec.family {
        MeasureFamily::KpDisk => {
            let d = identity_diagonal(spec, n - 1, quad)?;
            Ok((d[n - 1] - 1.0).abs())
        }
        MeasureFamily::GkPlane => {
            let v = refine(spec, n - 1, quad, |nodes| {
                let target = spec.model.e_product(n - 1).ln_abs - PI.ln();
                let mut acc = 0.0;
                for nd in nodes {
                    let ln_h_over = 2.0 * (n as f64 - 1.0) * nd.r.ln() - gk_norm_sum(&spec.model, nd.r)?.ln();
                    acc += nd.weight * 2.0 * (ln_h_over - target).exp();
                }
                Ok(vec![acc])
            })?;
            Ok((v[0] - 1.0).abs())
        }
    }
}

/// Reconstruct a Klauder-Perelomov state from ∫ |ζ⟩⟨ζ|target⟩ dμ(ζ) and return the largest coefficient error.
pub fn reproduce_kernel_check(spec: &MeasureSpec, target: &KpState, quad: &QuadConfig) -> Result<f64> {
    if spec.family != MeasureFamily::KpDisk || !spec.model.same_spectrum(&target.body.model) {
        return Err(Error::ModelMismatch);
    }
    let t = &target.body.coeffs;
    let n = t.len() - 1;
    let model = target.body.model;
    let angles = 2 * n + 2;
    let nodes = spec.radial_nodes(n, quad)?;
    let mut recon = vec![C64::new(0.0, 0.0); n + 1];
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    for nd in &nodes {
        let amps: Vec<f64> =
            (0..=n).map(|k| spec.ln_amp2(k, nd.r, nd.q).map(|l| (0.5 * l).exp())).collect::<Result<_>>()?;
        for a in 0..angles {
            let phi = 2.0 * PI * a as f64 / angles as f64;
            for k in 0..=n {
                c[k] = C64::from_polar(amps[k], k as f64 * phi) * model.phase(k);
            }
            let overlap: C64 = c.iter().zip(t).map(|(x, y)| x.conj() * y).sum();
            let weight = nd.weight * 2.0 * PI / angles as f64;
            for k in 0..=n {
                recon[k] += c[k] * overlap * weight;
            }
        }
    }
    Ok(recon.iter().zip(t).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_density_limit_at_origin() {
        let m = SpectrumModel::infinite_well(0.0);
        let spec = MeasureSpec::gk_plane(m);
        let d0 = spec.density(0.0).unwrap();
        let d1 = spec.density(1e-4).unwrap();
        assert!((d0 - d1).abs() < 1e-6 * d0);
    }

    #[test]
    fn disk_density_well() {
        let spec = MeasureSpec::kp_disk(SpectrumModel::infinite_well(0.0)).unwrap();
        assert!((spec.density(0.0).unwrap() - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn harmonic_disk_unsupported() {
        assert!(MeasureSpec::kp_disk(SpectrumModel::harmonic(0.0)).is_err());
    }
}
