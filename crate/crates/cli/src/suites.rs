//! Verification suites shared by `gencoh verify` and the acceptance run.

use std::f64::consts::PI;

use gencoh::gis::observables::observables;
use gencoh::gis::{
    analytic_gk_solution, analytic_kp_solution, build_gis_recurrence, gis_coeffs_closed, harmonic_gaussian,
    laplace_bridge_check, DiskSolution, GisParams, PlaneSolution,
};
use gencoh::gk::{build_gk, evolve, gk_truncation, mean_energy};
use gencoh::kp::{
    build_kp, build_kp_zeta, cn_closed, cn_series, kp_coeffs_exp_form, pi_table_exact, scaled_energy, PiTable,
};
use gencoh::measure::{identity_residual, moment_check, reproduce_kernel_check, MeasureSpec, QuadConfig};
use gencoh::{Error, Family, SpectrumModel, TruncatedState, C64};
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::config::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Eigenvalue,
    Action,
    Temporal,
    Kp,
    Pi,
    Saturation,
    ClosedForm,
    Degeneracy,
    Analytic,
    Limits,
    Moments,
    Identity,
    Kernel,
    All,
}

impl Suite {
    pub const EACH: [Suite; 13] = [
        Suite::Eigenvalue,
        Suite::Action,
        Suite::Temporal,
        Suite::Kp,
        Suite::Pi,
        Suite::Saturation,
        Suite::ClosedForm,
        Suite::Degeneracy,
        Suite::Analytic,
        Suite::Limits,
        Suite::Moments,
        Suite::Identity,
        Suite::Kernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eigenvalue => "eigenvalue",
            Suite::Action => "action",
            Suite::Temporal => "temporal",
            Suite::Kp => "kp",
            Suite::Pi => "pi",
            Suite::Saturation => "saturation",
            Suite::ClosedForm => "closed-form",
            Suite::Degeneracy => "degeneracy",
            Suite::Analytic => "analytic",
            Suite::Limits => "limits",
            Suite::Moments => "moments",
            Suite::Identity => "identity",
            Suite::Kernel => "kernel",
            Suite::All => "all",
        }
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub model: String,
    pub check: String,
    /// Largest residual observed; absent when the check could not be evaluated.
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
}

impl CheckResult {
    fn measured(suite: Suite, model: &SpectrumModel, check: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckResult {
            suite: suite.name(),
            model: model_label(model),
            check: check.into(),
            measured: Some(value),
            tolerance,
            passed: value.is_finite() && value < tolerance,
            note: String::new(),
        }
    }

    fn boolean(
        suite: Suite,
        model: &SpectrumModel,
        check: impl Into<String>,
        ok: bool,
        note: impl Into<String>,
    ) -> Self {
        CheckResult {
            suite: suite.name(),
            model: model_label(model),
            check: check.into(),
            measured: None,
            tolerance: 0.0,
            passed: ok,
            note: note.into(),
        }
    }

    fn failed(suite: Suite, model: &SpectrumModel, check: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        CheckResult {
            suite: suite.name(),
            model: model_label(model),
            check: check.into(),
            measured: None,
            tolerance,
            passed: false,
            note: err.to_string(),
        }
    }

    fn skipped(suite: Suite, model: &SpectrumModel, check: impl Into<String>, why: &str) -> Self {
        CheckResult {
            suite: suite.name(),
            model: model_label(model),
            check: check.into(),
            measured: None,
            tolerance: 0.0,
            passed: true,
            note: format!("skipped: {why}"),
        }
    }
}

pub fn model_label(model: &SpectrumModel) -> String {
    match model.family {
        Family::Harmonic => "harmonic".into(),
        Family::InfiniteWell => "well".into(),
        Family::AnharmonicX4 { epsilon } => format!("x4(eps={})", short_float(epsilon)),
    }
}

fn short_float(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.parse::<f64>() == Ok(x) || x.abs() >= 1e-3 {
        s.to_string()
    } else {
        format!("{x:e}")
    }
}

/// Inputs shared by the suites.
#[derive(Debug, Clone)]
pub struct SuiteContext {
    pub tol: Tolerances,
    /// Restrict state checks to this z instead of the default grid.
    pub z: Option<C64>,
    /// Restrict intelligent-state checks to this λ instead of the default set.
    pub lambda: Option<C64>,
    /// Highest moment order for the measure suite.
    pub n_max: usize,
    pub quad: QuadConfig,
    pub seed: u64,
    pub draws: usize,
}

impl Default for SuiteContext {
    fn default() -> Self {
        SuiteContext {
            tol: Tolerances::default(),
            z: None,
            lambda: None,
            n_max: 8,
            quad: QuadConfig::default(),
            seed: 0x5eed_2024,
            draws: 20,
        }
    }
}

impl SuiteContext {
    fn z_grid(&self) -> Vec<C64> {
        match self.z {
            Some(z) => vec![z],
            None => {
                let v = [-2.5, -1.25, 0.0, 1.25, 2.5];
                v.iter().flat_map(|&re| v.iter().map(move |&im| C64::new(re, im))).collect()
            }
        }
    }

    fn gis_z(&self) -> Vec<C64> {
        match self.z {
            Some(z) => vec![z],
            None => vec![C64::new(0.5, 0.0), C64::new(1.3, 0.2)],
        }
    }

    fn gis_lambdas(&self) -> Vec<C64> {
        match self.lambda {
            Some(l) => vec![l],
            None => vec![C64::new(2.0, 0.0), C64::new(1.0, 1.0), C64::new(0.5, 0.0), C64::from_polar(1.0, PI / 4.0)],
        }
    }
}

pub fn run_suite(suite: Suite, model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    match suite {
        Suite::Eigenvalue => eigenvalue(model, ctx),
        Suite::Action => action(model, ctx),
        Suite::Temporal => temporal(model, ctx),
        Suite::Kp => kp_forms(model, ctx),
        Suite::Pi => pi_recurrence(model, ctx),
        Suite::Saturation => saturation(model, ctx),
        Suite::ClosedForm => closed_form(model, ctx),
        Suite::Degeneracy => degeneracy(model, ctx),
        Suite::Analytic => analytic(model, ctx),
        Suite::Limits => limits(ctx),
        Suite::Moments => moments(model, ctx),
        Suite::Identity => identity(model, ctx),
        Suite::Kernel => kernel(model, ctx),
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_suite(s, model, ctx)).collect(),
    }
}

fn max_of<I: IntoIterator<Item = Result<f64, Error>>>(it: I) -> Result<f64, Error> {
    let mut m: f64 = 0.0;
    for v in it {
        let v = v?;
        if v.is_nan() {
            return Ok(f64::INFINITY);
        }
        m = m.max(v);
    }
    Ok(m)
}

fn record(suite: Suite, model: &SpectrumModel, check: String, tol: f64, r: Result<f64, Error>) -> CheckResult {
    match r {
        Ok(v) => CheckResult::measured(suite, model, check, v, tol),
        Err(e) => CheckResult::failed(suite, model, check, tol, &e),
    }
}

fn gk_n(model: &SpectrumModel, z: C64) -> Result<usize, Error> {
    Ok(gk_truncation(model, z.norm())?.max(120))
}

fn eigenvalue(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    [0.0, 0.37]
        .iter()
        .map(|&alpha| {
            let m = model.with_alpha(alpha);
            let r = max_of(ctx.z_grid().into_iter().map(|z| {
                let s = build_gk(&m, z, Some(gk_n(&m, z)?))?;
                let low = s.body.apply_annihilation();
                let n = s.body.truncation();
                Ok(low
                    .coeffs
                    .iter()
                    .zip(&s.body.coeffs)
                    .take(n)
                    .map(|(a, c)| (a - z * c).norm_sqr())
                    .sum::<f64>()
                    .sqrt())
            }));
            record(Suite::Eigenvalue, model, format!("‖A⁻ψ − zψ‖, α={alpha}"), ctx.tol.eigenvalue, r)
        })
        .collect()
}

fn action(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    [0.0, 0.37]
        .iter()
        .map(|&alpha| {
            let m = model.with_alpha(alpha);
            let r = max_of(ctx.z_grid().into_iter().map(|z| {
                let s = build_gk(&m, z, Some(gk_n(&m, z)?))?;
                Ok((mean_energy(&s) - z.norm_sqr()).abs())
            }));
            record(Suite::Action, model, format!("|⟨H⟩ − |z|²|, α={alpha}"), ctx.tol.action, r)
        })
        .collect()
}

fn temporal(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let m = model.with_alpha(0.37);
    let zs = match ctx.z {
        Some(z) => vec![z],
        None => vec![C64::new(2.5, 2.5), C64::new(-1.0, 0.4), C64::new(0.5, 0.0)],
    };
    let r = max_of(zs.into_iter().flat_map(|z| {
        [0.1, 0.7, 2.0, 2.0 * PI].into_iter().map(move |t| {
            let s = build_gk(&m, z, None)?;
            let rebuilt = build_gk(&m.with_alpha(0.37 + t), z, Some(s.body.truncation()))?;
            Ok(evolve(&s, t).body.max_diff(&rebuilt.body))
        })
    }));
    vec![record(Suite::Temporal, model, "evolve(t) vs rebuild at α+t".into(), ctx.tol.temporal, r)]
}

fn kp_forms(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    if model.su11().is_none() {
        return vec![CheckResult::skipped(
            Suite::Kp,
            model,
            "exp-form vs ζ-form",
            "no disk structure for the harmonic spectrum",
        )];
    }
    let m = model.with_alpha(0.37);
    let zs: Vec<C64> = match ctx.z {
        Some(z) => vec![z],
        None => {
            let v = [-1.4, -0.7, 0.0, 0.7, 1.4];
            let mut g: Vec<C64> = v.iter().flat_map(|&re| v.iter().map(move |&im| C64::new(re, im))).collect();
            g.extend((0..8).map(|k| C64::from_polar(2.0, k as f64 * PI / 4.0 + 0.1)));
            g
        }
    };
    let forms = max_of(zs.into_iter().map(|z| {
        let s = build_kp(&m, z, None)?;
        let e = kp_coeffs_exp_form(&m, z, s.body.truncation())?;
        Ok(s.body.max_diff(&TruncatedState::new(e, m)))
    }));
    let series = max_of([0.25, 0.5, 0.75, 1.0].into_iter().flat_map(|r| {
        (0..=15).map(move |n| {
            let s = cn_series(&m, n, r, None)?;
            let c = cn_closed(&m, n, r);
            Ok(((s - c) / c).abs())
        })
    }));
    vec![
        record(Suite::Kp, model, "exp-form vs ζ-form coefficients, |z| ≤ 2".into(), ctx.tol.kp_forms, forms),
        record(
            Suite::Kp,
            model,
            "c_n series vs closed form (relative), n ≤ 15, |Z| ≤ 1".into(),
            ctx.tol.cn_series,
            series,
        ),
    ]
}

fn pi_recurrence(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let (n_max, j_max) = (20usize, 6usize);
    let mut out = Vec::new();
    match pi_table_exact(model, n_max, j_max) {
        Ok(t) => {
            let e = |k: usize| model.energy(k) as u128;
            let mut bad = 0usize;
            for j in 1..=j_max {
                for n in 0..=n_max {
                    if t[j][n + 1] - t[j][n] != e(n + 1) * t[j - 1][n + 2] {
                        bad += 1;
                    }
                }
            }
            out.push(CheckResult::boolean(
                Suite::Pi,
                model,
                "π(n+1,j) − π(n,j) = e_{n+1} π(n+2,j−1), exact integers, n ≤ 20, j ≤ 6",
                bad == 0,
                format!("{bad} mismatches"),
            ));
        }
        Err(Error::UnsupportedModel(_)) => {}
        Err(e) => out.push(CheckResult::failed(Suite::Pi, model, "exact π table", 0.0, &e)),
    }
    let t = PiTable::new(model, n_max, j_max, true);
    let mut worst: f64 = 0.0;
    for j in 1..=j_max {
        for n in 1..=n_max {
            let lhs = t.get(n + 1, j) - t.get(n, j);
            let rhs = scaled_energy(model, n + 1) * t.get(n + 2, j - 1);
            worst = worst.max(((lhs - rhs) / rhs).abs());
        }
    }
    out.push(CheckResult::measured(
        Suite::Pi,
        model,
        "π recurrence, relative, n ≤ 20, j ≤ 6",
        worst,
        ctx.tol.pi_relative,
    ));
    out
}

fn saturation(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let m = model.with_alpha(0.37);
    let mut sat: Vec<Result<f64, Error>> = Vec::new();
    let mut laws: Vec<Result<f64, Error>> = Vec::new();
    let mut circle: Vec<Result<f64, Error>> = Vec::new();
    for lam in ctx.gis_lambdas() {
        for z in ctx.gis_z() {
            let r = GisParams::new(lam, z, 0.37)
                .and_then(|p| build_gis_recurrence(&m, &p, None))
                .and_then(|s| observables(&s));
            match r {
                Ok(r) => {
                    sat.push(Ok(r.saturation_residual.abs() / (r.var_w * r.var_p)));
                    let rel = |a: f64, b: f64, scale: f64| (a - b).abs() / scale;
                    laws.push(Ok([
                        rel(r.var_w, lam.norm() * r.delta, r.var_w),
                        rel(r.var_p, r.delta / lam.norm(), r.var_p),
                        rel(r.mean_g, 2.0 * lam.re * r.var_p, r.var_p),
                        rel(r.mean_f, 2.0 * lam.im * r.var_p, r.var_p),
                    ]
                    .into_iter()
                    .fold(0.0, f64::max)));
                    if (lam.norm() - 1.0).abs() < 1e-15 {
                        circle.push(Ok((r.var_w - r.var_p).abs()));
                    }
                }
                Err(e) => {
                    sat.push(Err(e.clone()));
                    laws.push(Err(e));
                }
            }
        }
    }
    let mut out = vec![
        record(Suite::Saturation, model, "relative saturation residual".into(), ctx.tol.saturation, max_of(sat)),
        record(Suite::Saturation, model, "variance and mean laws".into(), ctx.tol.laws, max_of(laws)),
    ];
    if !circle.is_empty() {
        out.push(record(Suite::Saturation, model, "|λ| = 1: var_W = var_P".into(), ctx.tol.circle, max_of(circle)));
    }
    out
}

fn closed_form(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(ctx.seed);
    let draws: Vec<GisParams> = (0..ctx.draws)
        .map(|_| {
            let lam = C64::new(rng.random_range(0.1..3.0), rng.random_range(-2.0..2.0));
            let z = C64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            GisParams::new(lam, z, rng.random_range(0.0..1.0)).expect("admissible draw")
        })
        .collect();
    let r = max_of(draws.iter().map(|p| {
        let s = build_gis_recurrence(model, p, None)?;
        let closed = gis_coeffs_closed(model, p, 12);
        let a0 = s.coeffs[0];
        Ok((0..=12).map(|k| (s.coeffs[k] / a0 - closed[k]).norm() / closed[k].norm().max(1.0)).fold(0.0, f64::max))
    }));
    vec![record(
        Suite::ClosedForm,
        model,
        format!("closed Δ-sum vs recurrence, n ≤ 12, {} draws", ctx.draws),
        ctx.tol.closed_form,
        r,
    )]
}

fn degeneracy(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let m = model.with_alpha(0.37);
    let unit = max_of(ctx.gis_z().into_iter().map(|z| {
        let p = GisParams::new(C64::new(1.0, 0.0), z, 0.37)?;
        let s = build_gis_recurrence(&m, &p, None)?;
        let g = build_gk(&m, z, Some(s.truncation()))?;
        Ok(s.max_diff(&g.body.phase_fixed()))
    }));
    let minus_one =
        matches!(GisParams::new(C64::new(-1.0, 0.0), C64::new(0.5, 0.0), 0.0), Err(Error::LambdaDegenerate(_)));
    let flagged = [C64::new(0.0, 1.0), C64::new(-0.3, 0.0), C64::new(-2.0, 1.0)].iter().all(|&lam| {
        let p = GisParams::new(lam, C64::new(0.5, 0.0), 0.0).expect("finite parameters");
        matches!(build_gis_recurrence(&m, &p, None), Err(Error::OutsideAnalyticDomain(_)))
    });
    vec![
        record(Suite::Degeneracy, model, "λ = 1 intelligent state equals GK state".into(), ctx.tol.degeneracy, unit),
        CheckResult::boolean(Suite::Degeneracy, model, "λ = −1 rejected", minus_one, ""),
        CheckResult::boolean(Suite::Degeneracy, model, "Re λ ≤ 0 flagged outside the analytic domain", flagged, ""),
    ]
}

fn binomial_series(alpha: C64, x: C64, n_max: usize) -> Vec<C64> {
    let mut out = vec![C64::new(1.0, 0.0)];
    for k in 1..=n_max {
        out.push(out[k - 1] * (alpha - (k as f64 - 1.0)) * x / k as f64);
    }
    out
}

fn analytic(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    if model.su11().is_none() {
        return vec![CheckResult::skipped(
            Suite::Analytic,
            model,
            "analytic representations",
            "no disk structure for the harmonic spectrum",
        )];
    }
    let jacobi = max_of(ctx.gis_lambdas().into_iter().flat_map(|lam| {
        let model = *model;
        ctx.gis_z().into_iter().map(move |z| {
            let p = GisParams::new(lam, z, 0.0)?;
            let disk = analytic_kp_solution(&model, &p)?;
            let jac = disk.taylor_coefficients(12);
            let taylor: Vec<C64> = match disk {
                DiskSolution::Product { alpha_plus, alpha_minus, w } => {
                    let u = binomial_series(alpha_plus, w, 12);
                    let v = binomial_series(alpha_minus, -w, 12);
                    (0..=12).map(|n| (0..=n).map(|k| u[k] * v[n - k]).sum()).collect()
                }
                DiskSolution::Exponential { s } => binomial_series(C64::new(0.0, 0.0), s, 0),
            };
            Ok(jac.iter().zip(&taylor).map(|(a, b)| (a - b).norm() / b.norm().max(1.0)).fold(0.0, f64::max))
        })
    }));
    let kummer = max_of(ctx.gis_lambdas().into_iter().filter(|l| *l != C64::new(1.0, 0.0)).flat_map(|lam| {
        let model = *model;
        ctx.gis_z().into_iter().flat_map(move |z| {
            [C64::new(0.3, 0.1), C64::new(-1.2, 0.5), C64::new(2.0, -1.0)].into_iter().map(move |x| {
                let p = GisParams::new(lam, z, 0.0)?;
                let PlaneSolution::Kummer(k) = analytic_gk_solution(&model, &p)? else {
                    return Ok(0.0);
                };
                let upper = k.eval_direct(x)?;
                let lower = k.flipped().eval_direct(x)?;
                Ok((upper - lower).norm() / upper.norm().max(1.0))
            })
        })
    }));
    let laplace = GisParams::new(C64::new(2.0, 0.0), C64::new(0.5, 0.0), 0.0)
        .and_then(|p| laplace_bridge_check(model, &p, C64::new(0.3, 0.0)));
    vec![
        record(
            Suite::Analytic,
            model,
            "Jacobi expansion vs binomial Taylor product, n ≤ 12".into(),
            ctx.tol.jacobi,
            jacobi,
        ),
        record(Suite::Analytic, model, "Kummer transformation of the plane solution".into(), ctx.tol.kummer, kummer),
        record(Suite::Analytic, model, "Laplace bridge at λ=2, z=0.5, ζ=0.3".into(), ctx.tol.laplace, laplace),
    ]
}

/// ε = 2/3 degeneracy and ε → 0 limit; independent of the selected model.
pub fn limits(ctx: &SuiteContext) -> Vec<CheckResult> {
    let well = SpectrumModel::infinite_well(0.37);
    let mut out = Vec::new();
    let x4 = SpectrumModel::anharmonic_x4(2.0 / 3.0, 0.37).expect("valid ε");
    let spectra = (0..=200).all(|n| x4.energy(n) == well.energy(n) && x4.e_product(n) == well.e_product(n));
    out.push(CheckResult::boolean(
        Suite::Limits,
        &x4,
        "ε = 2/3: e_n and E(n) equal the well's for n ≤ 200",
        spectra,
        "",
    ));
    let z = ctx.z.unwrap_or(C64::new(1.3, -0.8));
    let states = max_of([
        build_gk(&x4, z, None).and_then(|a| Ok(a.body.max_diff(&build_gk(&well, z, None)?.body))),
        build_kp(&x4, z, None).and_then(|a| Ok(a.body.max_diff(&build_kp(&well, z, None)?.body))),
        GisParams::new(C64::new(1.0, 1.0), z, 0.37)
            .and_then(|p| Ok(build_gis_recurrence(&x4, &p, None)?.max_diff(&build_gis_recurrence(&well, &p, None)?))),
    ]);
    out.push(record(
        Suite::Limits,
        &x4,
        "ε = 2/3: GK, KP and GIS states equal the well's".into(),
        ctx.tol.degeneracy,
        states,
    ));
    let small = SpectrumModel::anharmonic_x4(1e-6, 0.0).expect("valid ε");
    let ho = SpectrumModel::harmonic(0.0);
    let gk = max_of([C64::new(0.5, 0.5), C64::new(2.0, -1.0), z].into_iter().map(|z| {
        let a = build_gk(&small, z, None)?;
        let b = build_gk(&ho, z, None)?;
        Ok((0..=10).map(|n| (a.body.coeffs[n] - b.body.coeffs[n]).norm()).fold(0.0, f64::max))
    }));
    out.push(record(
        Suite::Limits,
        &small,
        "ε = 1e−6: GK coefficients vs oscillator, n ≤ 10".into(),
        ctx.tol.harmonic_gk,
        gk,
    ));
    let lam = C64::new(2.0, 0.5);
    let zp = C64::new(0.6, 0.2);
    let gauss = GisParams::new(lam, zp, 0.0).and_then(|p| {
        let sol = analytic_gk_solution(&small, &p)?;
        max_of(
            [C64::new(0.5, 0.0), C64::new(-0.3, 0.7), C64::new(0.0, -1.0), C64::from_polar(1.0, 2.0)].into_iter().map(
                |x| {
                    let g = harmonic_gaussian(lam, zp, x);
                    Ok((sol.eval(x)? - g).norm() / g.norm())
                },
            ),
        )
    });
    out.push(record(
        Suite::Limits,
        &small,
        "ε = 1e−6: plane solution vs oscillator Gaussian".into(),
        ctx.tol.harmonic_gaussian,
        gauss,
    ));
    out
}

fn moment_tolerance(model: &SpectrumModel, tol: &Tolerances) -> f64 {
    match model.family {
        Family::Harmonic => tol.moments_harmonic,
        Family::InfiniteWell => tol.moments_well,
        Family::AnharmonicX4 { .. } => tol.moments_x4,
    }
}

fn moments(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let spec = MeasureSpec::gk_plane(*model);
    let tol = moment_tolerance(model, &ctx.tol);
    let r = max_of((1..=ctx.n_max).map(|n| moment_check(&spec, n, &ctx.quad)));
    vec![record(Suite::Moments, model, format!("plane moment condition, n ≤ {}", ctx.n_max), tol, r)]
}

fn identity(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    match MeasureSpec::kp_disk(*model) {
        Ok(disk) => vec![record(
            Suite::Identity,
            model,
            "disk resolution of identity, N = 10".into(),
            ctx.tol.identity,
            identity_residual(&disk, 10, &ctx.quad),
        )],
        Err(_) => vec![record(
            Suite::Identity,
            model,
            "plane resolution of identity, N = 10".into(),
            1e-8,
            identity_residual(&MeasureSpec::gk_plane(*model), 10, &ctx.quad),
        )],
    }
}

fn kernel(model: &SpectrumModel, ctx: &SuiteContext) -> Vec<CheckResult> {
    let Ok(spec) = MeasureSpec::kp_disk(*model) else {
        return vec![CheckResult::skipped(
            Suite::Kernel,
            model,
            "kernel reproduction",
            "no disk structure for the harmonic spectrum",
        )];
    };
    let tol = match model.family {
        Family::AnharmonicX4 { .. } => ctx.tol.kernel_x4,
        _ => ctx.tol.kernel_well,
    };
    let m = model.with_alpha(0.3);
    let r = max_of([C64::new(0.0, 0.0), C64::new(0.4, 0.0), C64::from_polar(0.4, 1.1)].into_iter().map(|zeta| {
        let target = build_kp_zeta(&m, zeta, None)?;
        reproduce_kernel_check(&spec, &target, &ctx.quad)
    }));
    vec![record(Suite::Kernel, model, "kernel reproduction, |ζ′| ≤ 0.4".into(), tol, r)]
}
