use std::io::Write;
use std::path::{Path, PathBuf};

use gencoh::gis::{build_gis_explore, build_gis_recurrence, observables, GisParams};
use gencoh::gk::{build_gk, mean_energy};
use gencoh::kp::build_kp;
use gencoh::{SpectrumModel, TruncatedState, C64};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{BuildArgs, Cli, Command, Grid, LimitsArgs, ReportFormat, StateArgs, SweepArgs, VerifyArgs};
use crate::config::{OutputFormat, RunConfig, StateFamily};
use crate::output::{
    coefficient_rows, text_table, BuildOutput, Complex, StateSummary, SweepRow, VerifyReport, BUILD_SCHEMA,
    VERIFY_SCHEMA,
};
use crate::suites::{limits, run_suite, CheckResult, SuiteContext};
use crate::CliError;

pub const MAX_SWEEP_POINTS: usize = 100_000;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let base = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Build(a) => build(base, a),
        Command::Verify(a) => verify(base, a),
        Command::Sweep(a) => sweep(base, a),
        Command::Limits(a) => limits_report(base, a),
    }
}

fn merged(
    base: RunConfig,
    state: &StateArgs,
    format: Option<OutputFormat>,
    output: Option<PathBuf>,
) -> Result<RunConfig, CliError> {
    base.overlay(state.to_config(format, output), &state.tol)
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s.into_bytes()
}

/// Path of the metadata file written next to CSV output.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Build the state described by `cfg`.
pub fn build_state(cfg: &RunConfig) -> Result<BuildOutput, CliError> {
    let model = cfg.spectrum()?;
    let family = cfg.family.unwrap_or(StateFamily::Gk);
    let z = cfg.z();
    let mut summary = StateSummary {
        schema: BUILD_SCHEMA,
        model,
        family,
        z: z.into(),
        zeta: None,
        lambda: None,
        truncation: 0,
        norm: 0.0,
        mean_energy: 0.0,
        norm_constant: None,
        uncertainty: None,
    };
    let body = match family {
        StateFamily::Gk => {
            let s = build_gk(&model, z, cfg.truncation)?;
            summary.norm_constant = Some(s.norm_constant);
            summary.mean_energy = mean_energy(&s);
            s.body
        }
        StateFamily::Kp => {
            let s = build_kp(&model, z, cfg.truncation)?;
            summary.zeta = Some(s.zeta.into());
            summary.mean_energy = s.body.mean_energy();
            s.body
        }
        StateFamily::Gis => {
            let lambda =
                cfg.lambda.map(|l| l.0).ok_or_else(|| CliError::Config("the gis family needs --lambda".into()))?;
            let p = GisParams::new(lambda, z, model.alpha)?;
            let s = build_gis_recurrence(&model, &p, cfg.truncation)?;
            summary.lambda = Some(lambda.into());
            summary.mean_energy = s.mean_energy();
            summary.uncertainty = Some(observables(&s)?);
            s
        }
    };
    summary.truncation = body.truncation();
    summary.norm = body.norm();
    Ok(BuildOutput { summary, coefficients: coefficient_rows(&body.coeffs) })
}

fn build(base: RunConfig, a: BuildArgs) -> Result<(), CliError> {
    let cfg = merged(base, &a.state, a.format, a.output)?;
    let out = build_state(&cfg)?;
    let path = cfg.output.as_deref();
    match cfg.format.unwrap_or_default() {
        OutputFormat::Json => write_to(path, &to_json(&out)),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &out.coefficients {
                w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            write_to(path, &bytes)?;
            match path {
                Some(p) => std::fs::write(sidecar_path(p), to_json(&out.summary))?,
                None => eprint!("{}", String::from_utf8_lossy(&to_json(&out.summary))),
            }
            Ok(())
        }
    }
}

fn context(cfg: &RunConfig) -> SuiteContext {
    SuiteContext {
        tol: cfg.tolerances,
        z: cfg.z.map(|c| c.0),
        lambda: cfg.lambda.map(|c| c.0),
        ..SuiteContext::default()
    }
}

fn emit_report(checks: Vec<CheckResult>, cfg: &RunConfig, format: Option<ReportFormat>) -> Result<(), CliError> {
    let failed = checks.iter().filter(|c| !c.passed).count();
    let bytes = match format.unwrap_or(ReportFormat::Text) {
        ReportFormat::Text => {
            let mut s = text_table(&checks);
            s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            s.into_bytes()
        }
        ReportFormat::Json => {
            to_json(&VerifyReport { schema: VERIFY_SCHEMA, tolerances: cfg.tolerances, passed: failed == 0, checks })
        }
    };
    write_to(cfg.output.as_deref(), &bytes)?;
    if failed > 0 {
        return Err(CliError::Verification { failed });
    }
    Ok(())
}

fn verify(base: RunConfig, a: VerifyArgs) -> Result<(), CliError> {
    let cfg = merged(base, &a.state, None, a.output.clone())?;
    let model = cfg.spectrum()?;
    let ctx = SuiteContext { n_max: a.n_max, seed: a.seed, draws: a.draws, ..context(&cfg) };
    let mut suites = a.suite.clone();
    suites.dedup();
    let checks: Vec<CheckResult> = suites.iter().flat_map(|&s| run_suite(s, &model, &ctx)).collect();
    emit_report(checks, &cfg, a.format)
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub lambda: Option<C64>,
    pub z: C64,
    pub t: f64,
}

pub fn grid_points(cfg: &RunConfig, a: &SweepArgs) -> Result<Vec<GridPoint>, CliError> {
    let z = cfg.z();
    let lambda = cfg.lambda.map(|l| l.0);
    let count = match a.grid {
        Grid::LambdaRect | Grid::ZRect => a.re.count.saturating_mul(a.im.count),
        Grid::LambdaPolar => a.radius.count.saturating_mul(a.angle.count),
        Grid::Time => a.t.count,
    };
    if count > MAX_SWEEP_POINTS {
        return Err(CliError::Config(format!("grid has {count} points; the limit is {MAX_SWEEP_POINTS}")));
    }
    let rect = |f: &dyn Fn(C64) -> GridPoint| -> Vec<GridPoint> {
        a.re.values().into_iter().flat_map(|x| a.im.values().into_iter().map(move |y| C64::new(x, y))).map(f).collect()
    };
    Ok(match a.grid {
        Grid::LambdaRect => rect(&|l| GridPoint { lambda: Some(l), z, t: 0.0 }),
        Grid::ZRect => rect(&|zp| GridPoint { lambda, z: zp, t: 0.0 }),
        Grid::LambdaPolar => a
            .radius
            .values()
            .into_iter()
            .flat_map(|r| a.angle.values().into_iter().map(move |th| C64::from_polar(r, th)))
            .map(|l| GridPoint { lambda: Some(l), z, t: 0.0 })
            .collect(),
        Grid::Time => a.t.values().into_iter().map(|t| GridPoint { lambda, z, t }).collect(),
    })
}

fn point_state(
    model: &SpectrumModel,
    family: StateFamily,
    p: &GridPoint,
    n: Option<usize>,
) -> Result<TruncatedState, CliError> {
    let state = match family {
        StateFamily::Gk => build_gk(model, p.z, n)?.body,
        StateFamily::Kp => build_kp(model, p.z, n)?.body,
        StateFamily::Gis => {
            let lambda = p.lambda.ok_or_else(|| CliError::Config("the gis family needs --lambda".into()))?;
            build_gis_explore(model, &GisParams::new(lambda, p.z, model.alpha)?, n)?
        }
    };
    let coeffs =
        state.coeffs.iter().enumerate().map(|(k, c)| c * C64::from_polar(1.0, -model.energy(k) * p.t)).collect();
    Ok(TruncatedState::new(coeffs, *model))
}

pub fn sweep_row(
    model: &SpectrumModel,
    family: StateFamily,
    index: usize,
    p: &GridPoint,
    n: Option<usize>,
) -> SweepRow {
    let mut row = SweepRow {
        index,
        lambda_re: p.lambda.filter(|_| family == StateFamily::Gis).map(|l| l.re),
        lambda_im: p.lambda.filter(|_| family == StateFamily::Gis).map(|l| l.im),
        z_re: p.z.re,
        z_im: p.z.im,
        t: p.t,
        ..SweepRow::default()
    };
    let state = match point_state(model, family, p, n) {
        Ok(s) => s,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    row.norm = Some(state.norm());
    row.mean_energy = Some(state.mean_energy());
    match observables(&state) {
        Ok(r) => {
            row.var_w = Some(r.var_w);
            row.var_p = Some(r.var_p);
            row.mean_g = Some(r.mean_g);
            row.mean_f = Some(r.mean_f);
            row.saturation_residual = Some(r.saturation_residual);
        }
        Err(e) => row.error = e.to_string(),
    }
    row
}

fn sweep(base: RunConfig, a: SweepArgs) -> Result<(), CliError> {
    let lambda_grid = matches!(a.grid, Grid::LambdaRect | Grid::LambdaPolar);
    let mut flags = a.state.clone();
    if lambda_grid {
        flags.family = Some(StateFamily::Gis);
    }
    let cfg = merged(base, &flags, Some(OutputFormat::Csv), a.output.clone())?;
    let model = cfg.spectrum()?;
    let family = cfg.family.unwrap_or(StateFamily::Gk);
    if family == StateFamily::Gis && !lambda_grid && cfg.lambda.is_none() {
        return Err(CliError::Config("the gis family needs --lambda".into()));
    }
    let points = grid_points(&cfg, &a)?;
    let rows: Vec<SweepRow> =
        points.par_iter().enumerate().map(|(i, p)| sweep_row(&model, family, i, p, cfg.truncation)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    write_to(cfg.output.as_deref(), &bytes)
}

#[derive(Debug, Clone, Serialize)]
struct LimitRow {
    epsilon: f64,
    max_coeff_diff: Option<f64>,
    error: String,
}

fn limits_report(base: RunConfig, a: LimitsArgs) -> Result<(), CliError> {
    let cfg = merged(base, &a.state, None, a.output.clone())?;
    let ctx = context(&cfg);
    let z = cfg.z.map(|c| c.0).unwrap_or(C64::new(1.0, 0.5));
    let harmonic = SpectrumModel::harmonic(0.0);
    let rows: Vec<LimitRow> = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
        .into_iter()
        .map(|eps| {
            let diff = SpectrumModel::anharmonic_x4(eps, 0.0).and_then(|m| {
                let a = build_gk(&m, z, None)?;
                let b = build_gk(&harmonic, z, None)?;
                Ok((0..=10).map(|n| (a.body.coeffs[n] - b.body.coeffs[n]).norm()).fold(0.0, f64::max))
            });
            match diff {
                Ok(d) => LimitRow { epsilon: eps, max_coeff_diff: Some(d), error: String::new() },
                Err(e) => LimitRow { epsilon: eps, max_coeff_diff: None, error: e.to_string() },
            }
        })
        .collect();
    let checks = limits(&ctx);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let bytes = match a.format.unwrap_or(ReportFormat::Text) {
        ReportFormat::Text => {
            let mut s = text_table(&checks);
            s.push_str(&format!("\nGK coefficients n ≤ 10 at z = {}{:+}i, x⁴ vs oscillator:\n", z.re, z.im));
            s.push_str(&format!("{:>8}  {:>12}\n", "epsilon", "max |Δc_n|"));
            for r in &rows {
                match r.max_coeff_diff {
                    Some(d) => s.push_str(&format!("{:>8.0e}  {:>12.3e}\n", r.epsilon, d)),
                    None => s.push_str(&format!("{:>8.0e}  {}\n", r.epsilon, r.error)),
                }
            }
            s.into_bytes()
        }
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                z: Complex,
                passed: bool,
                checks: &'a [CheckResult],
                convergence: &'a [LimitRow],
            }
            to_json(&Report { z: z.into(), passed: failed == 0, checks: &checks, convergence: &rows })
        }
    };
    write_to(cfg.output.as_deref(), &bytes)?;
    if failed > 0 {
        return Err(CliError::Verification { failed });
    }
    Ok(())
}
