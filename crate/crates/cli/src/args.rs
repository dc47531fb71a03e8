use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{ComplexArg, ModelConfig, ModelKind, OutputFormat, Ratio, RunConfig, StateFamily};
use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(name = "gencoh", version, about = "Coherent and intelligent states for factorizable spectra")]
pub struct Cli {
    /// TOML configuration file; command-line flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one state and write its coefficients
    Build(BuildArgs),
    /// Run verification suites and print a pass/fail table
    Verify(VerifyArgs),
    /// Evaluate observables over a parameter grid (CSV)
    #[command(after_help = SWEEP_COLUMNS)]
    Sweep(SweepArgs),
    /// Report the ε → 0 and ε = 2/3 limits of the x⁴ spectrum
    Limits(LimitsArgs),
}

pub const SWEEP_COLUMNS: &str = "\
CSV columns, in order:
  index               grid point number, starting at 0
  lambda_re,lambda_im λ (empty for gk and kp states)
  z_re,z_im           eigenvalue parameter z
  t                   evolution time (0 unless --grid time)
  norm                norm of the truncated state
  mean_energy         ⟨H⟩
  var_w,var_p         variances of W and P
  mean_g,mean_f       ⟨G⟩ and ⟨F⟩
  saturation_residual var_W var_P − (⟨G⟩² + ⟨F⟩²)/4
  error               empty, or the failure at this point; values that could
                      not be computed are left empty";

/// State and model selection shared by all subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct StateArgs {
    /// Spectrum
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// x⁴ coupling; accepts fractions such as 2/3
    #[arg(long)]
    pub epsilon: Option<Ratio>,
    /// Phase parameter α
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// State family
    #[arg(long, value_enum)]
    pub family: Option<StateFamily>,
    /// Complex parameter z, e.g. 2+1i
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<ComplexArg>,
    /// Complex λ for intelligent states
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<ComplexArg>,
    /// Fixed truncation N (default: adaptive)
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Tolerance override, e.g. --tol saturation=1e-9 (repeatable)
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

impl StateArgs {
    pub fn to_config(&self, format: Option<OutputFormat>, output: Option<PathBuf>) -> RunConfig {
        RunConfig {
            model: ModelConfig { kind: self.model, epsilon: self.epsilon, alpha: self.alpha },
            family: self.family,
            z: self.z,
            lambda: self.lambda,
            truncation: self.truncation,
            format,
            output,
            ..RunConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file (default: stdout); CSV output also writes <output>.meta.json
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Suites to run (repeatable)
    #[arg(long, value_enum, default_values_t = [Suite::All])]
    pub suite: Vec<Suite>,
    /// Highest moment order for the moments suite
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Seed for the random draws of the closed-form suite
    #[arg(long, default_value_t = 0x5eed_2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub draws: usize,
    /// Report format; the text table is the default
    #[arg(long, value_enum)]
    pub format: Option<ReportFormat>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// λ over a rectangle given by --re and --im
    LambdaRect,
    /// λ = ρ e^{iθ} with ρ from --radius and θ from --angle
    LambdaPolar,
    /// z over a rectangle given by --re and --im
    ZRect,
    /// time evolution of the state over --t
    Time,
}

/// Inclusive linear range `start:stop:count`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|k| if k + 1 == self.count { self.stop } else { self.start + step * k as f64 }).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?} in range: {e}"));
        match parts.as_slice() {
            [v] => Ok(Range { start: num(v)?, stop: num(v)?, count: 1 }),
            [a, b, n] => {
                let count = n.trim().parse::<usize>().map_err(|e| format!("bad count {n:?}: {e}"))?;
                if count == 0 {
                    return Err("range count must be positive".into());
                }
                Ok(Range { start: num(a)?, stop: num(b)?, count })
            }
            _ => Err(format!("expected start:stop:count, got {s:?}")),
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum)]
    pub grid: Grid,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub re: Range,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub im: Range,
    #[arg(long, default_value = "1")]
    pub radius: Range,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub angle: Range,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub t: Range,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum)]
    pub format: Option<ReportFormat>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
