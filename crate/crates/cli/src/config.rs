use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use gencoh::{SpectrumModel, C64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Complex number written as `a+bi`, `a-bi`, `a`, or `bi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub C64);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("cannot parse {s:?} as a complex number (expected a+bi)");
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
            return t.parse::<f64>().map(|re| ComplexArg(C64::new(re, 0.0))).map_err(|_| bad());
        };
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let im_of = |x: &str| -> Result<f64, String> {
            match x {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => x.parse::<f64>().map_err(|_| bad()),
            }
        };
        match split {
            Some(k) => {
                let re = body[..k].parse::<f64>().map_err(|_| bad())?;
                Ok(ComplexArg(C64::new(re, im_of(&body[k..])?)))
            }
            None => Ok(ComplexArg(C64::new(0.0, im_of(body)?))),
        }
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let C64 { re, im } = self.0;
        if im.is_sign_negative() {
            write!(f, "{re:?}-{:?}i", -im)
        } else {
            write!(f, "{re:?}+{im:?}i")
        }
    }
}

impl Serialize for ComplexArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ComplexArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
            Raw::Number(x) => Ok(ComplexArg(C64::new(x, 0.0))),
        }
    }
}

/// Real number that may be written as a fraction such as `2/3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio(pub f64);

impl FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("cannot parse {s:?} as a number or fraction");
        match s.split_once('/') {
            Some((p, q)) => {
                let p: f64 = p.trim().parse().map_err(|_| bad())?;
                let q: f64 = q.trim().parse().map_err(|_| bad())?;
                Ok(Ratio(p / q))
            }
            None => s.trim().parse().map(Ratio).map_err(|_| bad()),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
            Raw::Number(x) => Ok(Ratio(x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Harmonic,
    Well,
    X4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    Gk,
    Kp,
    Gis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<ModelKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

/// Tolerances used by `verify`; every field can be overridden with `--tol name=value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub eigenvalue: f64,
    pub action: f64,
    pub temporal: f64,
    pub kp_forms: f64,
    pub cn_series: f64,
    pub pi_relative: f64,
    pub saturation: f64,
    pub laws: f64,
    pub circle: f64,
    pub closed_form: f64,
    pub degeneracy: f64,
    pub jacobi: f64,
    pub kummer: f64,
    pub laplace: f64,
    pub harmonic_gk: f64,
    pub harmonic_gaussian: f64,
    pub moments_harmonic: f64,
    pub moments_well: f64,
    pub moments_x4: f64,
    pub identity: f64,
    pub kernel_well: f64,
    pub kernel_x4: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigenvalue: 1e-10,
            action: 1e-9,
            temporal: 1e-14,
            kp_forms: 1e-12,
            cn_series: 1e-10,
            pi_relative: 1e-12,
            saturation: 1e-8,
            laws: 1e-8,
            circle: 1e-9,
            closed_form: 1e-10,
            degeneracy: 1e-12,
            jacobi: 1e-10,
            kummer: 1e-11,
            laplace: 1e-6,
            harmonic_gk: 1e-4,
            harmonic_gaussian: 1e-3,
            moments_harmonic: 1e-12,
            moments_well: 1e-6,
            moments_x4: 1e-5,
            identity: 1e-6,
            kernel_well: 1e-6,
            kernel_x4: 1e-6,
        }
    }
}

impl Tolerances {
    /// Apply a `name=value` override.
    pub fn set(&mut self, spec: &str) -> Result<(), CliError> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("tolerance override {spec:?} must look like name=value")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("tolerance value in {spec:?} is not a number")))?;
        let mut table = toml::Table::try_from(*self).expect("tolerances serialize");
        let key = name.trim().replace('-', "_");
        if !table.contains_key(&key) {
            return Err(CliError::Config(format!("unknown tolerance {name:?}")));
        }
        table.insert(key, toml::Value::Float(value));
        *self = table.try_into().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(())
    }
}

/// Everything a run needs; loaded from a TOML file and overridden by flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<StateFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<ComplexArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<ComplexArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Values present in `flags` replace those in `self`.
    pub fn overlay(mut self, flags: RunConfig, tol_overrides: &[String]) -> Result<Self, CliError> {
        self.model.kind = flags.model.kind.or(self.model.kind);
        self.model.epsilon = flags.model.epsilon.or(self.model.epsilon);
        self.model.alpha = flags.model.alpha.or(self.model.alpha);
        self.family = flags.family.or(self.family);
        self.z = flags.z.or(self.z);
        self.lambda = flags.lambda.or(self.lambda);
        self.truncation = flags.truncation.or(self.truncation);
        self.format = flags.format.or(self.format);
        self.output = flags.output.or(self.output);
        for t in tol_overrides {
            self.tolerances.set(t)?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(ComplexArg(l)) = self.lambda {
            if l == C64::new(-1.0, 0.0) && self.family != Some(StateFamily::Gk) && self.family != Some(StateFamily::Kp)
            {
                return Err(CliError::Config(
                    "λ = −1 is not allowed: the operator (1+λ)A⁻ + (1−λ)A⁺ reduces to 2A⁺, \
                     which has no normalizable eigenstate"
                        .into(),
                ));
            }
        }
        if self.model.kind == Some(ModelKind::X4) && self.model.epsilon.is_none() {
            return Err(CliError::Config("the x4 model needs --epsilon".into()));
        }
        if self.model.kind != Some(ModelKind::X4) && self.model.epsilon.is_some() && self.model.kind.is_some() {
            return Err(CliError::Config("--epsilon only applies to the x4 model".into()));
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Result<SpectrumModel, CliError> {
        let alpha = self.model.alpha.unwrap_or(0.0);
        match self.model.kind {
            None => Err(CliError::Config("no model selected (use --model)".into())),
            Some(ModelKind::Harmonic) => Ok(SpectrumModel::harmonic(alpha)),
            Some(ModelKind::Well) => Ok(SpectrumModel::infinite_well(alpha)),
            Some(ModelKind::X4) => {
                let eps = self.model.epsilon.map(|r| r.0).unwrap_or(f64::NAN);
                SpectrumModel::anharmonic_x4(eps, alpha).map_err(|e| CliError::Config(e.to_string()))
            }
        }
    }

    pub fn z(&self) -> C64 {
        self.z.map(|c| c.0).unwrap_or(C64::new(0.0, 0.0))
    }
}
