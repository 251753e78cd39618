//! Run configuration: TOML schema, defaults and validation.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;

use qecbound::bath::{Axis, BathChannel, BathGeometry, DEFAULT_MODE_BUDGET};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid config: {key}: {reason}")]
    Invalid { key: String, reason: String },
}

fn invalid(key: impl Into<String>, reason: impl fmt::Display) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        reason: reason.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub bath: BathSection,
    #[serde(default)]
    pub code: CodeSection,
    #[serde(default)]
    pub layout: LayoutSection,
    #[serde(default)]
    pub qec: QecSection,
    #[serde(default)]
    pub criteria: CriteriaSection,
    #[serde(default)]
    pub calibration: CalibrationSection,
    #[serde(default)]
    pub budget: BudgetSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    pub axis: String,
    #[serde(default = "one")]
    pub z_exp: f64,
    #[serde(default)]
    pub s_exp: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSection {
    #[serde(rename = "D", default = "default_dim")]
    pub dim: usize,
    #[serde(rename = "L", default = "default_length")]
    pub length: f64,
    /// Defaults to `1/Δ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_c: Option<f64>,
    pub channels: Vec<ChannelSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSection {
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutSection {
    #[serde(default = "one")]
    pub xi: f64,
    #[serde(rename = "Xi", default = "default_big_xi")]
    pub big_xi: f64,
    #[serde(rename = "D_x", default = "default_dim")]
    pub dim_x: usize,
    #[serde(rename = "N", default = "default_n")]
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QecSection {
    #[serde(rename = "Delta", default = "one")]
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaSection {
    #[serde(rename = "D_crit", default = "default_d_crit")]
    pub d_crit: f64,
    #[serde(default = "default_sigma")]
    pub sigma_plus_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationSection {
    #[serde(default = "one")]
    pub c_cal: f64,
    #[serde(default = "one")]
    pub b_cal: f64,
    #[serde(default = "one")]
    pub proportionality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    #[serde(default = "default_budget")]
    pub max_modes: u64,
}

fn one() -> f64 {
    1.0
}
fn default_dim() -> usize {
    1
}
fn default_n() -> usize {
    1
}
fn default_length() -> f64 {
    TAU * 1000.0
}
fn default_big_xi() -> f64 {
    100.0
}
fn default_d_crit() -> f64 {
    0.01
}
fn default_sigma() -> f64 {
    0.5
}
fn default_budget() -> u64 {
    DEFAULT_MODE_BUDGET
}

impl Default for CodeSection {
    fn default() -> Self {
        Self {
            name: "five-qubit".into(),
        }
    }
}

impl Default for LayoutSection {
    fn default() -> Self {
        Self {
            xi: 1.0,
            big_xi: default_big_xi(),
            dim_x: 1,
            n: 1,
        }
    }
}

impl Default for QecSection {
    fn default() -> Self {
        Self { delta: 1.0 }
    }
}

impl Default for CriteriaSection {
    fn default() -> Self {
        Self {
            d_crit: default_d_crit(),
            sigma_plus_abs: default_sigma(),
        }
    }
}

impl Default for CalibrationSection {
    fn default() -> Self {
        Self {
            c_cal: 1.0,
            b_cal: 1.0,
            proportionality: 1.0,
        }
    }
}

impl Default for BudgetSection {
    fn default() -> Self {
        Self {
            max_modes: DEFAULT_MODE_BUDGET,
        }
    }
}

pub const CODE_NAMES: &[&str] = &["five-qubit"];

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(key, format_args!("must be finite and > 0, got {v}")))
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Canonical TOML form of the configuration (defaults filled in).
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    pub fn omega_c(&self) -> f64 {
        self.bath.omega_c.unwrap_or(1.0 / self.qec.delta)
    }

    pub fn geometry(&self) -> BathGeometry<f64> {
        BathGeometry {
            dim: self.bath.dim,
            length: self.bath.length,
            omega_c: self.omega_c(),
        }
    }

    pub fn channel(&self, axis: Axis) -> Option<BathChannel<f64>> {
        self.bath
            .channels
            .iter()
            .find(|c| c.axis == axis.as_str())
            .map(|c| BathChannel {
                axis,
                z_exp: c.z_exp,
                s_exp: c.s_exp,
                lambda: c.lambda,
            })
    }

    /// Configured channels in `x, z` order.
    pub fn channels(&self) -> Vec<BathChannel<f64>> {
        Axis::ALL.iter().filter_map(|&a| self.channel(a)).collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let b = &self.bath;
        if !(1..=3).contains(&b.dim) {
            return Err(invalid("bath.D", format_args!("must be 1, 2 or 3, got {}", b.dim)));
        }
        positive("bath.L", b.length)?;
        positive("qec.Delta", self.qec.delta)?;
        if let Some(w) = b.omega_c {
            positive("bath.omega_c", w)?;
        }
        if b.channels.is_empty() || b.channels.len() > 2 {
            return Err(invalid(
                "bath.channels",
                format_args!("need one or two channels, got {}", b.channels.len()),
            ));
        }
        let geom = self.geometry();
        for (i, c) in b.channels.iter().enumerate() {
            let key = |f: &str| format!("bath.channels[{i}].{f}");
            let axis = match c.axis.as_str() {
                "x" => Axis::X,
                "z" => Axis::Z,
                other => return Err(invalid(key("axis"), format_args!("must be \"x\" or \"z\", got {other:?}"))),
            };
            if b.channels[..i].iter().any(|o| o.axis == c.axis) {
                return Err(invalid(key("axis"), format_args!("duplicate channel {axis}")));
            }
            positive(&key("z_exp"), c.z_exp)?;
            if !c.s_exp.is_finite() {
                return Err(invalid(key("s_exp"), "must be finite"));
            }
            if !(c.lambda.is_finite() && c.lambda >= 0.0) {
                return Err(invalid(key("lambda"), format_args!("must be finite and >= 0, got {}", c.lambda)));
            }
            let ch = BathChannel {
                axis,
                z_exp: c.z_exp,
                s_exp: c.s_exp,
                lambda: c.lambda,
            };
            geom.check_channel(&ch).map_err(|e| invalid(key("z_exp"), e))?;
        }
        if !CODE_NAMES.contains(&self.code.name.as_str()) {
            return Err(invalid(
                "code.name",
                format_args!("unknown code {:?} (known: {})", self.code.name, CODE_NAMES.join(", ")),
            ));
        }
        let l = &self.layout;
        positive("layout.xi", l.xi)?;
        positive("layout.Xi", l.big_xi)?;
        if l.n == 0 {
            return Err(invalid("layout.N", "must be at least 1"));
        }
        if l.dim_x > b.dim {
            return Err(invalid(
                "layout.D_x",
                format_args!("layout.D_x exceeds bath.D ({} > {})", l.dim_x, b.dim),
            ));
        }
        if l.dim_x == 0 && l.n > 1 {
            return Err(invalid("layout.N", "a 0-dimensional array (D_x = 0) holds exactly one logical qubit"));
        }
        let c = &self.criteria;
        if !(c.d_crit > 0.0 && c.d_crit < 1.0) {
            return Err(invalid("criteria.D_crit", format_args!("must lie in (0, 1), got {}", c.d_crit)));
        }
        if !(0.0..=0.5).contains(&c.sigma_plus_abs) {
            return Err(invalid(
                "criteria.sigma_plus_abs",
                format_args!("must lie in [0, 0.5], got {}", c.sigma_plus_abs),
            ));
        }
        positive("calibration.c_cal", self.calibration.c_cal)?;
        positive("calibration.b_cal", self.calibration.b_cal)?;
        positive("calibration.proportionality", self.calibration.proportionality)?;
        if self.budget.max_modes == 0 {
            return Err(invalid("budget.max_modes", "must be at least 1"));
        }
        Ok(())
    }

    /// Returns a copy with one scalar key replaced, re-validated.
    ///
    /// Keys use the config's dotted names, e.g. `qec.Delta` or
    /// `bath.channels[1].lambda`. Integer keys accept integral values only.
    pub fn with_value(&self, key: &str, value: f64) -> Result<Self, ConfigError> {
        let mut tree = toml::Value::try_from(self).expect("config serializes");
        let slot = lookup(&mut tree, key).ok_or_else(|| invalid(key, "not a scalar config key"))?;
        *slot = match slot {
            toml::Value::Float(_) => toml::Value::Float(value),
            toml::Value::Integer(_) => {
                if value.fract() != 0.0 || value < 0.0 {
                    return Err(invalid(key, format_args!("needs a non-negative integer, got {value}")));
                }
                toml::Value::Integer(value as i64)
            }
            _ => return Err(invalid(key, "not a numeric config key")),
        };
        let cfg: RunConfig = tree.try_into().map_err(|e: toml::de::Error| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Resolves `a.b[2].c` in a TOML tree. `bath.omega_c` is materialized when
/// it was left at its default.
fn lookup<'a>(tree: &'a mut toml::Value, key: &str) -> Option<&'a mut toml::Value> {
    if key == "bath.omega_c" {
        let delta = tree.get("qec")?.get("Delta")?.as_float()?;
        let bath = tree.get_mut("bath")?.as_table_mut()?;
        bath.entry("omega_c").or_insert(toml::Value::Float(1.0 / delta));
    }
    let mut node = tree;
    for part in key.split('.') {
        let (name, index) = match part.split_once('[') {
            Some((n, rest)) => (n, Some(rest.strip_suffix(']')?.parse::<usize>().ok()?)),
            None => (part, None),
        };
        node = node.get_mut(name)?;
        if let Some(i) = index {
            node = node.get_mut(i)?;
        }
    }
    matches!(node, toml::Value::Float(_) | toml::Value::Integer(_)).then_some(node)
}
