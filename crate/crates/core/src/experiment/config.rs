use super::ExperimentError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Solution methods, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    WkbRiccati,
    WkbDirect,
    ClosedRiccati,
    ClosedDirect,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Exact,
        Method::WkbRiccati,
        Method::WkbDirect,
        Method::ClosedRiccati,
        Method::ClosedDirect,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::WkbRiccati => "wkb-riccati",
            Method::WkbDirect => "wkb-direct",
            Method::ClosedRiccati => "closed-riccati",
            Method::ClosedDirect => "closed-direct",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| ExperimentError::Config(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(ExperimentError::Config(format!(
                "unknown format `{s}` (expected csv or json)"
            ))),
        }
    }
}

/// A complete, validated run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(rename = "phi_I")]
    pub phi_i: f64,
    #[serde(rename = "phi_II")]
    pub phi_ii: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_h")]
    pub n_h: usize,
    pub methods: BTreeSet<Method>,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    /// The reference ramp from `pi/3` to `2 pi/3` over 50 cells between
    /// 100-cell plateaus, all methods, CSV into `./out`.
    fn default() -> Self {
        ExperimentConfig {
            phi_i: PI / 3.0,
            phi_ii: 2.0 * PI / 3.0,
            n: 250,
            n_h: 100,
            methods: Method::ALL.into_iter().collect(),
            output_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        for (name, phi) in [("phi_I", self.phi_i), ("phi_II", self.phi_ii)] {
            if !(phi.is_finite() && phi > 0.0 && phi < PI) {
                return Err(ExperimentError::Config(format!(
                    "{name} = {phi} must lie strictly inside (0, pi)"
                )));
            }
        }
        if self.n <= 2 * self.n_h {
            return Err(ExperimentError::Config(format!(
                "N = {} must exceed 2 N_h = {}",
                self.n,
                2 * self.n_h
            )));
        }
        if self.n < 2 {
            return Err(ExperimentError::Config("N must be at least 2".into()));
        }
        Ok(())
    }

    /// Parses a TOML document; absent keys take their default values.
    pub fn from_toml_str(text: &str) -> Result<Self, ExperimentError> {
        PartialConfig::from_toml_str(text)?.resolve()
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        PartialConfig::load(path)?.resolve()
    }
}

/// Configuration with every field optional; used to layer a file under
/// command-line overrides.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    #[serde(rename = "phi_I")]
    pub phi_i: Option<f64>,
    #[serde(rename = "phi_II")]
    pub phi_ii: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "N_h")]
    pub n_h: Option<usize>,
    pub methods: Option<BTreeSet<Method>>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl PartialConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ExperimentError> {
        toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExperimentError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| {
            ExperimentError::Config(format!("{}: {}", path.display(), e.to_string().trim()))
        })
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            phi_i: over.phi_i.or(self.phi_i),
            phi_ii: over.phi_ii.or(self.phi_ii),
            n: over.n.or(self.n),
            n_h: over.n_h.or(self.n_h),
            methods: over.methods.or(self.methods),
            output_dir: over.output_dir.or(self.output_dir),
            format: over.format.or(self.format),
        }
    }

    /// Fills gaps from [`ExperimentConfig::default`] and validates.
    pub fn resolve(self) -> Result<ExperimentConfig, ExperimentError> {
        let d = ExperimentConfig::default();
        let cfg = ExperimentConfig {
            phi_i: self.phi_i.unwrap_or(d.phi_i),
            phi_ii: self.phi_ii.unwrap_or(d.phi_ii),
            n: self.n.unwrap_or(d.n),
            n_h: self.n_h.unwrap_or(d.n_h),
            methods: self.methods.unwrap_or(d.methods),
            output_dir: self.output_dir.unwrap_or(d.output_dir),
            format: self.format.unwrap_or(d.format),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
