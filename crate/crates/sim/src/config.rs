//! Scenario configuration, read from TOML.
//!
//! ```toml
//! quantities = ["S_von", "S_renyi", "Omega"]
//! renyi_orders = [2, 4, 100]
//!
//! [model]
//! kind = "quench"
//! omega1_i = 1.0
//! omega1_f = 1.3
//! omega2_i = 1.5
//! omega2_f = 1.8
//! coupling = 1.1
//!
//! [time]
//! t_end = 10.0
//! samples = 1001
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use cohosc::model::{build_model, FrequencySchedule, NormalModes, SampleTable};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    /// Normal mode 1 released to a free particle, mode 2 quenched.
    Toy1 {
        alpha: f64,
        wtilde1_i: f64,
        wtilde2_i: f64,
        wtilde2_f: f64,
    },
    /// Normal mode 1 quenched to `i·wtilde1_f`, mode 2 quenched.
    Toy2 {
        alpha: f64,
        wtilde1_i: f64,
        wtilde1_f: f64,
        wtilde2_i: f64,
        wtilde2_f: f64,
    },
    /// Both bare frequencies quenched at fixed coupling.
    Quench {
        omega1_i: f64,
        omega1_f: f64,
        omega2_i: f64,
        omega2_f: f64,
        coupling: f64,
    },
    /// Piecewise-linear bare parameters; `α` must stay constant.
    Tabulated {
        times: Vec<f64>,
        omega1_sq: Vec<f64>,
        omega2_sq: Vec<f64>,
        coupling: Vec<f64>,
    },
}

impl ModelConfig {
    pub fn schedule(&self) -> FrequencySchedule {
        match self.clone() {
            ModelConfig::Toy1 {
                alpha,
                wtilde1_i,
                wtilde2_i,
                wtilde2_f,
            } => FrequencySchedule::Toy1 {
                alpha,
                wtilde1_i,
                wtilde2_i,
                wtilde2_f,
            },
            ModelConfig::Toy2 {
                alpha,
                wtilde1_i,
                wtilde1_f,
                wtilde2_i,
                wtilde2_f,
            } => FrequencySchedule::Toy2 {
                alpha,
                wtilde1_i,
                wtilde1_f,
                wtilde2_i,
                wtilde2_f,
            },
            ModelConfig::Quench {
                omega1_i,
                omega1_f,
                omega2_i,
                omega2_f,
                coupling,
            } => FrequencySchedule::Quench {
                omega1_i,
                omega1_f,
                omega2_i,
                omega2_f,
                coupling,
            },
            ModelConfig::Tabulated {
                times,
                omega1_sq,
                omega2_sq,
                coupling,
            } => FrequencySchedule::Tabulated(SampleTable {
                times,
                omega1_sq,
                omega2_sq,
                coupling,
            }),
        }
    }

    pub fn normal_modes(&self) -> Result<NormalModes> {
        build_model(&self.schedule()).map_err(|e| Error::config("model", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "S_von")]
    SVon,
    #[serde(rename = "S_renyi")]
    SRenyi,
    #[serde(rename = "xi")]
    Xi,
    #[serde(rename = "purity")]
    Purity,
    Omega,
    #[serde(rename = "Omega_tilde")]
    OmegaTilde,
    #[serde(rename = "r")]
    R,
    Gamma,
    #[serde(rename = "schmidt_angles")]
    SchmidtAngles,
}

impl Quantity {
    pub const ALL: [Quantity; 9] = [
        Quantity::SVon,
        Quantity::SRenyi,
        Quantity::Xi,
        Quantity::Purity,
        Quantity::Omega,
        Quantity::OmegaTilde,
        Quantity::R,
        Quantity::Gamma,
        Quantity::SchmidtAngles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::SVon => "S_von",
            Quantity::SRenyi => "S_renyi",
            Quantity::Xi => "xi",
            Quantity::Purity => "purity",
            Quantity::Omega => "Omega",
            Quantity::OmegaTilde => "Omega_tilde",
            Quantity::R => "r",
            Quantity::Gamma => "Gamma",
            Quantity::SchmidtAngles => "schmidt_angles",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    /// Runs always start at `t = 0`.
    #[serde(default)]
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        let n = self.samples;
        let dt = self.t_end / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.t_end
                } else {
                    k as f64 * dt
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub model: ModelConfig,
    pub time: TimeGrid,
    pub quantities: Vec<Quantity>,
    #[serde(default)]
    pub renyi_orders: Vec<u32>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|source| Error::ConfigParse {
            path: path.to_owned(),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml(&text, path)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.time;
        if t.t_start != 0.0 {
            return Err(Error::config("time.t_start", "runs start at t = 0"));
        }
        if t.t_end <= 0.0 || !t.t_end.is_finite() {
            return Err(Error::config(
                "time.t_end",
                format!("must be positive and finite, got {}", t.t_end),
            ));
        }
        if t.samples < 2 {
            return Err(Error::config(
                "time.samples",
                format!("must be at least 2, got {}", t.samples),
            ));
        }
        if self.quantities.is_empty() {
            return Err(Error::config(
                "quantities",
                "at least one quantity is required",
            ));
        }
        for (i, q) in self.quantities.iter().enumerate() {
            if self.quantities[..i].contains(q) {
                return Err(Error::config("quantities", format!("{q} listed twice")));
            }
        }
        if let Some(&n) = self.renyi_orders.iter().find(|&&n| n < 2) {
            return Err(Error::config(
                "renyi_orders",
                format!("orders must be at least 2, got {n}"),
            ));
        }
        if self.quantities.contains(&Quantity::SRenyi) && self.renyi_orders.is_empty() {
            return Err(Error::config(
                "renyi_orders",
                "S_renyi requested without any order",
            ));
        }
        self.model.normal_modes()?;
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config serializes")
    }
}
