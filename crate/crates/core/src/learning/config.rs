use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embeddings::{NeighbourhoodMethod, RegionMethod};
use crate::error::{Error, Result};
use crate::hexgrid::Resolution;

pub const CONFIG_SCHEMA: &str = "hexstation-config/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalerKind {
    None,
    Minmax,
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierKind {
    Knn,
    RandomForest,
    Adaboost,
    Mlp,
    /// Looked up by `ExperimentConfig::plugin` in a plugin registry.
    Plugin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassBalance {
    Normal,
    Balanced,
    BalancedSubsample,
}

macro_rules! display_via_serde {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
                f.write_str(v.as_str().unwrap_or_default())
            }
        }
    )*};
}
display_via_serde!(ScalerKind, ClassifierKind, ClassBalance);

fn schema() -> String {
    CONFIG_SCHEMA.to_owned()
}

/// One experiment: how features are built, how the training set is drawn
/// and which classifier is fitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "schema")]
    pub schema: String,
    pub resolution: Resolution,
    pub neighbourhood_k: u32,
    pub region_method: RegionMethod,
    pub neighbourhood_method: NeighbourhoodMethod,
    pub scaler: ScalerKind,
    pub imbalance_ratio: f64,
    pub classifier: ClassifierKind,
    pub class_balance_mode: ClassBalance,
    pub iterations: u32,
    pub seed: u64,
    /// Registered plugin name when `classifier` is `plugin`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plugin: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            schema: schema(),
            resolution: Resolution::new(9).expect("valid"),
            neighbourhood_k: 5,
            region_method: RegionMethod::Cc,
            neighbourhood_method: NeighbourhoodMethod::DiminishingSquared,
            scaler: ScalerKind::Minmax,
            imbalance_ratio: 2.5,
            classifier: ClassifierKind::RandomForest,
            class_balance_mode: ClassBalance::Normal,
            iterations: 10,
            seed: 0,
            plugin: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema != CONFIG_SCHEMA {
            return Err(Error::config(format!(
                "config schema {:?} is not {CONFIG_SCHEMA:?}",
                self.schema
            )));
        }
        if !self.imbalance_ratio.is_finite() || self.imbalance_ratio < 1.0 {
            return Err(Error::config(format!("imbalance_ratio must be >= 1, got {}", self.imbalance_ratio)));
        }
        if self.iterations == 0 {
            return Err(Error::config("iterations must be at least 1"));
        }
        if self.classifier == ClassifierKind::Plugin && self.plugin.is_none() {
            return Err(Error::config("classifier \"plugin\" needs a plugin name"));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s).map_err(|e| Error::config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
