//! Training-set sampling, feature scaling and the classifiers.

mod adaboost;
mod config;
mod forest;
mod knn;
mod mlp;
mod sampling;
mod scaler;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use adaboost::{AdaBoost, DEFAULT_STUMPS};
pub use config::{ClassBalance, ClassifierKind, ExperimentConfig, ScalerKind, CONFIG_SCHEMA};
pub use forest::{DecisionTree, RandomForest, TreeParams, DEFAULT_TREES};
pub use knn::{Knn, DEFAULT_K};
pub use mlp::{Mlp, MlpOptions};
pub use sampling::sample_training_set;
pub use scaler::{fit_scaler, ScalerState};

use crate::error::{Error, Result};

/// Decision threshold on the positive-class probability (inclusive).
pub const DEFAULT_THRESHOLD: f64 = 0.5;

const MODEL_FORMAT: &str = "hexstation-model/1";

/// Mixes a base seed with a stream index into an independent seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(stream))
}

/// An externally supplied classifier.
pub trait ClassifierPlugin: Send + Sync {
    fn fit(&self, x: &[Vec<f64>], y: &[bool], seed: u64) -> Result<Arc<dyn FittedPlugin>>;
}

pub trait FittedPlugin: Send + Sync + fmt::Debug {
    /// Positive-class probability in `[0, 1]`.
    fn predict_proba(&self, row: &[f64]) -> f64;
}

/// Named plugin classifiers, e.g. an RBF-kernel SVM backed by another
/// library.
#[derive(Default, Clone)]
pub struct PluginRegistry {
    plugins: BTreeMap<String, Arc<dyn ClassifierPlugin>>,
}

impl PluginRegistry {
    pub fn register(&mut self, name: &str, plugin: Arc<dyn ClassifierPlugin>) {
        self.plugins.insert(name.to_owned(), plugin);
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn ClassifierPlugin>> {
        self.plugins.get(name)
    }
}

impl fmt::Debug for PluginRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.plugins.keys()).finish()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum Model {
    Knn(Knn),
    RandomForest(RandomForest),
    Adaboost(AdaBoost),
    Mlp(Mlp),
    #[serde(skip)]
    Plugin { name: String, model: Arc<dyn FittedPlugin> },
}

/// A fitted scaler and classifier with the config that produced them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format: String,
    pub config: ExperimentConfig,
    pub dim: usize,
    pub scaler: ScalerState,
    pub model: Model,
}

fn row_order(a: &(&Vec<f64>, bool), b: &(&Vec<f64>, bool)) -> Ordering {
    a.0.iter()
        .zip(b.0.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
        .then(a.1.cmp(&b.1))
}

/// Fits the configured scaler and classifier. Rows are put into a canonical
/// order first, so the result does not depend on training-row order.
pub fn fit_classifier(x: &[Vec<f64>], y: &[bool], cfg: &ExperimentConfig) -> Result<TrainedModel> {
    fit_classifier_with(x, y, cfg, &PluginRegistry::default())
}

pub fn fit_classifier_with(
    x: &[Vec<f64>],
    y: &[bool],
    cfg: &ExperimentConfig,
    plugins: &PluginRegistry,
) -> Result<TrainedModel> {
    if x.len() != y.len() {
        return Err(Error::input(format!("{} rows but {} labels", x.len(), y.len())));
    }
    let Some(first) = x.first() else {
        return Err(Error::Fit("no training rows".into()));
    };
    let dim = first.len();
    if let Some(bad) = x.iter().position(|r| r.len() != dim) {
        return Err(Error::input(format!("row {bad} has {} features, expected {dim}", x[bad].len())));
    }
    if x.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::input("training features contain a non-finite value"));
    }
    let pos = y.iter().filter(|&&l| l).count();
    if pos == 0 || pos == y.len() {
        return Err(Error::Fit("training labels contain a single class".into()));
    }

    let mut rows: Vec<(&Vec<f64>, bool)> = x.iter().zip(y.iter().copied()).collect();
    rows.sort_by(row_order);
    let x: Vec<Vec<f64>> = rows.iter().map(|(r, _)| (*r).clone()).collect();
    let y: Vec<bool> = rows.iter().map(|(_, l)| *l).collect();

    let scaler = fit_scaler(&x, cfg.scaler);
    let xs = scaler.apply(&x);
    let model = match cfg.classifier {
        ClassifierKind::Knn => Model::Knn(Knn::fit(&xs, &y, DEFAULT_K)),
        ClassifierKind::RandomForest => {
            Model::RandomForest(RandomForest::fit(&xs, &y, DEFAULT_TREES, cfg.class_balance_mode, cfg.seed))
        }
        ClassifierKind::Adaboost => Model::Adaboost(AdaBoost::fit(&xs, &y, DEFAULT_STUMPS, cfg.seed)),
        ClassifierKind::Mlp => Model::Mlp(Mlp::fit(&xs, &y, MlpOptions::default(), cfg.seed)),
        ClassifierKind::Plugin => {
            let name = cfg.plugin.clone().unwrap_or_default();
            let plugin = plugins
                .get(&name)
                .ok_or_else(|| Error::config(format!("no classifier plugin registered as {name:?}")))?;
            Model::Plugin {
                model: plugin.fit(&xs, &y, cfg.seed)?,
                name,
            }
        }
    };
    Ok(TrainedModel {
        format: MODEL_FORMAT.into(),
        config: cfg.clone(),
        dim,
        scaler,
        model,
    })
}

impl TrainedModel {
    /// Positive-class probability per row.
    pub fn predict_proba(&self, x: &[Vec<f64>]) -> Result<Vec<f64>> {
        if let Some(bad) = x.iter().position(|r| r.len() != self.dim) {
            return Err(Error::input(format!(
                "row {bad} has {} features, model expects {}",
                x[bad].len(),
                self.dim
            )));
        }
        let xs = self.scaler.apply(x);
        Ok(match &self.model {
            Model::Mlp(m) => m.predict_proba_batch(&xs),
            Model::Knn(m) => xs.par_iter().map(|r| m.predict_proba(r)).collect(),
            Model::RandomForest(m) => xs.par_iter().map(|r| m.predict_proba(r)).collect(),
            Model::Adaboost(m) => xs.par_iter().map(|r| m.predict_proba(r)).collect(),
            Model::Plugin { model, .. } => xs.par_iter().map(|r| model.predict_proba(r).clamp(0.0, 1.0)).collect(),
        })
    }

    /// Class decisions: positive iff probability ≥ `threshold`.
    pub fn predict(&self, x: &[Vec<f64>], threshold: f64) -> Result<Vec<bool>> {
        Ok(self.predict_proba(x)?.into_iter().map(|p| p >= threshold).collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: TrainedModel = serde_json::from_str(s)?;
        if m.format != MODEL_FORMAT {
            return Err(Error::input(format!("unsupported model format {:?}", m.format)));
        }
        Ok(m)
    }
}
