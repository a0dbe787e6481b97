use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{grid_distance, CellId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl Confusion {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

/// Scores for one set of predictions. Recall, balanced accuracy and F1 are
/// NaN when the evaluated cells hold no positive (or, for balanced
/// accuracy, no negative) label; precision is 0 when nothing is predicted
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Accuracy where a false positive scores `1/(k+1)`, `k` being the grid
    /// distance to the nearest station cell.
    pub custom: f64,
    /// Fraction of cells predicted positive.
    pub positive_rate: f64,
}

pub const METRIC_NAMES: [&str; 7] = [
    "accuracy",
    "balanced_accuracy",
    "precision",
    "recall",
    "f1",
    "custom",
    "positive_rate",
];

impl Metrics {
    pub fn values(&self) -> [f64; 7] {
        [
            self.accuracy,
            self.balanced_accuracy,
            self.precision,
            self.recall,
            self.f1,
            self.custom,
            self.positive_rate,
        ]
    }

    fn from_values(v: [f64; 7]) -> Self {
        Self {
            accuracy: v[0],
            balanced_accuracy: v[1],
            precision: v[2],
            recall: v[3],
            f1: v[4],
            custom: v[5],
            positive_rate: v[6],
        }
    }

    /// Names of metrics that are undefined for this evaluation.
    pub fn undefined(&self) -> Vec<&'static str> {
        METRIC_NAMES
            .iter()
            .zip(self.values())
            .filter(|(_, v)| v.is_nan())
            .map(|(n, _)| *n)
            .collect()
    }
}

/// Grid distance from `cell` to the closest of `stations`.
pub fn nearest_station_distance(cell: CellId, stations: &BTreeSet<CellId>) -> Option<u32> {
    if stations.contains(&cell) {
        return Some(0);
    }
    stations.iter().filter_map(|&s| grid_distance(cell, s).ok()).min()
}

pub fn confusion(pred: &BTreeMap<CellId, bool>, labels: &BTreeMap<CellId, bool>) -> Result<Confusion> {
    if pred.is_empty() {
        return Err(Error::input("no cells to evaluate"));
    }
    let mut c = Confusion::default();
    for (cell, &p) in pred {
        let l = *labels
            .get(cell)
            .ok_or_else(|| Error::input(format!("cell {cell} has a prediction but no label")))?;
        match (p, l) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, false) => c.tn += 1,
            (false, true) => c.fn_ += 1,
        }
    }
    if labels.len() != pred.len() {
        return Err(Error::input(format!(
            "{} predictions but {} labels",
            pred.len(),
            labels.len()
        )));
    }
    Ok(c)
}

pub fn compute_metrics(
    pred: &BTreeMap<CellId, bool>,
    labels: &BTreeMap<CellId, bool>,
    station_cells: &BTreeSet<CellId>,
) -> Result<Metrics> {
    let c = confusion(pred, labels)?;
    let n = c.total() as f64;
    let ratio = |a: usize, b: usize| if b == 0 { f64::NAN } else { a as f64 / b as f64 };
    let recall = ratio(c.tp, c.tp + c.fn_);
    let specificity = ratio(c.tn, c.tn + c.fp);
    let precision = if c.tp + c.fp == 0 { 0.0 } else { c.tp as f64 / (c.tp + c.fp) as f64 };
    let f1 = if recall.is_nan() {
        f64::NAN
    } else if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    let fp_score: f64 = pred
        .iter()
        .filter(|(cell, &p)| p && !labels[*cell])
        .map(|(&cell, _)| nearest_station_distance(cell, station_cells).map_or(0.0, |k| 1.0 / (k as f64 + 1.0)))
        .sum();
    Ok(Metrics {
        accuracy: (c.tp + c.tn) as f64 / n,
        balanced_accuracy: (recall + specificity) / 2.0,
        precision,
        recall,
        f1,
        custom: ((c.tp + c.tn) as f64 + fp_score) / n,
        positive_rate: (c.tp + c.fp) as f64 / n,
    })
}

/// Means and population standard deviations over iterations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub iterations: usize,
    pub mean: Metrics,
    pub stddev: Metrics,
    /// Metrics that were undefined in at least one iteration.
    pub undefined: Vec<String>,
}

impl MetricsReport {
    pub fn from_iterations(runs: &[Metrics]) -> Self {
        let n = runs.len() as f64;
        let mut mean = [0.0; 7];
        for r in runs {
            for (m, v) in mean.iter_mut().zip(r.values()) {
                *m += v / n;
            }
        }
        let mut var = [0.0; 7];
        for r in runs {
            for ((s, v), m) in var.iter_mut().zip(r.values()).zip(mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        let undefined: BTreeSet<&str> = runs.iter().flat_map(|r| r.undefined()).collect();
        Self {
            iterations: runs.len(),
            mean: Metrics::from_values(mean),
            stddev: Metrics::from_values(var.map(f64::sqrt)),
            undefined: undefined.into_iter().map(str::to_owned).collect(),
        }
    }
}
