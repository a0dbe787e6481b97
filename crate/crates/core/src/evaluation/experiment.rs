use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::metrics::{compute_metrics, Metrics, MetricsReport, METRIC_NAMES};
use crate::embeddings::{EmbeddingTable, RegionMethod};
use crate::error::{Error, Result};
use crate::hexgrid::CellId;
use crate::learning::{derive_seed, fit_classifier, sample_training_set, ExperimentConfig, DEFAULT_THRESHOLD};
use crate::study_area::CityDataset;

/// Share of each class held out for testing in every iteration.
pub const TEST_FRACTION: f64 = 0.2;
/// Fewest positive cells an experiment accepts.
pub const MIN_POSITIVES: usize = 5;

/// A labelled city with its region embeddings.
#[derive(Debug, Clone)]
pub struct CityData {
    pub dataset: CityDataset,
    pub embeddings: BTreeMap<RegionMethod, EmbeddingTable>,
}

impl CityData {
    pub fn new(dataset: CityDataset) -> Self {
        Self {
            dataset,
            embeddings: BTreeMap::new(),
        }
    }

    pub fn with_embeddings(mut self, method: RegionMethod, table: EmbeddingTable) -> Self {
        self.embeddings.insert(method, table);
        self
    }

    pub fn city(&self) -> &str {
        &self.dataset.city
    }

    pub fn table(&self, method: RegionMethod) -> Result<&EmbeddingTable> {
        self.embeddings
            .get(&method)
            .ok_or_else(|| Error::config(format!("city {} has no {method} embeddings", self.city())))
    }

    /// Neighbourhood features for every labelled cell.
    pub fn features(&self, cfg: &ExperimentConfig) -> Result<BTreeMap<CellId, Vec<f64>>> {
        if cfg.resolution != self.dataset.resolution {
            return Err(Error::config(format!(
                "config resolution {} does not match city {} at resolution {}",
                cfg.resolution,
                self.city(),
                self.dataset.resolution
            )));
        }
        let cells: Vec<CellId> = self.dataset.labels.keys().copied().collect();
        let rows = self
            .table(cfg.region_method)?
            .features(&cells, cfg.neighbourhood_k, cfg.neighbourhood_method)?;
        Ok(cells.into_iter().zip(rows).collect())
    }
}

fn check_positives(ds: &CityDataset) -> Result<()> {
    let p = ds.positives().count();
    if p < MIN_POSITIVES {
        return Err(Error::Dataset(format!(
            "city {} has {p} positive cells; at least {MIN_POSITIVES} are needed",
            ds.city
        )));
    }
    Ok(())
}

/// Splits each class of `cells` into train and test parts.
pub fn stratified_split(
    cells: &[CellId],
    labels: &BTreeMap<CellId, bool>,
    rng: &mut ChaCha8Rng,
) -> (Vec<CellId>, Vec<CellId>) {
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for class in [true, false] {
        let mut group: Vec<CellId> = cells.iter().copied().filter(|c| labels[c] == class).collect();
        group.shuffle(rng);
        let n = group.len();
        let n_test = if n < 2 {
            0
        } else {
            ((n as f64 * TEST_FRACTION).round() as usize).clamp(1, n - 1)
        };
        test.extend_from_slice(&group[..n_test]);
        train.extend_from_slice(&group[n_test..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

fn rows(cells: &[CellId], features: &BTreeMap<CellId, Vec<f64>>, labels: &BTreeMap<CellId, bool>) -> (Vec<Vec<f64>>, Vec<bool>) {
    cells.iter().map(|c| (features[c].clone(), labels[c])).unzip()
}

/// Seeds for iteration `i`: one for sampling and splitting, one for the model.
pub fn iteration_seeds(seed: u64, i: u64) -> (u64, u64) {
    let s = derive_seed(seed, i);
    (s, derive_seed(s, 1))
}

/// Repeated sample / split / fit / score on one city.
pub fn run_experiment(cfg: &ExperimentConfig, data: &CityData) -> Result<MetricsReport> {
    Ok(MetricsReport::from_iterations(&experiment_iterations(cfg, data)?))
}

/// Per-iteration metrics of `run_experiment`, in iteration order.
pub fn experiment_iterations(cfg: &ExperimentConfig, data: &CityData) -> Result<Vec<Metrics>> {
    cfg.validate()?;
    let ds = &data.dataset;
    check_positives(ds)?;
    let features = data.features(cfg)?;
    let stations = ds.station_cells();
    (0..cfg.iterations as u64)
        .into_par_iter()
        .map(|i| {
            let (sample_seed, model_seed) = iteration_seeds(cfg.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let sample = sample_training_set(&ds.labels, cfg.imbalance_ratio, &mut rng)?;
            let (train, test) = stratified_split(&sample, &ds.labels, &mut rng);
            let (x, y) = rows(&train, &features, &ds.labels);
            let model_cfg = ExperimentConfig {
                seed: model_seed,
                ..cfg.clone()
            };
            let model = fit_classifier(&x, &y, &model_cfg)?;
            let (xt, _) = rows(&test, &features, &ds.labels);
            let pred: BTreeMap<CellId, bool> = test
                .iter()
                .copied()
                .zip(model.predict(&xt, DEFAULT_THRESHOLD)?)
                .collect();
            let truth: BTreeMap<CellId, bool> = test.iter().map(|c| (*c, ds.labels[c])).collect();
            compute_metrics(&pred, &truth, &stations)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub config: ExperimentConfig,
    pub outcome: std::result::Result<MetricsReport, String>,
}

/// Runs every config; failures are recorded per row.
pub fn sweep(grid: &[ExperimentConfig], data: &CityData) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::config("sweep grid is empty"));
    }
    Ok(grid
        .par_iter()
        .map(|cfg| SweepRow {
            config: cfg.clone(),
            outcome: run_experiment(cfg, data).map_err(|e| e.to_string()),
        })
        .collect())
}

fn config_echo(cfg: &ExperimentConfig) -> Vec<String> {
    vec![
        cfg.resolution.to_string(),
        cfg.neighbourhood_k.to_string(),
        cfg.region_method.to_string(),
        cfg.neighbourhood_method.to_string(),
        cfg.scaler.to_string(),
        cfg.imbalance_ratio.to_string(),
        cfg.classifier.to_string(),
        cfg.class_balance_mode.to_string(),
        cfg.iterations.to_string(),
        cfg.seed.to_string(),
        cfg.plugin.clone().unwrap_or_default(),
    ]
}

const CONFIG_COLUMNS: [&str; 11] = [
    "resolution",
    "neighbourhood_k",
    "region_method",
    "neighbourhood_method",
    "scaler",
    "imbalance_ratio",
    "classifier",
    "class_balance_mode",
    "iterations",
    "seed",
    "plugin",
];

/// Writes `results.csv`: config echo, metric means and stddevs, then the
/// undefined-metric flags and any error.
pub fn write_results_csv<W: Write>(rows: &[SweepRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = CONFIG_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(METRIC_NAMES.iter().map(|m| format!("{m}_mean")));
    header.extend(METRIC_NAMES.iter().map(|m| format!("{m}_std")));
    header.extend(["undefined".into(), "error".into()]);
    out.write_record(&header)?;
    for row in rows {
        let mut rec = config_echo(&row.config);
        match &row.outcome {
            Ok(r) => {
                rec.extend(r.mean.values().iter().map(|v| v.to_string()));
                rec.extend(r.stddev.values().iter().map(|v| v.to_string()));
                rec.push(r.undefined.join(";"));
                rec.push(String::new());
            }
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), 2 * METRIC_NAMES.len() + 1));
                rec.push(e.clone());
            }
        }
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

/// Trains on samples of `train` and scores every labelled cell of `eval`.
pub fn cross_city(train: &CityData, eval: &CityData, cfg: &ExperimentConfig) -> Result<MetricsReport> {
    Ok(MetricsReport::from_iterations(&cross_city_iterations(train, eval, cfg)?))
}

pub fn cross_city_iterations(train: &CityData, eval: &CityData, cfg: &ExperimentConfig) -> Result<Vec<Metrics>> {
    cfg.validate()?;
    check_positives(&train.dataset)?;
    let train_features = train.features(cfg)?;
    let eval_features = eval.features(cfg)?;
    let dims = |f: &BTreeMap<CellId, Vec<f64>>| f.values().next().map_or(0, Vec::len);
    if dims(&train_features) != dims(&eval_features) {
        return Err(Error::config(format!(
            "embedding dimensions differ: {} has {}, {} has {}",
            train.city(),
            dims(&train_features),
            eval.city(),
            dims(&eval_features)
        )));
    }
    let eval_cells: Vec<CellId> = eval.dataset.labels.keys().copied().collect();
    let (xe, _) = rows(&eval_cells, &eval_features, &eval.dataset.labels);
    let stations: BTreeSet<CellId> = eval.dataset.station_cells();
    (0..cfg.iterations as u64)
        .into_par_iter()
        .map(|i| {
            let (sample_seed, model_seed) = iteration_seeds(cfg.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let sample = sample_training_set(&train.dataset.labels, cfg.imbalance_ratio, &mut rng)?;
            let (x, y) = rows(&sample, &train_features, &train.dataset.labels);
            let model_cfg = ExperimentConfig {
                seed: model_seed,
                ..cfg.clone()
            };
            let model = fit_classifier(&x, &y, &model_cfg)?;
            let pred: BTreeMap<CellId, bool> = eval_cells
                .iter()
                .copied()
                .zip(model.predict(&xe, DEFAULT_THRESHOLD)?)
                .collect();
            compute_metrics(&pred, &eval.dataset.labels, &stations)
        })
        .collect()
}

/// Directed train→eval scores for every ordered city pair; row = training
/// city, column = evaluated city.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferMatrix {
    pub cities: Vec<String>,
    pub recall: Vec<Vec<f64>>,
    pub accuracy: Vec<Vec<f64>>,
}

pub fn transfer_matrix(cities: &[CityData], cfg: &ExperimentConfig) -> Result<TransferMatrix> {
    if cities.len() < 2 {
        return Err(Error::config("a transfer matrix needs at least two cities"));
    }
    let n = cities.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let reports = pairs
        .par_iter()
        .map(|&(i, j)| cross_city(&cities[i], &cities[j], cfg))
        .collect::<Result<Vec<_>>>()?;
    let grid = |f: fn(&MetricsReport) -> f64| -> Vec<Vec<f64>> {
        reports.chunks(n).map(|row| row.iter().map(f).collect()).collect()
    };
    Ok(TransferMatrix {
        cities: cities.iter().map(|c| c.city().to_owned()).collect(),
        recall: grid(|r| r.mean.recall),
        accuracy: grid(|r| r.mean.accuracy),
    })
}

impl TransferMatrix {
    /// CSV with a `train` column followed by one column per evaluated city.
    pub fn write_csv<W: Write>(&self, values: &[Vec<f64>], w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(std::iter::once("train").chain(self.cities.iter().map(String::as_str)))?;
        for (city, row) in self.cities.iter().zip(values) {
            let mut rec = vec![city.clone()];
            rec.extend(row.iter().map(|v| v.to_string()));
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::{cell_of, disk, LatLng, Resolution};

    #[test]
    fn split_is_stratified() {
        let c = cell_of(LatLng::new(51.1, 17.0).unwrap(), Resolution::new(9).unwrap());
        let cells: Vec<CellId> = disk(c, 5).into_iter().collect();
        let labels: BTreeMap<CellId, bool> = cells.iter().enumerate().map(|(i, &c)| (c, i % 5 == 0)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (train, test) = stratified_split(&cells, &labels, &mut rng);
        assert_eq!(train.len() + test.len(), cells.len());
        let pos_test = test.iter().filter(|c| labels[c]).count();
        let pos_all = cells.iter().filter(|c| labels[c]).count();
        assert_eq!(pos_test, (pos_all as f64 * 0.2).round() as usize);
        assert!(train.iter().all(|c| !test.contains(c)));
    }
}
