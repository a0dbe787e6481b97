//! Whole-city probability maps and their GeoJSON / CSV exports.

use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::evaluation::{iteration_seeds, CityData};
use crate::hexgrid::{cell_boundary, CellId, Resolution};
use crate::learning::{fit_classifier, sample_training_set, ExperimentConfig};
use crate::osm::{geometry_to_json, Geometry, Polygon};

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionMap {
    pub city: String,
    pub resolution: Resolution,
    /// Mean positive-class probability per cell, for every evaluated cell.
    pub probabilities: BTreeMap<CellId, f64>,
    pub iterations_averaged: usize,
    pub threshold: f64,
    /// Known station labels of the evaluated city, if any.
    pub labels: Option<BTreeMap<CellId, bool>>,
    /// Seed the map was produced with, when known.
    pub seed: Option<u64>,
}

impl PredictionMap {
    /// Cells at or above the threshold. The raw map is never modified.
    pub fn filtered(&self) -> impl Iterator<Item = (CellId, f64)> + '_ {
        self.probabilities
            .iter()
            .filter(|(_, &p)| p >= self.threshold)
            .map(|(&c, &p)| (c, p))
    }

    /// The same map viewed at another threshold.
    pub fn with_threshold(&self, threshold: f64) -> Result<Self> {
        check_threshold(threshold)?;
        Ok(Self {
            threshold,
            ..self.clone()
        })
    }

    /// Writes `cell,probability` rows for the whole raw map.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["cell", "probability"])?;
        for (c, p) in &self.probabilities {
            out.write_record([c.to_string(), p.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a map written by `write_csv`; iteration count and seed are not
    /// recorded there and come back as 1 and unknown.
    pub fn read_csv<R: std::io::Read>(r: R, city: &str, resolution: Resolution, threshold: f64) -> Result<Self> {
        check_threshold(threshold)?;
        let mut reader = csv::Reader::from_reader(r);
        let mut probabilities = BTreeMap::new();
        for row in reader.records() {
            let row = row?;
            let line = row.position().map_or(0, |p| p.line() as usize);
            let bad = |m: String| Error::Row { line, message: m };
            let cell: CellId = row.get(0).unwrap_or_default().parse().map_err(|e: Error| bad(e.to_string()))?;
            let p: f64 = row
                .get(1)
                .unwrap_or_default()
                .parse()
                .map_err(|e| bad(format!("probability: {e}")))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(bad(format!("probability {p} outside [0, 1]")));
            }
            probabilities.insert(cell, p);
        }
        Ok(Self {
            city: city.to_owned(),
            resolution,
            probabilities,
            iterations_averaged: 1,
            threshold,
            labels: None,
            seed: None,
        })
    }
}

fn check_threshold(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::config(format!("threshold {t} outside [0, 1]")))
    }
}

/// Probability maps of each independently trained model, in iteration order.
pub fn predict_city_iterations(
    train: &CityData,
    eval: &CityData,
    cfg: &ExperimentConfig,
    iterations: usize,
) -> Result<Vec<BTreeMap<CellId, f64>>> {
    cfg.validate()?;
    if iterations == 0 {
        return Err(Error::config("iterations must be at least 1"));
    }
    let train_features = train.features(cfg)?;
    let eval_features = eval.features(cfg)?;
    let cells: Vec<CellId> = eval_features.keys().copied().collect();
    let xe: Vec<Vec<f64>> = eval_features.into_values().collect();
    (0..iterations as u64)
        .into_par_iter()
        .map(|i| {
            let (sample_seed, model_seed) = iteration_seeds(cfg.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let sample = sample_training_set(&train.dataset.labels, cfg.imbalance_ratio, &mut rng)?;
            let (x, y): (Vec<Vec<f64>>, Vec<bool>) = sample
                .iter()
                .map(|c| (train_features[c].clone(), train.dataset.labels[c]))
                .unzip();
            let model_cfg = ExperimentConfig {
                seed: model_seed,
                ..cfg.clone()
            };
            let model = fit_classifier(&x, &y, &model_cfg)?;
            Ok(cells.iter().copied().zip(model.predict_proba(&xe)?).collect())
        })
        .collect()
}

/// Mean probability over `iterations` models trained on `train`, for every
/// labelled cell of `eval`.
pub fn predict_city(
    train: &CityData,
    eval: &CityData,
    cfg: &ExperimentConfig,
    iterations: usize,
    threshold: f64,
) -> Result<PredictionMap> {
    check_threshold(threshold)?;
    let maps = predict_city_iterations(train, eval, cfg, iterations)?;
    let mut probabilities: BTreeMap<CellId, f64> = BTreeMap::new();
    for m in &maps {
        for (c, p) in m {
            *probabilities.entry(*c).or_default() += p;
        }
    }
    let n = maps.len() as f64;
    probabilities.values_mut().for_each(|p| *p /= n);
    Ok(PredictionMap {
        city: eval.city().to_owned(),
        resolution: eval.dataset.resolution,
        probabilities,
        iterations_averaged: maps.len(),
        threshold,
        labels: Some(eval.dataset.labels.clone()),
        seed: Some(cfg.seed),
    })
}

/// GeoJSON FeatureCollection with one polygon per retained cell.
pub fn export_geojson(pm: &PredictionMap) -> Vec<u8> {
    let features: Vec<Value> = pm
        .filtered()
        .map(|(c, p)| {
            let ring = Geometry::Polygon(Polygon::new(cell_boundary(c), Vec::new()));
            let mut props = json!({"cell": c.to_string(), "probability": p});
            if let Some(station) = pm.labels.as_ref().and_then(|l| l.get(&c)) {
                props["station"] = json!(station);
            }
            json!({"type": "Feature", "id": c.to_string(), "geometry": geometry_to_json(&ring), "properties": props})
        })
        .collect();
    let doc = json!({
        "type": "FeatureCollection",
        "features": features,
        "hexstation": {
            "city": pm.city,
            "resolution": pm.resolution,
            "threshold": pm.threshold,
            "iterations": pm.iterations_averaged,
            "seed": pm.seed,
        },
    });
    let mut out = serde_json::to_vec_pretty(&doc).expect("json value serializes");
    out.push(b'\n');
    out
}
