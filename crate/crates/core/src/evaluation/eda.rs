use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hexgrid::CellId;
use crate::osm::Category;
use crate::study_area::{CellBucket, CityDataset};

/// Resolution the per-category comparisons are defined at.
pub const EDA_RESOLUTION: u8 = 9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdaReport {
    pub city: String,
    pub stations: usize,
    pub cells: usize,
    pub population: Option<u64>,
    pub population_per_station: Option<f64>,
    /// Object counts per category over the study area.
    pub category_totals: BTreeMap<Category, u64>,
    /// `category_totals` divided by the number of study-area cells.
    pub category_means: BTreeMap<Category, f64>,
}

pub fn eda_stats(
    ds: &CityDataset,
    population: Option<u64>,
    buckets: &BTreeMap<CellId, CellBucket>,
) -> Result<EdaReport> {
    if ds.resolution.value() != EDA_RESOLUTION {
        return Err(Error::config(format!(
            "descriptive statistics use resolution {EDA_RESOLUTION}, dataset is at {}",
            ds.resolution
        )));
    }
    let stations = ds.stations.len();
    let population_per_station = match population {
        Some(_) if stations == 0 => {
            return Err(Error::Division(format!("city {} has no stations to divide its population by", ds.city)))
        }
        Some(p) => Some(p as f64 / stations as f64),
        None => None,
    };
    let mut totals: BTreeMap<Category, u64> = Category::ALL.iter().map(|&c| (c, 0)).collect();
    for cell in &ds.cells {
        if let Some(b) = buckets.get(cell) {
            for (c, n) in &b.counts {
                *totals.entry(*c).or_default() += n;
            }
        }
    }
    let n = ds.cells.len().max(1) as f64;
    let means = totals.iter().map(|(&c, &t)| (c, t as f64 / n)).collect();
    Ok(EdaReport {
        city: ds.city.clone(),
        stations,
        cells: ds.cells.len(),
        population,
        population_per_station,
        category_totals: totals,
        category_means: means,
    })
}

/// Per-category means min-max scaled across cities. A category with the
/// same mean everywhere maps to 0.
pub fn normalize_across_cities(reports: &[EdaReport]) -> BTreeMap<String, BTreeMap<Category, f64>> {
    let mut out: BTreeMap<String, BTreeMap<Category, f64>> = BTreeMap::new();
    for c in Category::ALL {
        let vals: Vec<f64> = reports.iter().map(|r| r.category_means.get(&c).copied().unwrap_or(0.0)).collect();
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (r, v) in reports.iter().zip(vals) {
            let x = if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
            out.entry(r.city.clone()).or_default().insert(c, x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::{LatLng, Resolution};
    use crate::osm::StationRecord;

    fn city(name: &str, stations: usize, shops: u64) -> (CityDataset, BTreeMap<CellId, CellBucket>) {
        let recs: Vec<StationRecord> = (0..stations.max(1))
            .map(|i| StationRecord {
                city: name.into(),
                position: LatLng::new(51.1 + i as f64 * 0.01, 17.0).unwrap(),
                external_id: None,
            })
            .collect();
        let mut ds = CityDataset::build(name, recs, Resolution::new(9).unwrap()).unwrap();
        ds.stations.truncate(stations);
        let cell = *ds.cells.first().unwrap();
        let mut b = CellBucket::empty(cell);
        b.counts.insert(Category::Shops, shops);
        (ds, BTreeMap::from([(cell, b)]))
    }

    #[test]
    fn population_per_station() {
        let (ds, b) = city("a", 3, 1);
        let r = eda_stats(&ds, Some(300), &b).unwrap();
        assert_eq!(r.population_per_station, Some(100.0));
        let (ds0, b0) = city("z", 0, 1);
        assert!(matches!(eda_stats(&ds0, Some(10), &b0), Err(Error::Division(_))));
        assert!(eda_stats(&ds0, None, &b0).is_ok());
    }

    #[test]
    fn normalization_spans_unit_interval() {
        let (a, ba) = city("a", 1, 10);
        let (b, bb) = city("b", 1, 40);
        let ra = eda_stats(&a, None, &ba).unwrap();
        let rb = eda_stats(&b, None, &bb).unwrap();
        let norm = normalize_across_cities(&[ra.clone(), rb]);
        assert_eq!(norm["a"][&Category::Shops], 0.0);
        assert_eq!(norm["b"][&Category::Shops], 1.0);
        let single = normalize_across_cities(&[ra]);
        assert!(single["a"].values().all(|&v| v == 0.0));
    }
}
