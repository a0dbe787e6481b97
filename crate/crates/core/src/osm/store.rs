//! Flat-file per-city store.
//!
//! ```text
//! <root>/<city>/objects.jsonl        one GeoObject per line
//! <root>/<city>/stations.csv         lat,lon,id
//! <root>/<city>/meta.json            counts and fetch provenance
//! <root>/<city>/labels_r<res>.csv    cell,label
//! <root>/<city>/buckets_r<res>.jsonl one CellBucket per line
//! <root>/<city>/emb_<method>_r<res>.csv
//! ```

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::stations::write_stations_csv;
use super::{load_stations, GeoObject, StationRecord};
use crate::error::{Error, Result};
use crate::hexgrid::Resolution;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CityMeta {
    pub city: String,
    pub objects: usize,
    pub stations: usize,
    /// Where the objects came from (file path or Overpass query details).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<serde_json::Value>,
}

#[derive(Debug, Clone)]
pub struct Store {
    root: PathBuf,
}

/// Writes through a temporary sibling file so readers never see a partial
/// file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::file(parent, e))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| Error::file(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::file(path, e))
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::file(path, e))
}

impl Store {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn city_dir(&self, city: &str) -> PathBuf {
        self.root.join(city)
    }

    pub fn objects_path(&self, city: &str) -> PathBuf {
        self.city_dir(city).join("objects.jsonl")
    }

    pub fn stations_path(&self, city: &str) -> PathBuf {
        self.city_dir(city).join("stations.csv")
    }

    pub fn meta_path(&self, city: &str) -> PathBuf {
        self.city_dir(city).join("meta.json")
    }

    pub fn labels_path(&self, city: &str, res: Resolution) -> PathBuf {
        self.city_dir(city).join(format!("labels_r{res}.csv"))
    }

    pub fn buckets_path(&self, city: &str, res: Resolution) -> PathBuf {
        self.city_dir(city).join(format!("buckets_r{res}.jsonl"))
    }

    pub fn embedding_path(&self, city: &str, method: &str, res: Resolution) -> PathBuf {
        self.city_dir(city).join(format!("emb_{method}_r{res}.csv"))
    }

    pub fn encoder_path(&self, city: &str, method: &str, res: Resolution) -> PathBuf {
        self.city_dir(city).join(format!("encoder_{method}_r{res}.json"))
    }

    /// Corpus-wide all-tag vocabulary.
    pub fn vocab_path(&self) -> PathBuf {
        self.root.join("vocab_all.json")
    }

    pub fn write_objects(&self, city: &str, objects: &[GeoObject]) -> Result<()> {
        let mut buf = Vec::new();
        for o in objects {
            serde_json::to_writer(&mut buf, o)?;
            buf.push(b'\n');
        }
        write_atomic(&self.objects_path(city), &buf)?;
        self.update_meta(city, |m| m.objects = objects.len())
    }

    pub fn read_objects(&self, city: &str) -> Result<Vec<GeoObject>> {
        let path = self.objects_path(city);
        let file = fs::File::open(&path).map_err(|e| Error::file(&path, e))?;
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let o = serde_json::from_str(&line).map_err(|e| Error::Row {
                line: i + 1,
                message: format!("{}: {e}", path.display()),
            })?;
            out.push(o);
        }
        Ok(out)
    }

    pub fn write_stations(&self, city: &str, stations: &[StationRecord]) -> Result<()> {
        let mut buf = Vec::new();
        write_stations_csv(stations, &mut buf)?;
        write_atomic(&self.stations_path(city), &buf)?;
        self.update_meta(city, |m| m.stations = stations.len())
    }

    pub fn read_stations(&self, city: &str) -> Result<Vec<StationRecord>> {
        load_stations(&read_file(&self.stations_path(city))?, city)
    }

    pub fn read_meta(&self, city: &str) -> Result<CityMeta> {
        let path = self.meta_path(city);
        if !path.exists() {
            return Ok(CityMeta {
                city: city.to_owned(),
                ..CityMeta::default()
            });
        }
        Ok(serde_json::from_slice(&read_file(&path)?)?)
    }

    pub fn update_meta(&self, city: &str, f: impl FnOnce(&mut CityMeta)) -> Result<()> {
        let mut meta = self.read_meta(city)?;
        meta.city = city.to_owned();
        f(&mut meta);
        let mut buf = serde_json::to_vec_pretty(&meta)?;
        buf.write_all(b"\n")?;
        write_atomic(&self.meta_path(city), &buf)
    }
}
