//! Optional Overpass API download with an on-disk response cache.
//!
//! A fetch runs two queries against the same endpoint: an area lookup by
//! name, then a data query for every tagged node, way and multipolygon
//! relation inside that area (`out geom`). The raw data response is cached
//! under a key derived from the endpoint and area name, so later runs replay
//! it without touching the network.

use std::path::PathBuf;
use std::thread;
use std::time::Duration;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::store::{read_file, write_atomic};
use super::{GeoObject, Geometry, Polygon};
use crate::error::{Error, Result};
use crate::hexgrid::LatLng;

pub const DEFAULT_ENDPOINT: &str = "https://overpass-api.de/api/interpreter";

#[derive(Debug, Clone)]
pub struct OverpassConfig {
    pub endpoint: String,
    pub timeout: Duration,
    pub cache_dir: PathBuf,
    pub retries: u32,
    pub backoff: Duration,
}

impl Default for OverpassConfig {
    fn default() -> Self {
        Self {
            endpoint: DEFAULT_ENDPOINT.into(),
            timeout: Duration::from_secs(180),
            cache_dir: PathBuf::from(".overpass-cache"),
            retries: 3,
            backoff: Duration::from_millis(500),
        }
    }
}

impl OverpassConfig {
    /// Defaults overridden by `HEXSTATION_OVERPASS_URL`,
    /// `HEXSTATION_HTTP_TIMEOUT` (seconds) and `HEXSTATION_CACHE_DIR`.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Ok(url) = std::env::var("HEXSTATION_OVERPASS_URL") {
            cfg.endpoint = url;
        }
        if let Some(secs) = std::env::var("HEXSTATION_HTTP_TIMEOUT")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            cfg.timeout = Duration::from_secs(secs);
        }
        if let Ok(dir) = std::env::var("HEXSTATION_CACHE_DIR") {
            cfg.cache_dir = dir.into();
        }
        cfg
    }

    pub fn cache_path(&self, area_name: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{}\n{}", self.endpoint, area_name));
        self.cache_dir
            .join(format!("overpass-{}.json", hex::encode(&digest[..12])))
    }
}

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn lookup_query(area_name: &str, timeout: Duration) -> String {
    format!(
        "[out:json][timeout:{}];area[\"name\"=\"{}\"][\"boundary\"=\"administrative\"];out ids;",
        timeout.as_secs(),
        quote(area_name)
    )
}

pub fn data_query(area_id: u64, timeout: Duration) -> String {
    format!(
        "[out:json][timeout:{}];area(id:{area_id})->.a;(node(area.a)[~\".\"~\".\"];way(area.a)[~\".\"~\".\"];relation(area.a)[\"type\"=\"multipolygon\"];);out geom;",
        timeout.as_secs()
    )
}

fn run_query(client: &reqwest::blocking::Client, cfg: &OverpassConfig, query: &str) -> Result<Value> {
    let url = reqwest::Url::parse_with_params(&cfg.endpoint, &[("data", query)])
        .map_err(|e| Error::config(format!("bad Overpass endpoint {:?}: {e}", cfg.endpoint)))?;
    let mut last = String::new();
    for attempt in 0..=cfg.retries {
        if attempt > 0 {
            thread::sleep(cfg.backoff * 2u32.pow(attempt - 1));
        }
        match client.get(url.clone()).send() {
            Ok(resp) if resp.status().is_success() => {
                let body = resp.bytes().map_err(|e| Error::Http(e.to_string()))?;
                return serde_json::from_slice(&body).map_err(|e| Error::Http(format!("invalid JSON response: {e}")));
            }
            Ok(resp) => last = format!("HTTP {}", resp.status()),
            Err(e) => last = e.to_string(),
        }
        log::warn!("overpass attempt {} failed: {last}", attempt + 1);
    }
    Err(Error::Http(format!("{} after {} attempt(s): {last}", cfg.endpoint, cfg.retries + 1)))
}

/// Objects inside the named administrative area.
pub fn fetch_overpass(area_name: &str, cfg: &OverpassConfig) -> Result<Vec<GeoObject>> {
    let cache = cfg.cache_path(area_name);
    if cache.exists() {
        log::info!("replaying cached Overpass response {}", cache.display());
        let cached: Value = serde_json::from_slice(&read_file(&cache)?)?;
        return elements_to_objects(cached.get("response").unwrap_or(&Value::Null));
    }

    let client = reqwest::blocking::Client::builder()
        .timeout(cfg.timeout)
        .build()
        .map_err(|e| Error::Http(e.to_string()))?;
    let lookup = run_query(&client, cfg, &lookup_query(area_name, cfg.timeout))?;
    let area_id = lookup
        .get("elements")
        .and_then(Value::as_array)
        .and_then(|els| els.iter().find_map(|e| e.get("id").and_then(Value::as_u64)))
        .ok_or_else(|| Error::Lookup(format!("no administrative area named {area_name:?}")))?;

    let response = run_query(&client, cfg, &data_query(area_id, cfg.timeout))?;
    let objects = elements_to_objects(&response)?;
    let record = json!({
        "endpoint": cfg.endpoint,
        "area": area_name,
        "area_id": area_id,
        "response": response,
    });
    write_atomic(&cache, &serde_json::to_vec(&record)?)?;
    Ok(objects)
}

fn tags_of(e: &Value) -> std::collections::BTreeMap<String, String> {
    e.get("tags")
        .and_then(Value::as_object)
        .map(|t| {
            t.iter()
                .filter_map(|(k, v)| v.as_str().map(|v| (k.clone(), v.to_owned())))
                .collect()
        })
        .unwrap_or_default()
}

fn way_coords(geometry: Option<&Value>) -> Option<Vec<LatLng>> {
    geometry?
        .as_array()?
        .iter()
        .map(|p| {
            let lat = p.get("lat")?.as_f64()?;
            let lon = p.get("lon")?.as_f64()?;
            LatLng::new(lat, lon).ok()
        })
        .collect()
}

/// Whether a closed way describes an area rather than a loop of line.
fn is_area(tags: &std::collections::BTreeMap<String, String>) -> bool {
    match tags.get("area").map(String::as_str) {
        Some("yes") => return true,
        Some("no") => return false,
        _ => {}
    }
    if tags.contains_key("highway") || tags.contains_key("barrier") || tags.contains_key("railway") {
        return false;
    }
    if let Some(w) = tags.get("waterway") {
        return w == "riverbank" || w == "dock";
    }
    if let Some(n) = tags.get("natural") {
        return !matches!(n.as_str(), "coastline" | "tree_row" | "cliff" | "ridge");
    }
    const AREA_KEYS: &[&str] = &[
        "building", "landuse", "leisure", "amenity", "shop", "tourism", "historic", "aeroway",
        "water", "man_made", "military", "sport", "healthcare", "emergency", "public_transport",
        "place",
    ];
    AREA_KEYS.iter().any(|k| tags.contains_key(*k))
}

/// Joins way fragments end to end into closed rings; unclosable leftovers
/// are dropped.
fn assemble_rings(mut parts: Vec<Vec<LatLng>>) -> Vec<Vec<LatLng>> {
    let mut rings = Vec::new();
    while let Some(mut ring) = parts.pop() {
        loop {
            if ring.len() >= 4 && ring.first() == ring.last() {
                rings.push(ring);
                break;
            }
            let end = *ring.last().expect("non-empty fragment");
            let next = parts.iter().position(|p| p.first() == Some(&end) || p.last() == Some(&end));
            match next {
                Some(i) => {
                    let mut p = parts.swap_remove(i);
                    if p.first() != Some(&end) {
                        p.reverse();
                    }
                    ring.extend(p.into_iter().skip(1));
                }
                None => {
                    log::warn!("dropping unclosed multipolygon ring of {} vertices", ring.len());
                    break;
                }
            }
        }
    }
    rings
}

fn point_in_ring(p: LatLng, ring: &[LatLng]) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.lat() > p.lat()) != (b.lat() > p.lat()) {
            let x = a.lon() + (p.lat() - a.lat()) / (b.lat() - a.lat()) * (b.lon() - a.lon());
            if p.lon() < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn relation_geometry(e: &Value) -> Option<Geometry> {
    let members = e.get("members")?.as_array()?;
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    for m in members {
        if m.get("type").and_then(Value::as_str) != Some("way") {
            continue;
        }
        let Some(coords) = way_coords(m.get("geometry")).filter(|c| !c.is_empty()) else {
            continue;
        };
        match m.get("role").and_then(Value::as_str) {
            Some("inner") => inner.push(coords),
            _ => outer.push(coords),
        }
    }
    let mut polygons: Vec<Polygon> = assemble_rings(outer)
        .into_iter()
        .map(|r| Polygon::new(r, Vec::new()))
        .collect();
    for hole in assemble_rings(inner) {
        if let Some(p) = polygons.iter_mut().find(|p| point_in_ring(hole[0], &p.exterior)) {
            p.holes.push(hole);
        }
    }
    match polygons.len() {
        0 => None,
        1 => polygons.pop().map(Geometry::Polygon),
        _ => Some(Geometry::MultiPolygon(polygons)),
    }
}

/// Converts an Overpass JSON (`out geom`) response into objects.
pub fn elements_to_objects(response: &Value) -> Result<Vec<GeoObject>> {
    let elements = response
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Http("Overpass response without an elements array".into()))?;
    let mut out = Vec::new();
    for e in elements {
        let kind = e.get("type").and_then(Value::as_str).unwrap_or_default();
        let id = e.get("id").and_then(Value::as_u64).unwrap_or_default();
        let tags = tags_of(e);
        let geometry = match kind {
            "node" => {
                let lat = e.get("lat").and_then(Value::as_f64);
                let lon = e.get("lon").and_then(Value::as_f64);
                match (lat, lon) {
                    (Some(lat), Some(lon)) => LatLng::new(lat, lon).ok().map(Geometry::Point),
                    _ => None,
                }
            }
            "way" => way_coords(e.get("geometry")).filter(|c| !c.is_empty()).map(|c| {
                if c.len() >= 4 && c.first() == c.last() && is_area(&tags) {
                    Geometry::Polygon(Polygon::new(c, Vec::new()))
                } else {
                    Geometry::LineString(c)
                }
            }),
            "relation" => relation_geometry(e),
            _ => None,
        };
        match geometry {
            Some(geometry) => out.push(GeoObject {
                id: format!("{kind}/{id}"),
                geometry,
                tags,
            }),
            None => log::warn!("skipping {kind}/{id}: no usable geometry"),
        }
    }
    Ok(out)
}
