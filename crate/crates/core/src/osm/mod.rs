//! OpenStreetMap objects, station registries and their classification.

mod category;
mod geojson;
pub mod overpass;
mod selected_tags;
mod stations;
pub mod store;
mod vocab;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hexgrid::LatLng;

pub use category::{categorize, category_set, classify, is_excluded, Category, TagMatch};
pub use geojson::{
    geometry_from_json, geometry_to_json, parse_geojson, parse_geojson_with_warnings,
    serialize_geojson, ParsedObjects,
};
pub use overpass::{fetch_overpass, OverpassConfig};
pub use stations::{load_stations, write_stations_csv, StationRecord};
pub use vocab::{
    build_all_tag_vocab, object_slots, vocab_index, Measure, SlotKey, TagSlot, TagVocabulary, VocabMode,
};

/// A polygon ring set: one exterior ring and any number of holes.
///
/// Rings are stored closed (first vertex repeated at the end).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub exterior: Vec<LatLng>,
    pub holes: Vec<Vec<LatLng>>,
}

impl Polygon {
    pub fn new(exterior: Vec<LatLng>, holes: Vec<Vec<LatLng>>) -> Self {
        Self {
            exterior: close_ring(exterior),
            holes: holes.into_iter().map(close_ring).collect(),
        }
    }
}

fn close_ring(mut ring: Vec<LatLng>) -> Vec<LatLng> {
    if let (Some(&first), Some(&last)) = (ring.first(), ring.last()) {
        if first != last {
            ring.push(first);
        }
    }
    ring
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Point(LatLng),
    LineString(Vec<LatLng>),
    Polygon(Polygon),
    MultiPolygon(Vec<Polygon>),
}

impl Geometry {
    pub fn is_areal(&self) -> bool {
        matches!(self, Geometry::Polygon(_) | Geometry::MultiPolygon(_))
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, Geometry::LineString(_))
    }

    /// Every vertex, exterior rings first.
    pub fn vertices(&self) -> Vec<LatLng> {
        match self {
            Geometry::Point(p) => vec![*p],
            Geometry::LineString(line) => line.clone(),
            Geometry::Polygon(poly) => poly_vertices(poly),
            Geometry::MultiPolygon(parts) => parts.iter().flat_map(poly_vertices).collect(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Geometry::Point(_) => false,
            Geometry::LineString(line) => line.is_empty(),
            Geometry::Polygon(poly) => poly.exterior.is_empty(),
            Geometry::MultiPolygon(parts) => parts.iter().all(|p| p.exterior.is_empty()),
        }
    }
}

fn poly_vertices(poly: &Polygon) -> Vec<LatLng> {
    poly.exterior
        .iter()
        .chain(poly.holes.iter().flatten())
        .copied()
        .collect()
}

/// One OSM feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoObject {
    pub id: String,
    #[serde(
        serialize_with = "geojson::serialize_geometry",
        deserialize_with = "geojson::deserialize_geometry"
    )]
    pub geometry: Geometry,
    #[serde(default)]
    pub tags: BTreeMap<String, String>,
}

impl GeoObject {
    pub fn new(id: impl Into<String>, geometry: Geometry) -> Self {
        Self {
            id: id.into(),
            geometry,
            tags: BTreeMap::new(),
        }
    }

    pub fn with_tag(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.tags.insert(key.into(), value.into());
        self
    }

    pub fn tag(&self, key: &str) -> Option<&str> {
        self.tags.get(key).map(String::as_str)
    }
}
