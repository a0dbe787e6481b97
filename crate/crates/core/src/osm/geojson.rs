//! GeoJSON (RFC 7946) reading and writing for [`GeoObject`]s.

use serde::{Deserialize, Deserializer, Serializer};
use serde_json::{json, Map, Value};

use super::{GeoObject, Geometry, Polygon};
use crate::error::{Error, Result};
use crate::hexgrid::LatLng;

/// Objects parsed from a FeatureCollection plus per-feature warnings for
/// features that were skipped.
#[derive(Debug, Default)]
pub struct ParsedObjects {
    pub objects: Vec<GeoObject>,
    pub warnings: Vec<String>,
}

/// Parses a FeatureCollection, logging and skipping unsupported features.
pub fn parse_geojson(bytes: &[u8]) -> Result<Vec<GeoObject>> {
    let parsed = parse_geojson_with_warnings(bytes)?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    Ok(parsed.objects)
}

pub fn parse_geojson_with_warnings(bytes: &[u8]) -> Result<ParsedObjects> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        offset: byte_offset(bytes, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let not_collection = || Error::Parse {
        offset: 0,
        message: "expected a GeoJSON FeatureCollection".into(),
    };
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(not_collection());
    }
    let features = root.get("features").and_then(Value::as_array).ok_or_else(not_collection)?;

    let mut out = ParsedObjects::default();
    for (i, feature) in features.iter().enumerate() {
        match feature_to_object(feature, i) {
            Ok(o) => out.objects.push(o),
            Err(msg) => out.warnings.push(format!("feature {i} skipped: {msg}")),
        }
    }
    Ok(out)
}

fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start = bytes
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == b'\n')
        .nth(line.saturating_sub(2))
        .map_or(0, |(i, _)| i + 1);
    let start = if line == 1 { 0 } else { line_start };
    (start + column.saturating_sub(1)).min(bytes.len())
}

fn feature_to_object(feature: &Value, index: usize) -> std::result::Result<GeoObject, String> {
    let geometry = feature
        .get("geometry")
        .filter(|g| !g.is_null())
        .ok_or("missing geometry")?;
    let geometry = geometry_from_json(geometry).map_err(|e| e.to_string())?;
    if geometry.is_empty() {
        return Err("empty geometry".into());
    }

    let mut tags = std::collections::BTreeMap::new();
    if let Some(props) = feature.get("properties").and_then(Value::as_object) {
        for (k, v) in props {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                _ => continue,
            };
            tags.insert(k.clone(), v);
        }
    }
    let id = match feature.get("id") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => tags
            .get("@id")
            .cloned()
            .unwrap_or_else(|| format!("feature-{index}")),
    };
    Ok(GeoObject { id, geometry, tags })
}

fn position(v: &Value) -> Result<LatLng> {
    let arr = v
        .as_array()
        .filter(|a| a.len() >= 2)
        .ok_or_else(|| Error::input("position must be an array of at least two numbers"))?;
    let lon = arr[0].as_f64().ok_or_else(|| Error::input("non-numeric longitude"))?;
    let lat = arr[1].as_f64().ok_or_else(|| Error::input("non-numeric latitude"))?;
    LatLng::new(lat, lon)
}

fn positions(v: &Value) -> Result<Vec<LatLng>> {
    v.as_array()
        .ok_or_else(|| Error::input("expected an array of positions"))?
        .iter()
        .map(position)
        .collect()
}

fn polygon(v: &Value) -> Result<Polygon> {
    let rings = v.as_array().ok_or_else(|| Error::input("expected an array of rings"))?;
    let mut rings = rings.iter().map(positions);
    let exterior = rings.next().ok_or_else(|| Error::input("polygon without rings"))??;
    let holes = rings.collect::<Result<Vec<_>>>()?;
    Ok(Polygon::new(exterior, holes))
}

/// Converts a GeoJSON geometry object.
pub fn geometry_from_json(g: &Value) -> Result<Geometry> {
    let kind = g.get("type").and_then(Value::as_str).unwrap_or("<missing>");
    let coords = || g.get("coordinates").ok_or_else(|| Error::input("missing coordinates"));
    match kind {
        "Point" => Ok(Geometry::Point(position(coords()?)?)),
        "LineString" => Ok(Geometry::LineString(positions(coords()?)?)),
        "Polygon" => Ok(Geometry::Polygon(polygon(coords()?)?)),
        "MultiPolygon" => {
            let parts = coords()?
                .as_array()
                .ok_or_else(|| Error::input("expected an array of polygons"))?
                .iter()
                .map(polygon)
                .collect::<Result<Vec<_>>>()?;
            Ok(Geometry::MultiPolygon(parts))
        }
        other => Err(Error::input(format!("unsupported geometry type {other}"))),
    }
}

fn pos_json(p: &LatLng) -> Value {
    json!([p.lon(), p.lat()])
}

fn ring_json(ring: &[LatLng]) -> Value {
    Value::Array(ring.iter().map(pos_json).collect())
}

fn polygon_json(p: &Polygon) -> Value {
    Value::Array(
        std::iter::once(&p.exterior)
            .chain(&p.holes)
            .map(|r| ring_json(r))
            .collect(),
    )
}

/// Converts to a GeoJSON geometry object (lon, lat order).
pub fn geometry_to_json(g: &Geometry) -> Value {
    match g {
        Geometry::Point(p) => json!({"type": "Point", "coordinates": pos_json(p)}),
        Geometry::LineString(l) => json!({"type": "LineString", "coordinates": ring_json(l)}),
        Geometry::Polygon(p) => json!({"type": "Polygon", "coordinates": polygon_json(p)}),
        Geometry::MultiPolygon(parts) => json!({
            "type": "MultiPolygon",
            "coordinates": parts.iter().map(polygon_json).collect::<Vec<_>>(),
        }),
    }
}

/// Writes objects as a FeatureCollection.
pub fn serialize_geojson(objects: &[GeoObject]) -> Vec<u8> {
    let features: Vec<Value> = objects
        .iter()
        .map(|o| {
            let props: Map<String, Value> = o
                .tags
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            json!({
                "type": "Feature",
                "id": o.id,
                "geometry": geometry_to_json(&o.geometry),
                "properties": props,
            })
        })
        .collect();
    let fc = json!({"type": "FeatureCollection", "features": features});
    serde_json::to_vec(&fc).expect("in-memory JSON serialization")
}

pub(super) fn serialize_geometry<S: Serializer>(
    g: &Geometry,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&geometry_to_json(g), s)
}

pub(super) fn deserialize_geometry<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Geometry, D::Error> {
    let v = Value::deserialize(d)?;
    geometry_from_json(&v).map_err(serde::de::Error::custom)
}
