//! Hierarchical hexagonal grid arithmetic.
//!
//! Cells are H3 indexes; the heavy lifting is delegated to [`h3o`]. This
//! module pins down the contract the rest of the crate relies on: cell
//! lookup, rings and disks, grid distance, radius coverage and boundaries.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Mean earth radius used by H3, in meters.
pub const EARTH_RADIUS_M: f64 = 6_371_007.180_918_475;

/// Resolutions used by the station pipeline.
pub const PIPELINE_RESOLUTIONS: [u8; 3] = [9, 10, 11];

/// A WGS84 coordinate in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatLng {
    lat: f64,
    lon: f64,
}

impl LatLng {
    /// Validates ranges. A longitude of exactly -180 is folded onto 180.
    pub fn new(lat: f64, lon: f64) -> Result<Self> {
        if !lat.is_finite() || !lon.is_finite() {
            return Err(Error::input(format!("non-finite coordinate ({lat}, {lon})")));
        }
        if !(-90.0..=90.0).contains(&lat) {
            return Err(Error::input(format!("latitude {lat} outside [-90, 90]")));
        }
        if !(-180.0..=180.0).contains(&lon) {
            return Err(Error::input(format!("longitude {lon} outside (-180, 180]")));
        }
        let lon = if lon == -180.0 { 180.0 } else { lon };
        Ok(Self { lat, lon })
    }

    pub fn lat(self) -> f64 {
        self.lat
    }

    pub fn lon(self) -> f64 {
        self.lon
    }

    /// Great-circle distance in meters.
    pub fn distance_m(self, other: LatLng) -> f64 {
        self.to_h3().distance_m(other.to_h3())
    }

    fn to_h3(self) -> h3o::LatLng {
        // Ranges were validated in `new`.
        h3o::LatLng::new(self.lat, self.lon).expect("validated coordinate")
    }

    fn from_h3(ll: h3o::LatLng) -> Self {
        Self::new(ll.lat(), ll.lng()).expect("h3o coordinates are in range")
    }
}

impl fmt::Display for LatLng {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.7}, {:.7})", self.lat, self.lon)
    }
}

/// Grid level, 0 (coarsest) to 15.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Resolution(u8);

impl Resolution {
    pub fn new(value: u8) -> Result<Self> {
        if value > 15 {
            return Err(Error::input(format!("resolution {value} outside 0..=15")));
        }
        Ok(Self(value))
    }

    /// Like [`Resolution::new`] but restricted to the pipeline resolutions.
    pub fn pipeline(value: u8) -> Result<Self> {
        if !PIPELINE_RESOLUTIONS.contains(&value) {
            return Err(Error::input(format!(
                "resolution {value} not supported by the pipeline (expected one of 9, 10, 11)"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_pipeline(self) -> bool {
        PIPELINE_RESOLUTIONS.contains(&self.0)
    }

    /// Average hexagon edge length at this resolution, in meters.
    pub fn edge_length_m(self) -> f64 {
        self.to_h3().edge_length_m()
    }

    fn to_h3(self) -> h3o::Resolution {
        h3o::Resolution::try_from(self.0).expect("validated resolution")
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Resolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

impl<'de> Deserialize<'de> for Resolution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        Resolution::new(v).map_err(serde::de::Error::custom)
    }
}

/// One hexagonal (or, rarely, pentagonal) cell.
///
/// Serializes as the 15-character lowercase hexadecimal H3 string.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(h3o::CellIndex);

impl CellId {
    pub fn resolution(self) -> Resolution {
        Resolution(u8::from(self.0.resolution()))
    }

    pub fn is_pentagon(self) -> bool {
        self.0.is_pentagon()
    }

    pub fn raw(self) -> u64 {
        u64::from(self.0)
    }

    pub fn centroid(self) -> LatLng {
        LatLng::from_h3(h3o::LatLng::from(self.0))
    }

    /// Exact cell area on the sphere, m².
    pub fn area_m2(self) -> f64 {
        self.0.area_m2()
    }
}

impl TryFrom<u64> for CellId {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        h3o::CellIndex::try_from(value)
            .map(CellId)
            .map_err(|e| Error::input(format!("invalid cell index {value:#x}: {e}")))
    }
}

impl FromStr for CellId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = u64::from_str_radix(s.trim(), 16)
            .map_err(|e| Error::input(format!("invalid cell id {s:?}: {e}")))?;
        CellId::try_from(raw)
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:015x}", u64::from(self.0))
    }
}

impl fmt::Debug for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellId({self})")
    }
}

impl Serialize for CellId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CellId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The cell at resolution `res` containing `p`.
///
/// A point exactly on a shared edge belongs to exactly one cell, the one
/// chosen by the indexing function.
pub fn cell_of(p: LatLng, res: Resolution) -> CellId {
    CellId(p.to_h3().to_cell(res.to_h3()))
}

/// Cells at exactly grid distance `k` from `c`.
pub fn ring(c: CellId, k: u32) -> BTreeSet<CellId> {
    c.0.grid_ring::<Vec<_>>(k).into_iter().map(CellId).collect()
}

/// Cells within grid distance `k` of `c` (rings 0..=k).
pub fn disk(c: CellId, k: u32) -> BTreeSet<CellId> {
    c.0.grid_disk::<Vec<_>>(k).into_iter().map(CellId).collect()
}

/// Immediate neighbours of `c`.
pub fn neighbours(c: CellId) -> BTreeSet<CellId> {
    ring(c, 1)
}

/// Minimal number of adjacency steps between two cells of equal resolution.
pub fn grid_distance(a: CellId, b: CellId) -> Result<u32> {
    if a.resolution() != b.resolution() {
        return Err(Error::input(format!(
            "grid distance between resolutions {} and {}",
            a.resolution(),
            b.resolution()
        )));
    }
    match a.0.grid_distance(b.0) {
        Ok(d) => Ok(d.unsigned_abs()),
        // Local IJ coordinates fail across pentagon distortion; walk the
        // disks instead, which is slow but exact.
        Err(_) => bfs_distance(a, b, 64).ok_or_else(|| {
            Error::input(format!("cells {a} and {b} are too far apart for a grid distance"))
        }),
    }
}

fn bfs_distance(a: CellId, b: CellId, max_k: u32) -> Option<u32> {
    (0..=max_k).find(|&k| ring(a, k).contains(&b))
}

/// All cells whose centroid lies within `radius_m` (great-circle) of `p`,
/// plus the cell containing `p`.
pub fn cells_within_radius(p: LatLng, radius_m: f64, res: Resolution) -> Result<BTreeSet<CellId>> {
    if radius_m.is_nan() || radius_m < 0.0 {
        return Err(Error::input(format!("radius {radius_m} must be non-negative")));
    }
    let origin = cell_of(p, res);
    let mut out = BTreeSet::from([origin]);
    // Expand ring by ring until an entire ring lies clear of the radius by
    // more than one edge; beyond that no centroid can come back inside.
    let margin = res.edge_length_m() * 2.0;
    for k in 1u32.. {
        let mut nearest = f64::INFINITY;
        for cell in ring(origin, k) {
            let d = p.distance_m(cell.centroid());
            nearest = nearest.min(d);
            if d <= radius_m {
                out.insert(cell);
            }
        }
        if nearest > radius_m + margin {
            break;
        }
    }
    Ok(out)
}

/// Counterclockwise boundary vertices (not repeated at the end).
pub fn cell_boundary(c: CellId) -> Vec<LatLng> {
    c.0.boundary().iter().map(|&v| LatLng::from_h3(v)).collect()
}

/// Boundary closed by repeating the first vertex, as GeoJSON expects.
pub fn cell_boundary_closed(c: CellId) -> Vec<LatLng> {
    let mut ring = cell_boundary(c);
    if let Some(&first) = ring.first() {
        ring.push(first);
    }
    ring
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wroclaw() -> LatLng {
        LatLng::new(51.1079, 17.0385).unwrap()
    }

    #[test]
    fn coordinate_validation() {
        assert!(LatLng::new(95.0, 0.0).is_err());
        assert!(LatLng::new(0.0, 181.0).is_err());
        assert!(LatLng::new(f64::NAN, 0.0).is_err());
        assert_eq!(LatLng::new(10.0, -180.0).unwrap().lon(), 180.0);
    }

    #[test]
    fn resolution_bounds() {
        assert!(Resolution::new(16).is_err());
        assert!(Resolution::pipeline(8).is_err());
        assert!(Resolution::pipeline(11).unwrap().is_pipeline());
    }

    #[test]
    fn cell_id_string_form() {
        let c = cell_of(wroclaw(), Resolution::new(9).unwrap());
        let s = c.to_string();
        assert_eq!(s.len(), 15);
        assert_eq!(s, s.to_lowercase());
        assert_eq!(s.parse::<CellId>().unwrap(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, format!("\"{s}\""));
    }

    #[test]
    fn ring_and_disk_basics() {
        let c = cell_of(wroclaw(), Resolution::new(10).unwrap());
        assert_eq!(ring(c, 0), BTreeSet::from([c]));
        assert_eq!(disk(c, 0), BTreeSet::from([c]));
        assert_eq!(ring(c, 1).len(), 6);
        assert_eq!(ring(c, 3).len(), 18);
        assert_eq!(disk(c, 2).len(), 19);
    }

    #[test]
    fn mixed_resolution_distance_is_an_error() {
        let a = cell_of(wroclaw(), Resolution::new(9).unwrap());
        let b = cell_of(wroclaw(), Resolution::new(10).unwrap());
        assert!(grid_distance(a, b).is_err());
        assert_eq!(grid_distance(a, a).unwrap(), 0);
    }

    #[test]
    fn radius_zero_and_negative() {
        let res = Resolution::new(9).unwrap();
        let got = cells_within_radius(wroclaw(), 0.0, res).unwrap();
        assert_eq!(got, BTreeSet::from([cell_of(wroclaw(), res)]));
        assert!(cells_within_radius(wroclaw(), -1.0, res).is_err());
    }

    #[test]
    fn pentagon_does_not_crash() {
        let res = h3o::Resolution::Ten;
        let pentagon = CellId(res.pentagons().next().unwrap());
        assert!(pentagon.is_pentagon());
        assert_eq!(ring(pentagon, 1).len(), 5);
        assert_eq!(cell_boundary(pentagon).len(), 5);
        let far = ring(pentagon, 3).into_iter().next().unwrap();
        assert_eq!(grid_distance(pentagon, far).unwrap(), 3);
    }
}
