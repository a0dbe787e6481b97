//! The labelled cell universe of a city and per-cell object buckets.

pub mod clip;
pub mod projection;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{cell_boundary, cell_of, cells_within_radius, disk, CellId, Resolution};
use crate::osm::{category_set, object_slots, Category, GeoObject, Geometry, StationRecord, TagSlot, TagVocabulary, VocabMode};
use projection::Xy;
use projection::LocalProjection;

/// Cells within this distance of a station make up the study area.
pub const STATION_BUFFER_M: f64 = 2000.0;

/// Labelled cells of one city at one resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct CityDataset {
    pub city: String,
    pub resolution: Resolution,
    pub cells: BTreeSet<CellId>,
    pub labels: BTreeMap<CellId, bool>,
    pub stations: Vec<StationRecord>,
}

impl CityDataset {
    /// Study area plus labels for a station list.
    pub fn build(city: &str, stations: Vec<StationRecord>, res: Resolution) -> Result<Self> {
        let cells = build_study_area(&stations, res)?;
        let labels = label_cells(&cells, &stations);
        Ok(Self {
            city: city.to_owned(),
            resolution: res,
            cells,
            labels,
            stations,
        })
    }

    /// Rebuilds a dataset from stored labels.
    pub fn from_labels(city: &str, res: Resolution, labels: BTreeMap<CellId, bool>, stations: Vec<StationRecord>) -> Self {
        Self {
            city: city.to_owned(),
            resolution: res,
            cells: labels.keys().copied().collect(),
            labels,
            stations,
        }
    }

    pub fn positives(&self) -> impl Iterator<Item = CellId> + '_ {
        self.labels.iter().filter(|(_, &l)| l).map(|(&c, _)| c)
    }

    pub fn negatives(&self) -> impl Iterator<Item = CellId> + '_ {
        self.labels.iter().filter(|(_, &l)| !l).map(|(&c, _)| c)
    }

    /// Cells holding at least one station.
    pub fn station_cells(&self) -> BTreeSet<CellId> {
        self.positives().collect()
    }

    /// The study area grown by `k` rings, for neighbourhood lookups.
    pub fn dilated(&self, k: u32) -> BTreeSet<CellId> {
        dilate(&self.cells, k)
    }
}

pub fn dilate(cells: &BTreeSet<CellId>, k: u32) -> BTreeSet<CellId> {
    if k == 0 {
        return cells.clone();
    }
    cells.iter().flat_map(|&c| disk(c, k)).collect()
}

/// Union of the 2 km station buffers.
pub fn build_study_area(stations: &[StationRecord], res: Resolution) -> Result<BTreeSet<CellId>> {
    if stations.is_empty() {
        return Err(Error::input("a study area needs at least one station"));
    }
    let per_station = stations
        .par_iter()
        .map(|s| cells_within_radius(s.position, STATION_BUFFER_M, res))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_station.into_iter().flatten().collect())
}

/// A cell is positive iff at least one station indexes into it.
pub fn label_cells(cells: &BTreeSet<CellId>, stations: &[StationRecord]) -> BTreeMap<CellId, bool> {
    let mut labels: BTreeMap<CellId, bool> = cells.iter().map(|&c| (c, false)).collect();
    let Some(res) = cells.first().map(|c| c.resolution()) else {
        return labels;
    };
    for s in stations {
        if let Some(label) = labels.get_mut(&cell_of(s.position, res)) {
            *label = true;
        }
    }
    labels
}

/// Objects assigned to one cell, with clipped measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellBucket {
    pub cell: CellId,
    /// Intersecting objects per category (one per intersected cell).
    #[serde(default)]
    pub counts: BTreeMap<Category, u64>,
    /// Non-areal objects per category.
    #[serde(default)]
    pub point_counts: BTreeMap<Category, u64>,
    /// Clipped polygon area, m².
    #[serde(default)]
    pub area_sums: BTreeMap<Category, f64>,
    /// Clipped road length, m (road categories only).
    #[serde(default)]
    pub length_sums: BTreeMap<Category, f64>,
    /// Selected-vocabulary slot index to measure.
    #[serde(default)]
    pub tag_counts_selected: BTreeMap<usize, f64>,
    /// Observed all-tag slot to measure; mapped to indices once a corpus
    /// vocabulary exists.
    #[serde(default)]
    pub tag_counts_all: BTreeMap<TagSlot, f64>,
}

impl CellBucket {
    pub fn empty(cell: CellId) -> Self {
        Self {
            cell,
            counts: BTreeMap::new(),
            point_counts: BTreeMap::new(),
            area_sums: BTreeMap::new(),
            length_sums: BTreeMap::new(),
            tag_counts_selected: BTreeMap::new(),
            tag_counts_all: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
            && self.area_sums.is_empty()
            && self.length_sums.is_empty()
            && self.tag_counts_selected.is_empty()
            && self.tag_counts_all.is_empty()
    }

    /// Adds every measure of `other` into `self`.
    pub fn merge(&mut self, other: &CellBucket) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_default() += v;
        }
        for (k, v) in &other.point_counts {
            *self.point_counts.entry(*k).or_default() += v;
        }
        for (k, v) in &other.area_sums {
            *self.area_sums.entry(*k).or_default() += v;
        }
        for (k, v) in &other.length_sums {
            *self.length_sums.entry(*k).or_default() += v;
        }
        for (k, v) in &other.tag_counts_selected {
            *self.tag_counts_selected.entry(*k).or_default() += v;
        }
        for (k, v) in &other.tag_counts_all {
            *self.tag_counts_all.entry(k.clone()).or_default() += v;
        }
    }
}

/// How much of one object falls into one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Share {
    Point,
    Length(f64),
    Area(f64),
    /// Degenerate line or ring: counted, no measure.
    Touch,
}

struct CellShape {
    cell: CellId,
    ring: Vec<Xy>,
    bbox: [f64; 4],
}

/// Uniform-bin index over projected cell boundaries.
struct CellIndex {
    shapes: Vec<CellShape>,
    bins: HashMap<(i64, i64), Vec<usize>>,
    bin: f64,
}

impl CellIndex {
    fn new(cells: &BTreeSet<CellId>, proj: &LocalProjection) -> Self {
        let shapes: Vec<CellShape> = cells
            .iter()
            .map(|&cell| {
                let ring = clip::ensure_ccw(cell_boundary(cell).into_iter().map(|p| proj.project(p)).collect());
                let bbox = clip::bbox(&ring);
                CellShape { cell, ring, bbox }
            })
            .collect();
        let bin = shapes
            .iter()
            .map(|s| (s.bbox[2] - s.bbox[0]).max(s.bbox[3] - s.bbox[1]))
            .fold(1.0, f64::max)
            * 2.0;
        let mut bins: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, s) in shapes.iter().enumerate() {
            for key in Self::keys(s.bbox, bin) {
                bins.entry(key).or_default().push(i);
            }
        }
        Self { shapes, bins, bin }
    }

    fn keys(b: [f64; 4], bin: f64) -> impl Iterator<Item = (i64, i64)> {
        let (x0, y0) = ((b[0] / bin).floor() as i64, (b[1] / bin).floor() as i64);
        let (x1, y1) = ((b[2] / bin).floor() as i64, (b[3] / bin).floor() as i64);
        (x0..=x1).flat_map(move |x| (y0..=y1).map(move |y| (x, y)))
    }

    /// Shapes whose bounding box overlaps `b`, in cell order.
    fn candidates(&self, b: [f64; 4]) -> Vec<&CellShape> {
        let span = ((b[2] - b[0]) / self.bin).ceil() * ((b[3] - b[1]) / self.bin).ceil();
        let mut idx: Vec<usize> = if span > self.shapes.len() as f64 {
            (0..self.shapes.len()).collect()
        } else {
            Self::keys(b, self.bin)
                .filter_map(|k| self.bins.get(&k))
                .flatten()
                .copied()
                .collect()
        };
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter()
            .map(|i| &self.shapes[i])
            .filter(|s| s.bbox[0] <= b[2] && s.bbox[2] >= b[0] && s.bbox[1] <= b[3] && s.bbox[3] >= b[1])
            .collect()
    }
}

fn shares(
    o: &GeoObject,
    cells: &BTreeSet<CellId>,
    res: Resolution,
    proj: &LocalProjection,
    index: &CellIndex,
) -> Vec<(CellId, Share)> {
    let vertex_cells = || -> Vec<(CellId, Share)> {
        let touched: BTreeSet<CellId> = o
            .geometry
            .vertices()
            .into_iter()
            .map(|p| cell_of(p, res))
            .filter(|c| cells.contains(c))
            .collect();
        touched.into_iter().map(|c| (c, Share::Touch)).collect()
    };
    match &o.geometry {
        Geometry::Point(p) => {
            let c = cell_of(*p, res);
            if cells.contains(&c) {
                vec![(c, Share::Point)]
            } else {
                Vec::new()
            }
        }
        Geometry::LineString(line) => {
            let xy: Vec<Xy> = line.iter().map(|&p| proj.project(p)).collect();
            if clip::line_length(&xy) <= 0.0 {
                log::debug!("object {} has a zero-length line", o.id);
                return vertex_cells();
            }
            index
                .candidates(clip::bbox(&xy))
                .into_iter()
                .filter_map(|s| {
                    let len = clip::clipped_length(&xy, &s.ring);
                    (len > 0.0).then_some((s.cell, Share::Length(len)))
                })
                .collect()
        }
        Geometry::Polygon(_) | Geometry::MultiPolygon(_) => {
            let parts: Vec<(Vec<Xy>, Vec<Vec<Xy>>)> = match &o.geometry {
                Geometry::Polygon(p) => vec![(p.exterior.clone(), p.holes.clone())],
                Geometry::MultiPolygon(ps) => ps.iter().map(|p| (p.exterior.clone(), p.holes.clone())).collect(),
                _ => unreachable!(),
            }
            .into_iter()
            .map(|(ext, holes)| {
                let pr = |r: Vec<crate::hexgrid::LatLng>| r.into_iter().map(|p| proj.project(p)).collect::<Vec<Xy>>();
                (pr(ext), holes.into_iter().map(pr).collect())
            })
            .collect();
            let total: f64 = parts.iter().map(|(e, _)| clip::signed_area(e).abs()).sum();
            if total <= 0.0 {
                log::debug!("object {} has a zero-area ring", o.id);
                return vertex_cells();
            }
            let all: Vec<Xy> = parts.iter().flat_map(|(e, _)| e.iter().copied()).collect();
            index
                .candidates(clip::bbox(&all))
                .into_iter()
                .filter_map(|s| {
                    let area: f64 = parts.iter().map(|(e, h)| clip::clipped_area(e, h, &s.ring)).sum();
                    (area > 0.0).then_some((s.cell, Share::Area(area)))
                })
                .collect()
        }
    }
}

/// Total order used to make bucket sums independent of input order.
fn canonical_order(a: &GeoObject, b: &GeoObject) -> Ordering {
    a.id.cmp(&b.id).then_with(|| a.tags.cmp(&b.tags)).then_with(|| {
        let (va, vb) = (a.geometry.vertices(), b.geometry.vertices());
        va.len().cmp(&vb.len()).then_with(|| {
            va.iter()
                .zip(&vb)
                .map(|(p, q)| p.lat().total_cmp(&q.lat()).then(p.lon().total_cmp(&q.lon())))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    })
}

/// Assigns objects to the given cells with clipped measures.
///
/// Points count in their containing cell; lines add clipped length and
/// polygons clipped area to every cell they cross, and count once in each
/// of those cells. Measures are planar, in a local azimuthal projection
/// centered on the cell set.
pub fn assign_objects(cells: &BTreeSet<CellId>, objects: &[GeoObject]) -> BTreeMap<CellId, CellBucket> {
    let mut out = BTreeMap::new();
    let Some(res) = cells.first().map(|c| c.resolution()) else {
        return out;
    };
    let proj = LocalProjection::around(cells.iter().map(|c| c.centroid())).expect("non-empty cell set");
    let index = CellIndex::new(cells, &proj);
    let selected = TagVocabulary::selected();

    let mut order: Vec<&GeoObject> = objects.iter().collect();
    order.sort_by(|a, b| canonical_order(a, b));

    let partials: Vec<Vec<CellBucket>> = order
        .par_iter()
        .map(|o| {
            let cats = category_set(o);
            let slots_selected: Vec<(usize, TagSlot)> = object_slots(o, VocabMode::Selected)
                .into_iter()
                .filter_map(|s| selected.index_of(&s).map(|i| (i, s)))
                .collect();
            let slots_all = object_slots(o, VocabMode::All);
            if cats.is_empty() && slots_selected.is_empty() && slots_all.is_empty() {
                return Vec::new();
            }
            shares(o, cells, res, &proj, &index)
                .into_iter()
                .map(|(cell, share)| {
                    let mut b = CellBucket::empty(cell);
                    for &c in &cats {
                        b.counts.insert(c, 1);
                        match share {
                            Share::Point => {
                                if c != Category::Water {
                                    b.point_counts.insert(c, 1);
                                }
                            }
                            Share::Length(len) => {
                                if c.is_road() {
                                    b.length_sums.insert(c, len);
                                } else if c != Category::Water {
                                    b.point_counts.insert(c, 1);
                                }
                            }
                            Share::Area(a) => {
                                b.area_sums.insert(c, a);
                            }
                            Share::Touch => {}
                        }
                    }
                    let measure = |slot: &TagSlot| match (slot.measure, share) {
                        (crate::osm::Measure::Count, _) => Some(1.0),
                        (crate::osm::Measure::Area, Share::Area(a)) => Some(a),
                        (crate::osm::Measure::Length, Share::Length(l)) => Some(l),
                        _ => None,
                    };
                    for (i, s) in &slots_selected {
                        if let Some(v) = measure(s) {
                            b.tag_counts_selected.insert(*i, v);
                        }
                    }
                    for s in &slots_all {
                        if let Some(v) = measure(s) {
                            b.tag_counts_all.insert(s.clone(), v);
                        }
                    }
                    b
                })
                .collect()
        })
        .collect();

    for part in partials.into_iter().flatten() {
        out.entry(part.cell)
            .or_insert_with(|| CellBucket::empty(part.cell))
            .merge(&part);
    }
    out
}

pub fn write_buckets<W: Write>(buckets: &BTreeMap<CellId, CellBucket>, mut w: W) -> Result<()> {
    for b in buckets.values() {
        serde_json::to_writer(&mut w, b)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_buckets<R: BufRead>(r: R) -> Result<BTreeMap<CellId, CellBucket>> {
    let mut out = BTreeMap::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let b: CellBucket = serde_json::from_str(&line).map_err(|e| Error::Row {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.insert(b.cell, b);
    }
    Ok(out)
}

/// Writes `cell,label` rows with labels as 1/0.
pub fn write_labels<W: Write>(labels: &BTreeMap<CellId, bool>, w: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["cell", "label"])?;
    for (c, &l) in labels {
        writer.write_record([c.to_string(), u8::from(l).to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_labels<R: std::io::Read>(r: R) -> Result<BTreeMap<CellId, bool>> {
    let mut reader = csv::Reader::from_reader(r);
    let mut out = BTreeMap::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let bad = |m: String| Error::Row { line, message: m };
        let cell: CellId = row.get(0).unwrap_or_default().parse().map_err(|e: Error| bad(e.to_string()))?;
        let label = match row.get(1).unwrap_or_default() {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(bad(format!("label {other:?} is not 0/1"))),
        };
        out.insert(cell, label);
    }
    Ok(out)
}
