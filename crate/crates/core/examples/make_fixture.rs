//! Writes the two synthetic test cities under `tests/fixtures/`.
//!
//! Each city has stations in distinct cells near its centre and OSM-like
//! objects whose density rises around stations, with noise so the task is
//! not trivially separable.
//!
//!     cargo run --example make_fixture

use std::collections::BTreeSet;
use std::path::Path;

use hexstation::hexgrid::{cell_boundary, cell_of, disk, grid_distance, CellId, LatLng, Resolution};
use hexstation::osm::{serialize_geojson, write_stations_csv, GeoObject, Geometry, Polygon, StationRecord};
use hexstation::study_area::{build_study_area, dilate, label_cells};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const POINT_TAGS: &[(&str, &str)] = &[
    ("amenity", "cafe"),
    ("amenity", "restaurant"),
    ("amenity", "pub"),
    ("amenity", "bank"),
    ("amenity", "pharmacy"),
    ("amenity", "bicycle_parking"),
    ("shop", "bakery"),
    ("shop", "supermarket"),
    ("shop", "clothes"),
    ("tourism", "hotel"),
    ("public_transport", "platform"),
    ("amenity", "university"),
];

const QUIET_TAGS: &[(&str, &str)] = &[
    ("amenity", "place_of_worship"),
    ("amenity", "kindergarten"),
    ("shop", "convenience"),
    ("leisure", "playground"),
];

struct CityPlan {
    name: &'static str,
    center: (f64, f64),
    stations: usize,
    seed: u64,
}

/// Knuth's method; fine for the small rates used here.
fn poisson(rng: &mut ChaCha8Rng, lambda: f64) -> usize {
    let l = (-lambda).exp();
    let (mut k, mut p) = (0, 1.0);
    loop {
        p *= rng.random::<f64>();
        if p <= l {
            return k;
        }
        k += 1;
    }
}

/// Uniform point inside a cell, by rejection against its hexagon.
fn point_in(cell: CellId, rng: &mut ChaCha8Rng) -> LatLng {
    let ring = cell_boundary(cell);
    let (lat0, lat1) = ring.iter().fold((90.0f64, -90.0f64), |(a, b), p| (a.min(p.lat()), b.max(p.lat())));
    let (lon0, lon1) = ring.iter().fold((180.0f64, -180.0f64), |(a, b), p| (a.min(p.lon()), b.max(p.lon())));
    loop {
        let p = LatLng::new(rng.random_range(lat0..lat1), rng.random_range(lon0..lon1)).unwrap();
        if cell_of(p, cell.resolution()) == cell {
            return p;
        }
    }
}

fn square(center: LatLng, half_deg: f64) -> Polygon {
    let (la, lo) = (center.lat(), center.lon());
    let h = half_deg;
    let k = 1.0 / la.to_radians().cos();
    Polygon::new(
        vec![
            LatLng::new(la - h, lo - h * k).unwrap(),
            LatLng::new(la - h, lo + h * k).unwrap(),
            LatLng::new(la + h, lo + h * k).unwrap(),
            LatLng::new(la + h, lo - h * k).unwrap(),
        ],
        Vec::new(),
    )
}

fn build(plan: &CityPlan, res: Resolution) -> (Vec<StationRecord>, Vec<GeoObject>, serde_json::Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let center = cell_of(LatLng::new(plan.center.0, plan.center.1).unwrap(), res);

    let mut core: Vec<CellId> = disk(center, 3).into_iter().collect();
    core.shuffle(&mut rng);
    let station_cells: BTreeSet<CellId> = core.into_iter().take(plan.stations).collect();
    let stations: Vec<StationRecord> = station_cells
        .iter()
        .enumerate()
        .map(|(i, &c)| StationRecord {
            city: plan.name.into(),
            position: point_in(c, &mut rng),
            external_id: Some(format!("{}-{i:02}", plan.name)),
        })
        .collect();

    let area = build_study_area(&stations, res).unwrap();
    let labels = label_cells(&area, &stations);
    let world = dilate(&area, 5);

    let mut objects = Vec::new();
    let mut next_id = 0usize;
    let mut id = || {
        next_id += 1;
        format!("{}/{next_id}", plan.name)
    };
    for &cell in &world {
        let d = grid_distance(cell, center).unwrap() as f64;
        let has_station = station_cells.contains(&cell);
        // Busy cells around stations, a decaying centre and a noisy floor.
        let mut busy = 0.6 + 3.0 * (-d / 3.0).exp();
        if has_station {
            busy += 2.5;
        }
        if rng.random::<f64>() < 0.2 {
            busy += rng.random_range(1.0..4.0);
        }
        for _ in 0..poisson(&mut rng, busy) {
            let &(k, v) = POINT_TAGS.choose(&mut rng).unwrap();
            objects.push(GeoObject::new(id(), Geometry::Point(point_in(cell, &mut rng))).with_tag(k, v));
        }
        for _ in 0..poisson(&mut rng, 1.0) {
            let &(k, v) = QUIET_TAGS.choose(&mut rng).unwrap();
            objects.push(GeoObject::new(id(), Geometry::Point(point_in(cell, &mut rng))).with_tag(k, v));
        }
        for _ in 0..poisson(&mut rng, 0.5 + busy / 2.0) {
            let p = point_in(cell, &mut rng);
            let poly = square(p, rng.random_range(0.0001..0.0003));
            objects.push(GeoObject::new(id(), Geometry::Polygon(poly)).with_tag("building", "yes"));
        }
        if rng.random::<f64>() < 0.15 {
            let poly = square(point_in(cell, &mut rng), 0.0006);
            objects.push(GeoObject::new(id(), Geometry::Polygon(poly)).with_tag("leisure", "park"));
        }
        let road = if busy > 2.0 { "secondary" } else { "residential" };
        let (a, b) = (point_in(cell, &mut rng), point_in(cell, &mut rng));
        let mut line = GeoObject::new(id(), Geometry::LineString(vec![a, b])).with_tag("highway", road);
        if has_station || rng.random::<f64>() < 0.2 {
            line = line.with_tag("cycleway", "lane");
        }
        objects.push(line);
    }

    let manifest = json!({
        "city": plan.name,
        "seed": plan.seed,
        "resolution": res,
        "stations": stations.len(),
        "station_cells": station_cells.len(),
        "labelled_cells": labels.len(),
        "positive_cells": labels.values().filter(|&&l| l).count(),
        "objects": objects.len(),
    });
    (stations, objects, manifest)
}

fn main() {
    let res = Resolution::new(9).unwrap();
    let out = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let plans = [
        CityPlan {
            name: "city_a",
            center: (51.1093, 17.0386),
            stations: 20,
            seed: 11,
        },
        CityPlan {
            name: "city_b",
            center: (50.0619, 19.9368),
            stations: 22,
            seed: 23,
        },
    ];
    let mut manifest = Vec::new();
    for plan in &plans {
        let (stations, objects, meta) = build(plan, res);
        let dir = out.join(plan.name);
        std::fs::create_dir_all(&dir).unwrap();
        let mut csv = Vec::new();
        write_stations_csv(&stations, &mut csv).unwrap();
        std::fs::write(dir.join("stations.csv"), csv).unwrap();
        std::fs::write(dir.join("objects.geojson"), serialize_geojson(&objects)).unwrap();
        println!("{meta}");
        manifest.push(meta);
    }
    let text = serde_json::to_string_pretty(&json!({"cities": manifest})).unwrap();
    std::fs::write(out.join("manifest.json"), text + "\n").unwrap();
}
