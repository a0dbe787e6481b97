#![allow(dead_code)]

use std::path::{Path, PathBuf};

use hexstation::embeddings::{embed_city, RegionMethod};
use hexstation::evaluation::CityData;
use hexstation::hexgrid::Resolution;
use hexstation::osm::{load_stations, parse_geojson};
use hexstation::study_area::{assign_objects, CityDataset};

pub const CITIES: [&str; 2] = ["city_a", "city_b"];

pub fn fixture_dir(city: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(city)
}

pub fn objects_path(city: &str) -> PathBuf {
    fixture_dir(city).join("objects.geojson")
}

pub fn stations_path(city: &str) -> PathBuf {
    fixture_dir(city).join("stations.csv")
}

/// A fixture city at resolution 9 with CC embeddings over the study area
/// and a 5-ring margin.
pub fn load_city(city: &str) -> CityData {
    let res = Resolution::new(9).unwrap();
    let objects = parse_geojson(&std::fs::read(objects_path(city)).unwrap()).unwrap();
    let stations = load_stations(&std::fs::read(stations_path(city)).unwrap(), city).unwrap();
    let ds = CityDataset::build(city, stations, res).unwrap();
    let world = ds.dilated(5);
    let buckets = assign_objects(&world, &objects);
    let table = embed_city(&buckets, &world, RegionMethod::Cc, None).unwrap();
    CityData::new(ds).with_embeddings(RegionMethod::Cc, table)
}
