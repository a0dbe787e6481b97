//! Tag to category classification.
//!
//! Precedence follows the enumeration order of [`Category`], except that
//! `buildings` is only used when nothing else matches. Amenity values come
//! from the selected tag table; the other rules extend it (documented in
//! `docs/categories.md`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::selected_tags::SELECTED_TAG_ROWS;
use super::GeoObject;
use crate::error::Error;

/// The 20 object categories. The declaration order is the vector axis
/// order of the category-count embedding and must not change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Aerialway,
    Airports,
    Buildings,
    CultureAndEntertainment,
    Education,
    Emergency,
    Finances,
    Healthcare,
    Historic,
    Leisure,
    Other,
    RoadsBike,
    RoadsDrive,
    RoadsWalk,
    Shops,
    Sport,
    Sustenance,
    Tourism,
    Transportation,
    Water,
}

impl Category {
    pub const ALL: [Category; 20] = [
        Category::Aerialway,
        Category::Airports,
        Category::Buildings,
        Category::CultureAndEntertainment,
        Category::Education,
        Category::Emergency,
        Category::Finances,
        Category::Healthcare,
        Category::Historic,
        Category::Leisure,
        Category::Other,
        Category::RoadsBike,
        Category::RoadsDrive,
        Category::RoadsWalk,
        Category::Shops,
        Category::Sport,
        Category::Sustenance,
        Category::Tourism,
        Category::Transportation,
        Category::Water,
    ];

    pub const ROADS: [Category; 3] = [Category::RoadsBike, Category::RoadsDrive, Category::RoadsWalk];

    /// Position in [`Category::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Aerialway => "aerialway",
            Category::Airports => "airports",
            Category::Buildings => "buildings",
            Category::CultureAndEntertainment => "culture_and_entertainment",
            Category::Education => "education",
            Category::Emergency => "emergency",
            Category::Finances => "finances",
            Category::Healthcare => "healthcare",
            Category::Historic => "historic",
            Category::Leisure => "leisure",
            Category::Other => "other",
            Category::RoadsBike => "roads_bike",
            Category::RoadsDrive => "roads_drive",
            Category::RoadsWalk => "roads_walk",
            Category::Shops => "shops",
            Category::Sport => "sport",
            Category::Sustenance => "sustenance",
            Category::Tourism => "tourism",
            Category::Transportation => "transportation",
            Category::Water => "water",
        }
    }

    pub fn is_road(self) -> bool {
        Self::ROADS.contains(&self)
    }

    /// The 16 categories measured as (area, count) pairs.
    pub fn is_shape_pair(self) -> bool {
        !self.is_road() && self != Category::Water
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::input(format!("unknown category {s:?}")))
    }
}

/// Which tag put an object in its category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagMatch {
    pub category: Category,
    pub key: String,
    pub value: String,
}

/// Keys whose every value (other than `no`) selects the category.
const OWNING_KEYS: &[(Category, &str)] = &[
    (Category::Aerialway, "aerialway"),
    (Category::Airports, "aeroway"),
    (Category::Buildings, "building"),
    (Category::Emergency, "emergency"),
    (Category::Healthcare, "healthcare"),
    (Category::Historic, "historic"),
    (Category::Leisure, "leisure"),
    (Category::Shops, "shop"),
    (Category::Sport, "sport"),
    (Category::Tourism, "tourism"),
    (Category::Transportation, "public_transport"),
];

/// Extra (key, value) rules beyond the selected table.
const EXTRA_RULES: &[(Category, &str, &str)] = &[
    (Category::Other, "landuse", "cemetery"),
    (Category::Transportation, "highway", "bus_stop"),
    (Category::Transportation, "railway", "station"),
    (Category::Transportation, "railway", "halt"),
    (Category::Transportation, "railway", "tram_stop"),
    (Category::Water, "natural", "water"),
    (Category::Water, "natural", "bay"),
    (Category::Water, "natural", "beach"),
    (Category::Water, "natural", "strait"),
    (Category::Water, "landuse", "reservoir"),
    (Category::Water, "landuse", "basin"),
];

/// Keys where any value is water.
const WATER_KEYS: &[&str] = &["waterway", "water"];

pub(crate) const DRIVE_HIGHWAYS: &[&str] = &[
    "motorway", "motorway_link", "trunk", "trunk_link", "primary", "primary_link", "secondary",
    "secondary_link", "tertiary", "tertiary_link", "unclassified", "residential", "living_street",
    "service", "road",
];

pub(crate) const WALK_HIGHWAYS: &[&str] = &[
    "footway", "pedestrian", "path", "steps", "corridor", "bridleway", "track", "living_street",
    "residential", "service", "unclassified", "tertiary", "tertiary_link", "secondary",
    "secondary_link", "primary", "primary_link", "road",
];

pub(crate) const BIKE_HIGHWAYS: &[&str] = &[
    "cycleway", "path", "track", "living_street", "residential", "service", "unclassified",
    "tertiary", "tertiary_link", "secondary", "secondary_link", "primary", "primary_link", "road",
];

/// Shared-bike stations are removed so a model never learns from them.
pub fn is_excluded(o: &GeoObject) -> bool {
    o.tag("amenity") == Some("bicycle_rental") || o.tags.contains_key("bicycle_rental")
}

/// Road classes of a way; a street may be drivable, walkable and bikeable.
fn road_classes(o: &GeoObject) -> Vec<Category> {
    let Some(highway) = o.tag("highway") else {
        return Vec::new();
    };
    let yes = |k: &str| matches!(o.tag(k), Some("yes" | "designated" | "permissive"));
    let no = |k: &str| o.tag(k) == Some("no");

    let mut bike = BIKE_HIGHWAYS.contains(&highway)
        || yes("bicycle")
        || o.tags.keys().any(|k| k.starts_with("cycleway") && o.tags[k] != "no");
    let mut drive = DRIVE_HIGHWAYS.contains(&highway);
    let mut walk = WALK_HIGHWAYS.contains(&highway)
        || matches!(o.tag("sidewalk"), Some("both" | "left" | "right" | "yes" | "separate"));
    if matches!(highway, "motorway" | "motorway_link" | "trunk" | "trunk_link") {
        bike &= yes("bicycle");
        walk &= yes("foot");
    }
    if no("bicycle") {
        bike = false;
    }
    if no("foot") {
        walk = false;
    }
    if no("motor_vehicle") || no("motorcar") {
        drive = false;
    }

    [(Category::RoadsBike, bike), (Category::RoadsDrive, drive), (Category::RoadsWalk, walk)]
        .into_iter()
        .filter_map(|(c, on)| on.then_some(c))
        .collect()
}

fn match_category(o: &GeoObject, category: Category) -> Option<TagMatch> {
    let hit = |key: &str, value: &str| {
        Some(TagMatch {
            category,
            key: key.to_owned(),
            value: value.to_owned(),
        })
    };
    if category.is_road() {
        let highway = o.tag("highway")?;
        return road_classes(o).contains(&category).then(|| hit("highway", highway)).flatten();
    }
    for &(c, key) in OWNING_KEYS {
        if c == category {
            if let Some(v) = o.tag(key).filter(|v| *v != "no") {
                return hit(key, v);
            }
        }
    }
    if let Some(amenity) = o.tag("amenity") {
        let listed = SELECTED_TAG_ROWS
            .iter()
            .any(|&(c, k, v)| c == category && k == "amenity" && v == Some(amenity));
        if listed {
            return hit("amenity", amenity);
        }
    }
    for &(c, key, value) in EXTRA_RULES {
        if c == category && o.tag(key) == Some(value) {
            return hit(key, value);
        }
    }
    if category == Category::Water {
        for &key in WATER_KEYS {
            if let Some(v) = o.tag(key).filter(|v| *v != "no") {
                return hit(key, v);
            }
        }
    }
    None
}

/// The category-determining tag of an object, or `None` when nothing
/// matches or the object is an excluded shared-bike station.
pub fn classify(o: &GeoObject) -> Option<TagMatch> {
    if is_excluded(o) {
        return None;
    }
    Category::ALL
        .into_iter()
        .filter(|&c| c != Category::Buildings)
        .chain(std::iter::once(Category::Buildings))
        .find_map(|c| match_category(o, c))
}

/// First matching category.
pub fn categorize(o: &GeoObject) -> Option<Category> {
    classify(o).map(|m| m.category)
}

/// All categories an object contributes to: every applicable road class for
/// ways, otherwise the single category from [`categorize`].
pub fn category_set(o: &GeoObject) -> Vec<Category> {
    match categorize(o) {
        Some(c) if c.is_road() => road_classes(o),
        Some(c) => vec![c],
        None => Vec::new(),
    }
}
