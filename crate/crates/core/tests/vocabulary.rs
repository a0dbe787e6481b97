use hexstation::hexgrid::LatLng;
use hexstation::osm::{
    is_excluded, object_slots, vocab_index, Category, GeoObject, Geometry, Measure, Polygon, SlotKey, TagVocabulary,
    VocabMode,
};

fn ll(lat: f64, lon: f64) -> LatLng {
    LatLng::new(lat, lon).unwrap()
}

fn probe(key: &str, value: &str, areal: bool) -> GeoObject {
    let geometry = if areal {
        Geometry::Polygon(Polygon::new(
            vec![ll(51.1, 17.0), ll(51.1, 17.001), ll(51.101, 17.001), ll(51.101, 17.0)],
            Vec::new(),
        ))
    } else {
        Geometry::Point(ll(51.1, 17.0))
    };
    GeoObject::new("probe", geometry).with_tag(key, value)
}

fn road(highway: &str) -> GeoObject {
    GeoObject::new("road", Geometry::LineString(vec![ll(51.1, 17.0), ll(51.101, 17.0)])).with_tag("highway", highway)
}

/// One probe object per slot; each reachable tag slot is the index its own
/// probe maps to, so distinct probes land on distinct slots.
#[test]
fn selected_slots_are_a_bijection_over_probes() {
    let vocab = TagVocabulary::selected();
    assert_eq!(vocab.len(), 888);
    let mut reached = 0;
    let mut unreachable = Vec::new();
    for (i, slot) in vocab.entries().iter().enumerate() {
        let obj = match (&slot.key, slot.measure) {
            (SlotKey::Tag { key, value }, m) => probe(key, value.as_deref().unwrap_or("yes"), m == Measure::Area),
            (SlotKey::Collective(Category::Water), _) => probe("natural", "water", true),
            (SlotKey::Collective(Category::RoadsDrive), _) => road("motorway"),
            (SlotKey::Collective(Category::RoadsBike), _) => road("cycleway"),
            (SlotKey::Collective(_), _) => road("footway"),
        };
        if is_excluded(&obj) {
            unreachable.push(slot.to_string());
            continue;
        }
        let slots = object_slots(&obj, VocabMode::Selected);
        assert!(slots.contains(slot), "probe for {slot} yields {slots:?}");
        if let SlotKey::Tag { .. } = slot.key {
            assert_eq!(vocab_index(&obj, &vocab), Some(i), "probe for {slot}");
        }
        reached += 1;
    }
    assert_eq!(reached, 886);
    assert_eq!(unreachable, ["amenity=bicycle_rental#area", "amenity=bicycle_rental#count"]);
}

#[test]
fn area_and_count_slots_are_adjacent() {
    let vocab = TagVocabulary::selected();
    let pub_point = vocab_index(&probe("amenity", "pub", false), &vocab).unwrap();
    let pub_area = vocab_index(&probe("amenity", "pub", true), &vocab).unwrap();
    assert_eq!(pub_area + 1, pub_point);
}

#[test]
fn unlisted_tags_have_no_selected_slot() {
    let vocab = TagVocabulary::selected();
    assert_eq!(vocab_index(&probe("amenity", "no_such_amenity", false), &vocab), None);
    assert!(object_slots(&probe("note", "hello", false), VocabMode::Selected).is_empty());
}
