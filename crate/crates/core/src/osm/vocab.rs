//! Tag vocabularies for the per-tag embeddings.
//!
//! A vocabulary entry is a slot: a tag (or a collective category) together
//! with the measure it accumulates. Each selected tag row owns an area slot
//! and a count slot; water area and the three road lengths are collective.
//! That gives 442 * 2 + 4 = 888 selected slots.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::category::{category_set, classify};
use super::selected_tags::SELECTED_TAG_ROWS;
use super::{Category, GeoObject};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Area,
    Count,
    Length,
}

impl Measure {
    fn name(self) -> &'static str {
        match self {
            Measure::Area => "area",
            Measure::Count => "count",
            Measure::Length => "length",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotKey {
    /// `value: None` matches every value of `key`.
    Tag { key: String, value: Option<String> },
    Collective(Category),
}

/// One vocabulary axis. Text form: `key=value#measure`, `key=*#measure` or
/// `@category#measure`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TagSlot {
    pub key: SlotKey,
    pub measure: Measure,
}

impl TagSlot {
    pub fn tag(key: &str, value: Option<&str>, measure: Measure) -> Self {
        Self {
            key: SlotKey::Tag {
                key: key.to_owned(),
                value: value.map(str::to_owned),
            },
            measure,
        }
    }

    pub fn collective(category: Category, measure: Measure) -> Self {
        Self {
            key: SlotKey::Collective(category),
            measure,
        }
    }
}

impl fmt::Display for TagSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.key {
            SlotKey::Tag { key, value } => {
                write!(f, "{key}={}#{}", value.as_deref().unwrap_or("*"), self.measure.name())
            }
            SlotKey::Collective(c) => write!(f, "@{c}#{}", self.measure.name()),
        }
    }
}

impl FromStr for TagSlot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("malformed tag slot {s:?}"));
        let (head, measure) = s.rsplit_once('#').ok_or_else(bad)?;
        let measure = match measure {
            "area" => Measure::Area,
            "count" => Measure::Count,
            "length" => Measure::Length,
            _ => return Err(bad()),
        };
        if let Some(category) = head.strip_prefix('@') {
            return Ok(TagSlot::collective(category.parse()?, measure));
        }
        let (key, value) = head.split_once('=').ok_or_else(bad)?;
        let value = (value != "*").then_some(value);
        Ok(TagSlot::tag(key, value, measure))
    }
}

impl Serialize for TagSlot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TagSlot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VocabMode {
    /// The fixed 888-slot list.
    Selected,
    /// Every second-level tag observed in a corpus.
    All,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "VocabRepr", into = "VocabRepr")]
pub struct TagVocabulary {
    mode: VocabMode,
    entries: Vec<TagSlot>,
    lookup: HashMap<TagSlot, usize>,
}

#[derive(Serialize, Deserialize)]
struct VocabRepr {
    mode: VocabMode,
    size: usize,
    entries: Vec<TagSlot>,
}

impl From<VocabRepr> for TagVocabulary {
    fn from(r: VocabRepr) -> Self {
        TagVocabulary::from_entries(r.mode, r.entries)
    }
}

impl From<TagVocabulary> for VocabRepr {
    fn from(v: TagVocabulary) -> Self {
        VocabRepr {
            mode: v.mode,
            size: v.entries.len(),
            entries: v.entries,
        }
    }
}

impl PartialEq for TagVocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.entries == other.entries
    }
}

impl TagVocabulary {
    fn from_entries(mode: VocabMode, entries: Vec<TagSlot>) -> Self {
        let lookup = entries.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Self {
            mode,
            entries,
            lookup,
        }
    }

    /// The fixed selected-tag vocabulary (888 slots).
    pub fn selected() -> Self {
        let mut entries: Vec<TagSlot> = SELECTED_TAG_ROWS
            .iter()
            .flat_map(|&(_, key, value)| {
                [TagSlot::tag(key, value, Measure::Area), TagSlot::tag(key, value, Measure::Count)]
            })
            .collect();
        entries.push(TagSlot::collective(Category::Water, Measure::Area));
        for road in Category::ROADS {
            entries.push(TagSlot::collective(road, Measure::Length));
        }
        Self::from_entries(VocabMode::Selected, entries)
    }

    pub fn mode(&self) -> VocabMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[TagSlot] {
        &self.entries
    }

    pub fn index_of(&self, slot: &TagSlot) -> Option<usize> {
        self.lookup.get(slot).copied()
    }
}

/// Slots an object feeds under a vocabulary mode, independent of any
/// particular vocabulary instance.
///
/// Polygons feed area slots, other geometries count slots; road ways feed
/// one length slot per road class and water polygons the water area slot.
pub fn object_slots(o: &GeoObject, mode: VocabMode) -> Vec<TagSlot> {
    let Some(m) = classify(o) else {
        return Vec::new();
    };
    let measure = if o.geometry.is_areal() { Measure::Area } else { Measure::Count };
    if m.category.is_road() {
        if mode == VocabMode::All || !o.geometry.is_linear() {
            return Vec::new();
        }
        return category_set(o)
            .into_iter()
            .map(|c| TagSlot::collective(c, Measure::Length))
            .collect();
    }
    if m.category == Category::Water {
        if mode == VocabMode::All || !o.geometry.is_areal() {
            return Vec::new();
        }
        return vec![TagSlot::collective(Category::Water, Measure::Area)];
    }
    match mode {
        VocabMode::All => vec![TagSlot::tag(&m.key, Some(&m.value), measure)],
        VocabMode::Selected => SELECTED_TAG_ROWS
            .iter()
            .find(|&&(c, k, v)| {
                c == m.category && k == m.key && v.is_none_or(|v| v == m.value)
            })
            .map(|&(_, k, v)| vec![TagSlot::tag(k, v, measure)])
            .unwrap_or_default(),
    }
}

/// Position of the object's slot in `vocab`, if it has one.
pub fn vocab_index(o: &GeoObject, vocab: &TagVocabulary) -> Option<usize> {
    object_slots(o, vocab.mode)
        .iter()
        .find_map(|s| vocab.index_of(s))
}

/// Sorted, deduplicated vocabulary of every observed second-level tag slot.
pub fn build_all_tag_vocab<'a, I>(objects: I) -> Result<TagVocabulary>
where
    I: IntoIterator<Item = &'a GeoObject>,
{
    let mut seen = 0usize;
    let mut slots = BTreeSet::new();
    for o in objects {
        seen += 1;
        slots.extend(object_slots(o, VocabMode::All));
    }
    if seen == 0 {
        return Err(Error::input("cannot build a tag vocabulary from an empty corpus"));
    }
    Ok(TagVocabulary::from_entries(VocabMode::All, slots.into_iter().collect()))
}
