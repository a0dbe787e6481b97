use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::osm::{Category, TagVocabulary, VocabMode};
use crate::study_area::CellBucket;

pub const CC_DIM: usize = 20;
pub const SA_DIM: usize = 36;
pub const ST_DIM: usize = 888;

/// Region embedding schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionMethod {
    /// Category counting.
    Cc,
    /// Shape analysis per category.
    Sa,
    /// Shape analysis per selected tag.
    St,
    /// Shape analysis per observed tag.
    At,
}

impl RegionMethod {
    pub const ALL: [RegionMethod; 4] = [RegionMethod::Cc, RegionMethod::Sa, RegionMethod::St, RegionMethod::At];

    pub fn name(self) -> &'static str {
        match self {
            RegionMethod::Cc => "cc",
            RegionMethod::Sa => "sa",
            RegionMethod::St => "st",
            RegionMethod::At => "at",
        }
    }

    pub fn needs_vocab(self) -> Option<VocabMode> {
        match self {
            RegionMethod::Cc | RegionMethod::Sa => None,
            RegionMethod::St => Some(VocabMode::Selected),
            RegionMethod::At => Some(VocabMode::All),
        }
    }
}

impl fmt::Display for RegionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(format!("unknown region method {s:?} (expected cc, sa, st or at)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionVector {
    pub method: RegionMethod,
    pub values: Vec<f64>,
}

impl RegionVector {
    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Axis labels for the category-count embedding (category order).
pub fn cc_axes() -> Vec<String> {
    Category::ALL.iter().map(|c| c.name().to_owned()).collect()
}

/// Axis labels for the shape embedding: `(area, count)` for each of the 16
/// pair categories in category order, then water area, then bike, drive and
/// walk road lengths.
pub fn sa_axes() -> Vec<String> {
    let mut axes: Vec<String> = Category::ALL
        .iter()
        .filter(|c| c.is_shape_pair())
        .flat_map(|c| [format!("{c}_area"), format!("{c}_count")])
        .collect();
    axes.push("water_area".into());
    axes.extend(Category::ROADS.iter().map(|c| format!("{c}_length")));
    axes
}

/// Axis labels for a method (vocabulary slots for the tag methods).
pub fn axes(method: RegionMethod, vocab: Option<&TagVocabulary>) -> Result<Vec<String>> {
    Ok(match method {
        RegionMethod::Cc => cc_axes(),
        RegionMethod::Sa => sa_axes(),
        RegionMethod::St | RegionMethod::At => check_vocab(method, vocab)?
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect(),
    })
}

fn check_vocab(method: RegionMethod, vocab: Option<&TagVocabulary>) -> Result<&TagVocabulary> {
    let want = method.needs_vocab().expect("tag method");
    let vocab = vocab.ok_or_else(|| Error::config(format!("region method {method} needs a tag vocabulary")))?;
    if vocab.mode() != want {
        return Err(Error::config(format!(
            "region method {method} needs a {want:?} vocabulary, got {:?}",
            vocab.mode()
        )));
    }
    Ok(vocab)
}

/// Turns a cell bucket into a fixed-length vector.
pub fn embed_region(b: &CellBucket, method: RegionMethod, vocab: Option<&TagVocabulary>) -> Result<RegionVector> {
    let values = match method {
        RegionMethod::Cc => Category::ALL
            .iter()
            .map(|c| b.counts.get(c).copied().unwrap_or(0) as f64)
            .collect(),
        RegionMethod::Sa => {
            let mut v = Vec::with_capacity(SA_DIM);
            for c in Category::ALL.iter().filter(|c| c.is_shape_pair()) {
                v.push(b.area_sums.get(c).copied().unwrap_or(0.0));
                v.push(b.point_counts.get(c).copied().unwrap_or(0) as f64);
            }
            v.push(b.area_sums.get(&Category::Water).copied().unwrap_or(0.0));
            for c in Category::ROADS {
                v.push(b.length_sums.get(&c).copied().unwrap_or(0.0));
            }
            v
        }
        RegionMethod::St => {
            let vocab = check_vocab(method, vocab)?;
            let mut v = vec![0.0; vocab.len()];
            for (&i, &x) in &b.tag_counts_selected {
                if let Some(slot) = v.get_mut(i) {
                    *slot += x;
                }
            }
            v
        }
        RegionMethod::At => {
            let vocab = check_vocab(method, vocab)?;
            let mut v = vec![0.0; vocab.len()];
            for (slot, &x) in &b.tag_counts_all {
                if let Some(i) = vocab.index_of(slot) {
                    v[i] += x;
                }
            }
            v
        }
    };
    Ok(RegionVector { method, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::{cell_of, LatLng, Resolution};

    fn bucket() -> CellBucket {
        let c = cell_of(LatLng::new(51.1, 17.0).unwrap(), Resolution::new(9).unwrap());
        CellBucket::empty(c)
    }

    #[test]
    fn empty_bucket_cc_is_zero() {
        let v = embed_region(&bucket(), RegionMethod::Cc, None).unwrap();
        assert_eq!(v.values, vec![0.0; CC_DIM]);
    }

    #[test]
    fn cc_counts_by_axis() {
        let mut b = bucket();
        b.counts.insert(Category::Shops, 3);
        b.counts.insert(Category::Sustenance, 1);
        let v = embed_region(&b, RegionMethod::Cc, None).unwrap();
        assert_eq!(v.values[Category::Shops.index()], 3.0);
        assert_eq!(v.values[Category::Sustenance.index()], 1.0);
        assert_eq!(v.values.iter().sum::<f64>(), 4.0);
    }

    #[test]
    fn dims() {
        let selected = TagVocabulary::selected();
        assert_eq!(embed_region(&bucket(), RegionMethod::Sa, None).unwrap().dim(), SA_DIM);
        assert_eq!(embed_region(&bucket(), RegionMethod::St, Some(&selected)).unwrap().dim(), ST_DIM);
        assert_eq!(sa_axes().len(), SA_DIM);
        assert_eq!(cc_axes().len(), CC_DIM);
    }

    #[test]
    fn tag_methods_need_matching_vocab() {
        assert!(matches!(embed_region(&bucket(), RegionMethod::St, None), Err(Error::Config(_))));
        assert!(matches!(embed_region(&bucket(), RegionMethod::At, None), Err(Error::Config(_))));
        let selected = TagVocabulary::selected();
        assert!(embed_region(&bucket(), RegionMethod::At, Some(&selected)).is_err());
    }

    #[test]
    fn sa_layout() {
        let mut b = bucket();
        b.area_sums.insert(Category::Aerialway, 5.0);
        b.point_counts.insert(Category::Aerialway, 2);
        b.area_sums.insert(Category::Water, 7.0);
        b.length_sums.insert(Category::RoadsWalk, 9.0);
        let v = embed_region(&b, RegionMethod::Sa, None).unwrap().values;
        assert_eq!(&v[..2], &[5.0, 2.0]);
        assert_eq!(v[32], 7.0);
        assert_eq!(v[35], 9.0);
    }
}
