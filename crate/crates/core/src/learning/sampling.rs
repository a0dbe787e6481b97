use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hexgrid::CellId;

/// All positive cells plus `⌊ratio·P⌋` negatives drawn uniformly without
/// replacement. Positives come first, each group in cell order.
pub fn sample_training_set<R: Rng + ?Sized>(
    labels: &BTreeMap<CellId, bool>,
    ratio: f64,
    rng: &mut R,
) -> Result<Vec<CellId>> {
    if !ratio.is_finite() || ratio < 1.0 {
        return Err(Error::config(format!("imbalance ratio must be >= 1, got {ratio}")));
    }
    let positives: Vec<CellId> = labels.iter().filter(|(_, &l)| l).map(|(&c, _)| c).collect();
    let negatives: Vec<CellId> = labels.iter().filter(|(_, &l)| !l).map(|(&c, _)| c).collect();
    let needed = (ratio * positives.len() as f64).floor() as usize;
    if needed > negatives.len() {
        return Err(Error::Sampling {
            needed,
            available: negatives.len(),
        });
    }
    let mut picked: Vec<usize> = rand::seq::index::sample(rng, negatives.len(), needed).into_vec();
    picked.sort_unstable();
    let mut out = positives;
    out.extend(picked.into_iter().map(|i| negatives[i]));
    Ok(out)
}
