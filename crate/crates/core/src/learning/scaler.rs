use serde::{Deserialize, Serialize};

use super::config::ScalerKind;

/// Per-column affine map `(x - offset) / scale`. A zero scale marks a
/// constant training column, which maps to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalerState {
    pub kind: ScalerKind,
    pub offset: Vec<f64>,
    pub scale: Vec<f64>,
}

pub fn fit_scaler(x: &[Vec<f64>], kind: ScalerKind) -> ScalerState {
    let d = x.first().map_or(0, Vec::len);
    let n = x.len() as f64;
    let (offset, scale) = match kind {
        ScalerKind::None => (vec![0.0; d], vec![1.0; d]),
        ScalerKind::Minmax => (0..d)
            .map(|j| {
                let (lo, hi) = x
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r[j]), hi.max(r[j])));
                (lo, hi - lo)
            })
            .unzip(),
        ScalerKind::Standard => (0..d)
            .map(|j| {
                let mean = x.iter().map(|r| r[j]).sum::<f64>() / n;
                let var = x.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
                (mean, var.sqrt())
            })
            .unzip(),
    };
    ScalerState { kind, offset, scale }
}

impl ScalerState {
    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    /// Applies the map without clamping; unseen data may leave `[0, 1]`.
    pub fn apply_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.offset.iter().zip(&self.scale))
            .map(|(x, (o, s))| if *s > 0.0 { (x - o) / s } else { 0.0 })
            .collect()
    }

    pub fn apply(&self, x: &[Vec<f64>]) -> Vec<Vec<f64>> {
        x.iter().map(|r| self.apply_row(r)).collect()
    }
}
