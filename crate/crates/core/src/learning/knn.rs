use serde::{Deserialize, Serialize};

pub const DEFAULT_K: usize = 5;

/// Euclidean k-nearest neighbours; probability is the positive fraction of
/// the `k` closest training rows. Distance ties resolve by training order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    pub k: usize,
    rows: Vec<Vec<f64>>,
    labels: Vec<bool>,
}

impl Knn {
    pub fn fit(x: &[Vec<f64>], y: &[bool], k: usize) -> Self {
        Self {
            k: k.min(x.len()).max(1),
            rows: x.to_vec(),
            labels: y.to_vec(),
        }
    }

    pub fn predict_proba(&self, q: &[f64]) -> f64 {
        let mut d: Vec<(f64, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        let k = self.k.min(d.len());
        d.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let pos = d[..k].iter().filter(|(_, i)| self.labels[*i]).count();
        pos as f64 / k as f64
    }
}
