use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::forest::{DecisionTree, TreeParams};

pub const DEFAULT_STUMPS: usize = 50;

/// Discrete two-class boosting of depth-1 trees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaBoost {
    stumps: Vec<(DecisionTree, f64)>,
}

impl AdaBoost {
    pub fn fit(x: &[Vec<f64>], y: &[bool], rounds: usize, seed: u64) -> Self {
        let n = x.len();
        let mut w = vec![1.0 / n as f64; n];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = TreeParams {
            max_features: None,
            max_depth: Some(1),
        };
        let mut stumps = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            let stump = DecisionTree::fit(x, y, &w, (0..n).collect(), params, &mut rng);
            let wrong: Vec<bool> = x.iter().zip(y).map(|(r, &l)| stump.votes_positive(r) != l).collect();
            let total: f64 = w.iter().sum();
            let err: f64 = w.iter().zip(&wrong).filter(|(_, &e)| e).map(|(wi, _)| wi).sum::<f64>() / total;
            if err <= 0.0 {
                stumps.push((stump, 1.0));
                break;
            }
            if err >= 0.5 {
                // No better than chance: keep one learner so the model is usable.
                if stumps.is_empty() {
                    stumps.push((stump, 1.0));
                }
                break;
            }
            let alpha = ((1.0 - err) / err).ln();
            for (wi, &e) in w.iter_mut().zip(&wrong) {
                if e {
                    *wi *= alpha.exp();
                }
            }
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|wi| *wi /= s);
            stumps.push((stump, alpha));
        }
        Self { stumps }
    }

    pub fn rounds(&self) -> usize {
        self.stumps.len()
    }

    /// Weighted vote mapped from `[-1, 1]` to `[0, 1]`.
    pub fn predict_proba(&self, q: &[f64]) -> f64 {
        let total: f64 = self.stumps.iter().map(|(_, a)| a).sum();
        if total <= 0.0 {
            return 0.5;
        }
        let f: f64 = self
            .stumps
            .iter()
            .map(|(s, a)| if s.votes_positive(q) { *a } else { -*a })
            .sum::<f64>()
            / total;
        ((f + 1.0) / 2.0).clamp(0.0, 1.0)
    }
}
