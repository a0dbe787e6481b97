//! CART trees with Gini impurity and a bagged forest on top.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ClassBalance;
use super::derive_seed;

pub const DEFAULT_TREES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
enum Node {
    Leaf {
        /// Weighted positive fraction of the training rows in the leaf.
        p: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy)]
pub struct TreeParams {
    /// Candidate features examined per split; `None` means all.
    pub max_features: Option<usize>,
    pub max_depth: Option<usize>,
}

struct Split {
    feature: usize,
    threshold: f64,
    impurity: f64,
}

fn weighted_sums(idx: &[usize], y: &[bool], w: &[f64]) -> (f64, f64) {
    idx.iter().fold((0.0, 0.0), |(pos, tot), &i| (pos + if y[i] { w[i] } else { 0.0 }, tot + w[i]))
}

/// Sum of child Gini impurities weighted by child mass.
fn split_impurity(pos_l: f64, tot_l: f64, pos_r: f64, tot_r: f64) -> f64 {
    let g = |pos: f64, tot: f64| if tot > 0.0 { 2.0 * pos * (tot - pos) / tot } else { 0.0 };
    g(pos_l, tot_l) + g(pos_r, tot_r)
}

fn best_split<R: Rng>(
    x: &[Vec<f64>],
    y: &[bool],
    w: &[f64],
    idx: &[usize],
    max_features: usize,
    rng: &mut R,
) -> Option<Split> {
    let d = x[idx[0]].len();
    let mut features: Vec<usize> = (0..d).collect();
    features.shuffle(rng);
    let (pos, tot) = weighted_sums(idx, y, w);
    let mut best: Option<Split> = None;
    let mut visited = 0;
    let mut column: Vec<(f64, bool, f64)> = Vec::with_capacity(idx.len());
    for f in features {
        if visited >= max_features {
            break;
        }
        column.clear();
        column.extend(idx.iter().map(|&i| (x[i][f], y[i], w[i])));
        column.sort_by(|a, b| a.0.total_cmp(&b.0));
        if column[0].0 == column[column.len() - 1].0 {
            continue;
        }
        visited += 1;
        let (mut pos_l, mut tot_l) = (0.0, 0.0);
        for k in 0..column.len() - 1 {
            let (v, label, wi) = column[k];
            tot_l += wi;
            if label {
                pos_l += wi;
            }
            let next = column[k + 1].0;
            if next <= v {
                continue;
            }
            let imp = split_impurity(pos_l, tot_l, pos - pos_l, tot - tot_l);
            if best.as_ref().is_none_or(|b| imp < b.impurity) {
                let mid = v + (next - v) / 2.0;
                // Guard against midpoints that round onto the upper value.
                let threshold = if mid < next { mid } else { v };
                best = Some(Split {
                    feature: f,
                    threshold,
                    impurity: imp,
                });
            }
        }
    }
    best
}

impl DecisionTree {
    /// Grows a tree on the rows `idx` with sample weights `w`.
    pub fn fit<R: Rng>(x: &[Vec<f64>], y: &[bool], w: &[f64], idx: Vec<usize>, params: TreeParams, rng: &mut R) -> Self {
        let d = x.first().map_or(0, Vec::len);
        let max_features = params.max_features.unwrap_or(d).clamp(1, d.max(1));
        let mut nodes = vec![Node::Leaf { p: 0.0 }];
        let mut stack = vec![(0usize, idx, 0usize)];
        while let Some((slot, rows, depth)) = stack.pop() {
            let (pos, tot) = weighted_sums(&rows, y, w);
            let p = if tot > 0.0 { pos / tot } else { 0.0 };
            let pure = pos <= 0.0 || pos >= tot;
            let deep = params.max_depth.is_some_and(|m| depth >= m);
            if pure || deep || rows.len() < 2 {
                nodes[slot] = Node::Leaf { p };
                continue;
            }
            let Some(split) = best_split(x, y, w, &rows, max_features, rng) else {
                nodes[slot] = Node::Leaf { p };
                continue;
            };
            let (l, r): (Vec<usize>, Vec<usize>) = rows.into_iter().partition(|&i| x[i][split.feature] <= split.threshold);
            let (li, ri) = (nodes.len(), nodes.len() + 1);
            nodes.push(Node::Leaf { p: 0.0 });
            nodes.push(Node::Leaf { p: 0.0 });
            nodes[slot] = Node::Split {
                feature: split.feature,
                threshold: split.threshold,
                left: li,
                right: ri,
            };
            stack.push((ri, r, depth + 1));
            stack.push((li, l, depth + 1));
        }
        Self { nodes }
    }

    /// Leaf positive fraction for `q`.
    pub fn leaf_value(&self, q: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { p } => return *p,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if q[*feature] <= *threshold { *left } else { *right },
            }
        }
    }

    pub fn votes_positive(&self, q: &[f64]) -> bool {
        self.leaf_value(q) > 0.5
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// Per-class weights `n / (2·n_c)` from weighted class masses.
fn balanced_weights(mass_pos: f64, mass_neg: f64) -> (f64, f64) {
    let n = mass_pos + mass_neg;
    let f = |m: f64| if m > 0.0 { n / (2.0 * m) } else { 0.0 };
    (f(mass_pos), f(mass_neg))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
}

impl RandomForest {
    /// Bootstrap forest with √N features per split and unlimited depth.
    /// Tree `t` draws from its own stream derived from `(seed, t)`, so the
    /// parallel fit is deterministic.
    pub fn fit(x: &[Vec<f64>], y: &[bool], n_trees: usize, balance: ClassBalance, seed: u64) -> Self {
        let n = x.len();
        let d = x.first().map_or(0, Vec::len);
        let params = TreeParams {
            max_features: Some(((d as f64).sqrt() as usize).max(1)),
            max_depth: None,
        };
        let n_pos = y.iter().filter(|&&l| l).count() as f64;
        let global = balanced_weights(n_pos, n as f64 - n_pos);
        let trees = (0..n_trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
                let mut counts = vec![0.0f64; n];
                for _ in 0..n {
                    counts[rng.random_range(0..n)] += 1.0;
                }
                let (wp, wn) = match balance {
                    ClassBalance::Normal => (1.0, 1.0),
                    ClassBalance::Balanced => global,
                    ClassBalance::BalancedSubsample => {
                        let pos: f64 = counts.iter().zip(y).filter(|(_, &l)| l).map(|(c, _)| c).sum();
                        balanced_weights(pos, n as f64 - pos)
                    }
                };
                let w: Vec<f64> = counts.iter().zip(y).map(|(c, &l)| c * if l { wp } else { wn }).collect();
                let idx: Vec<usize> = (0..n).filter(|&i| counts[i] > 0.0).collect();
                DecisionTree::fit(x, y, &w, idx, params, &mut rng)
            })
            .collect();
        Self { trees }
    }

    pub fn from_trees(trees: Vec<DecisionTree>) -> Self {
        Self { trees }
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }

    /// Fraction of trees voting positive.
    pub fn predict_proba(&self, q: &[f64]) -> f64 {
        if self.trees.is_empty() {
            return 0.0;
        }
        let votes = self.trees.iter().filter(|t| t.votes_positive(q)).count();
        votes as f64 / self.trees.len() as f64
    }
}
