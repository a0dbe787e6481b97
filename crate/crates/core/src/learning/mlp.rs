use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::optim::Adam;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlpOptions {
    pub hidden: usize,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    /// L2 penalty on the weights.
    pub alpha: f64,
}

impl Default for MlpOptions {
    fn default() -> Self {
        Self {
            hidden: 20,
            epochs: 200,
            batch_size: 32,
            learning_rate: 1e-3,
            alpha: 1e-4,
        }
    }
}

/// `N → hidden (ReLU) → 2 (softmax)` network trained on cross-entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    input: usize,
    hidden: usize,
    /// Row-major `input × hidden`.
    w1: Vec<f64>,
    b1: Vec<f64>,
    /// Row-major `hidden × 2`.
    w2: Vec<f64>,
    b2: Vec<f64>,
}

struct Net {
    w1: Array2<f64>,
    b1: Array1<f64>,
    w2: Array2<f64>,
    b2: Array1<f64>,
}

impl Net {
    fn forward(&self, x: ArrayView2<f64>) -> (Array2<f64>, Array2<f64>, Array2<f64>) {
        let z = x.dot(&self.w1) + &self.b1;
        let h = z.mapv(|v| v.max(0.0));
        let mut out = h.dot(&self.w2) + &self.b2;
        for mut row in out.axis_iter_mut(Axis(0)) {
            let m = row.fold(f64::NEG_INFINITY, |a, &v| a.max(v));
            row.mapv_inplace(|v| (v - m).exp());
            let s = row.sum();
            row.mapv_inplace(|v| v / s);
        }
        (z, h, out)
    }
}

impl Mlp {
    /// Layer sizes `(input, hidden, output)`.
    pub fn layers(&self) -> (usize, usize, usize) {
        (self.input, self.hidden, 2)
    }

    pub fn fit(x: &[Vec<f64>], y: &[bool], opts: MlpOptions, seed: u64) -> Self {
        let (n, d, hdim) = (x.len(), x[0].len(), opts.hidden);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut glorot = |rows: usize, cols: usize| {
            let limit = (6.0 / (rows + cols) as f64).sqrt();
            Array2::from_shape_fn((rows, cols), |_| rng.random_range(-limit..limit))
        };
        let mut net = Net {
            w1: glorot(d, hdim),
            b1: Array1::zeros(hdim),
            w2: glorot(hdim, 2),
            b2: Array1::zeros(2),
        };
        let data = Array2::from_shape_vec((n, d), x.concat()).expect("rectangular rows");
        let target = Array2::from_shape_fn((n, 2), |(i, j)| if y[i] == (j == 1) { 1.0 } else { 0.0 });
        let mut adam = Adam::new(&[d * hdim, hdim, hdim * 2, 2]);
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..opts.epochs {
            order.shuffle(&mut rng);
            for batch in order.chunks(opts.batch_size) {
                let xb = data.select(Axis(0), batch);
                let tb = target.select(Axis(0), batch);
                let m = batch.len() as f64;
                let (z, h, p) = net.forward(xb.view());
                let dout = (p - tb) / m;
                let gw2 = h.t().dot(&dout) + &net.w2 * (opts.alpha / m);
                let gb2 = dout.sum_axis(Axis(0));
                let mut dz = dout.dot(&net.w2.t());
                dz.zip_mut_with(&z, |g, &zv| {
                    if zv <= 0.0 {
                        *g = 0.0;
                    }
                });
                let gw1 = xb.t().dot(&dz) + &net.w1 * (opts.alpha / m);
                let gb1 = dz.sum_axis(Axis(0));
                adam.step(
                    &mut [
                        net.w1.as_slice_mut().expect("contiguous"),
                        net.b1.as_slice_mut().expect("contiguous"),
                        net.w2.as_slice_mut().expect("contiguous"),
                        net.b2.as_slice_mut().expect("contiguous"),
                    ],
                    &[
                        gw1.as_slice().expect("contiguous"),
                        gb1.as_slice().expect("contiguous"),
                        gw2.as_slice().expect("contiguous"),
                        gb2.as_slice().expect("contiguous"),
                    ],
                    opts.learning_rate,
                );
            }
        }
        Self {
            input: d,
            hidden: hdim,
            w1: net.w1.iter().copied().collect(),
            b1: net.b1.to_vec(),
            w2: net.w2.iter().copied().collect(),
            b2: net.b2.to_vec(),
        }
    }

    fn net(&self) -> Net {
        Net {
            w1: Array2::from_shape_vec((self.input, self.hidden), self.w1.clone()).expect("shape"),
            b1: Array1::from(self.b1.clone()),
            w2: Array2::from_shape_vec((self.hidden, 2), self.w2.clone()).expect("shape"),
            b2: Array1::from(self.b2.clone()),
        }
    }

    /// Positive-class probabilities for many rows at once.
    pub fn predict_proba_batch(&self, x: &[Vec<f64>]) -> Vec<f64> {
        if x.is_empty() {
            return Vec::new();
        }
        let data = Array2::from_shape_vec((x.len(), self.input), x.concat()).expect("rectangular rows");
        let (_, _, p) = self.net().forward(data.view());
        p.column(1).to_vec()
    }
}
