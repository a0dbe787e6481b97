//! Single-bottleneck autoencoder for shrinking sparse region vectors.
//!
//! Architecture: min-max scaled input, affine encode, ReLU, affine decode,
//! mean squared error. Training is mini-batch Adam on one thread, so a seed
//! fully determines the weights. After every epoch the loss over the whole
//! training set is checked; an epoch that raises it is rolled back and the
//! step size halved, which keeps the recorded loss curve non-increasing.

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::Adam;

const FORMAT: &str = "hexstation-encoder/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncoderOptions {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
}

impl Default for EncoderOptions {
    fn default() -> Self {
        Self {
            epochs: 200,
            batch_size: 32,
            learning_rate: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Params {
    w1: Array2<f64>,
    b1: Array1<f64>,
    w2: Array2<f64>,
    b2: Array1<f64>,
}

impl Params {
    fn sizes(&self) -> [usize; 4] {
        [self.w1.len(), self.b1.len(), self.w2.len(), self.b2.len()]
    }

    fn step(&mut self, adam: &mut Adam, g: &Params, lr: f64) {
        adam.step(
            &mut [
                self.w1.as_slice_mut().expect("contiguous"),
                self.b1.as_slice_mut().expect("contiguous"),
                self.w2.as_slice_mut().expect("contiguous"),
                self.b2.as_slice_mut().expect("contiguous"),
            ],
            &[
                g.w1.as_slice().expect("contiguous"),
                g.b1.as_slice().expect("contiguous"),
                g.w2.as_slice().expect("contiguous"),
                g.b2.as_slice().expect("contiguous"),
            ],
            lr,
        );
    }
}

/// A trained encoder with its input scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoder {
    pub input_dim: usize,
    pub bottleneck_dim: usize,
    pub seed: u64,
    pub epochs: usize,
    /// Full-data reconstruction MSE after each epoch, in scaled space.
    pub losses: Vec<f64>,
    scale_min: Vec<f64>,
    scale_range: Vec<f64>,
    params: Params,
}

impl Encoder {
    pub fn final_loss(&self) -> f64 {
        self.losses.last().copied().unwrap_or(f64::NAN)
    }

    fn scale_row(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .zip(self.scale_min.iter().zip(&self.scale_range))
            .map(|(x, (lo, r))| if *r > 0.0 { (x - lo) / r } else { 0.0 })
            .collect()
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.input_dim {
            return Err(Error::input(format!(
                "encoder expects {} values, got {}",
                self.input_dim,
                v.len()
            )));
        }
        Ok(())
    }

    /// Bottleneck activations for one raw vector.
    pub fn encode(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        let x = Array2::from_shape_vec((1, self.input_dim), self.scale_row(v)).expect("shape");
        let (_, h) = hidden(&self.params, x.view());
        Ok(h.into_raw_vec_and_offset().0)
    }

    /// Reconstruction in scaled space.
    pub fn reconstruct_scaled(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        let x = Array2::from_shape_vec((1, self.input_dim), self.scale_row(v)).expect("shape");
        let (_, h) = hidden(&self.params, x.view());
        Ok(decode(&self.params, &h).into_raw_vec_and_offset().0)
    }

    /// Mean squared reconstruction error of `rows` in scaled space.
    pub fn reconstruction_mse(&self, rows: &[Vec<f64>]) -> Result<f64> {
        for r in rows {
            self.check_dim(r)?;
        }
        let x = self.scaled_matrix(rows);
        Ok(mse(&self.params, x.view()))
    }

    /// Error of predicting each scaled column by its mean.
    pub fn baseline_mse(&self, rows: &[Vec<f64>]) -> f64 {
        let x = self.scaled_matrix(rows);
        let mean = x.mean_axis(Axis(0)).expect("non-empty");
        (&x - &mean).mapv(|d| d * d).mean().unwrap_or(0.0)
    }

    fn scaled_matrix(&self, rows: &[Vec<f64>]) -> Array2<f64> {
        let flat: Vec<f64> = rows.iter().flat_map(|r| self.scale_row(r)).collect();
        Array2::from_shape_vec((rows.len(), self.input_dim), flat).expect("shape")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&EncoderFile::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: EncoderFile = serde_json::from_str(s)?;
        Encoder::try_from(f)
    }
}

fn hidden(p: &Params, x: ArrayView2<f64>) -> (Array2<f64>, Array2<f64>) {
    let z = x.dot(&p.w1) + &p.b1;
    let h = z.mapv(|v| v.max(0.0));
    (z, h)
}

fn decode(p: &Params, h: &Array2<f64>) -> Array2<f64> {
    h.dot(&p.w2) + &p.b2
}

fn mse(p: &Params, x: ArrayView2<f64>) -> f64 {
    let (_, h) = hidden(p, x);
    let y = decode(p, &h);
    (&y - &x).mapv(|d| d * d).mean().unwrap_or(0.0)
}

fn gradients(p: &Params, x: ArrayView2<f64>) -> Params {
    let (z, h) = hidden(p, x);
    let y = decode(p, &h);
    let scale = 2.0 / (x.len() as f64);
    let dy = (&y - &x) * scale;
    let dw2 = h.t().dot(&dy);
    let db2 = dy.sum_axis(Axis(0));
    let mut dz = dy.dot(&p.w2.t());
    dz.zip_mut_with(&z, |d, &zv| {
        if zv <= 0.0 {
            *d = 0.0;
        }
    });
    let dw1 = x.t().dot(&dz);
    let db1 = dz.sum_axis(Axis(0));
    Params {
        w1: dw1,
        b1: db1,
        w2: dw2,
        b2: db2,
    }
}

/// Trains an encoder on raw region vectors.
pub fn train_encoder(x: &[Vec<f64>], bottleneck: usize, seed: u64, opts: EncoderOptions) -> Result<Encoder> {
    if x.len() < 10 {
        return Err(Error::input(format!("encoder training needs at least 10 vectors, got {}", x.len())));
    }
    let d = x[0].len();
    if let Some(bad) = x.iter().position(|r| r.len() != d) {
        return Err(Error::input(format!("vector {bad} has dimension {} but vector 0 has {d}", x[bad].len())));
    }
    if bottleneck == 0 || bottleneck >= d {
        return Err(Error::config(format!(
            "bottleneck {bottleneck} must be positive and below the input dimension {d}"
        )));
    }
    if opts.batch_size == 0 || opts.learning_rate.is_nan() || opts.learning_rate <= 0.0 {
        return Err(Error::config("encoder batch size and learning rate must be positive"));
    }

    let mut scale_min = vec![f64::INFINITY; d];
    let mut scale_max = vec![f64::NEG_INFINITY; d];
    for r in x {
        for (j, &v) in r.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::input("encoder input contains a non-finite value"));
            }
            scale_min[j] = scale_min[j].min(v);
            scale_max[j] = scale_max[j].max(v);
        }
    }
    let scale_range: Vec<f64> = scale_max.iter().zip(&scale_min).map(|(hi, lo)| hi - lo).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut glorot = |rows: usize, cols: usize| {
        let limit = (6.0 / (rows + cols) as f64).sqrt();
        Array2::from_shape_fn((rows, cols), |_| rng.random_range(-limit..limit))
    };
    let w1 = glorot(d, bottleneck);
    let w2 = glorot(bottleneck, d);
    let mut params = Params {
        w1,
        b1: Array1::zeros(bottleneck),
        w2,
        b2: Array1::zeros(d),
    };
    let mut enc = Encoder {
        input_dim: d,
        bottleneck_dim: bottleneck,
        seed,
        epochs: opts.epochs,
        losses: Vec::with_capacity(opts.epochs),
        scale_min,
        scale_range,
        params: params.clone(),
    };
    let data = enc.scaled_matrix(x);
    // Start every hidden unit active on every row, so none is born dead.
    let z = data.dot(&params.w1);
    for (j, col) in z.axis_iter(Axis(1)).enumerate() {
        let lo = col.fold(f64::INFINITY, |a, &v| a.min(v));
        params.b1[j] = 0.1 - lo;
    }
    // Decoder starts near the column means, i.e. at the baseline loss.
    params.w2.mapv_inplace(|w| w * 0.1);
    params.b2 = data.mean_axis(Axis(0)).expect("non-empty") - params.b1.dot(&params.w2);

    let mut adam = Adam::new(&params.sizes());
    let mut lr = opts.learning_rate;
    let mut order: Vec<usize> = (0..x.len()).collect();
    let mut prev = mse(&params, data.view());
    for epoch in 0..opts.epochs {
        let saved = (params.clone(), adam.clone());
        order.shuffle(&mut rng);
        for batch in order.chunks(opts.batch_size) {
            let xb = data.select(Axis(0), batch);
            let g = gradients(&params, xb.view());
            params.step(&mut adam, &g, lr);
        }
        let loss = mse(&params, data.view());
        if loss.is_finite() && loss <= prev {
            prev = loss;
        } else {
            log::debug!("encoder epoch {epoch}: loss rose to {loss:.3e}, rolling back");
            (params, adam) = saved;
            lr *= 0.5;
        }
        enc.losses.push(prev);
    }
    enc.params = params;
    Ok(enc)
}

#[derive(Serialize, Deserialize)]
struct EncoderFile {
    format: String,
    input_dim: usize,
    bottleneck_dim: usize,
    seed: u64,
    epochs: usize,
    losses: Vec<f64>,
    scale_min: Vec<f64>,
    scale_range: Vec<f64>,
    /// Row-major `input_dim × bottleneck_dim`.
    w_encode: Vec<f64>,
    b_encode: Vec<f64>,
    /// Row-major `bottleneck_dim × input_dim`.
    w_decode: Vec<f64>,
    b_decode: Vec<f64>,
}

impl From<&Encoder> for EncoderFile {
    fn from(e: &Encoder) -> Self {
        Self {
            format: FORMAT.into(),
            input_dim: e.input_dim,
            bottleneck_dim: e.bottleneck_dim,
            seed: e.seed,
            epochs: e.epochs,
            losses: e.losses.clone(),
            scale_min: e.scale_min.clone(),
            scale_range: e.scale_range.clone(),
            w_encode: e.params.w1.iter().copied().collect(),
            b_encode: e.params.b1.to_vec(),
            w_decode: e.params.w2.iter().copied().collect(),
            b_decode: e.params.b2.to_vec(),
        }
    }
}

impl TryFrom<EncoderFile> for Encoder {
    type Error = Error;

    fn try_from(f: EncoderFile) -> Result<Self> {
        if f.format != FORMAT {
            return Err(Error::input(format!("unsupported encoder format {:?}", f.format)));
        }
        let (d, b) = (f.input_dim, f.bottleneck_dim);
        let bad = |what: &str| Error::input(format!("encoder file: {what} has the wrong size"));
        if f.scale_min.len() != d || f.scale_range.len() != d {
            return Err(bad("scaling"));
        }
        if f.b_encode.len() != b || f.b_decode.len() != d {
            return Err(bad("bias"));
        }
        let w1 = Array2::from_shape_vec((d, b), f.w_encode).map_err(|_| bad("w_encode"))?;
        let w2 = Array2::from_shape_vec((b, d), f.w_decode).map_err(|_| bad("w_decode"))?;
        Ok(Encoder {
            input_dim: d,
            bottleneck_dim: b,
            seed: f.seed,
            epochs: f.epochs,
            losses: f.losses,
            scale_min: f.scale_min,
            scale_range: f.scale_range,
            params: Params {
                w1,
                b1: Array1::from(f.b_encode),
                w2,
                b2: Array1::from(f.b_decode),
            },
        })
    }
}
