use hexstation::embeddings::{train_encoder, EncoderOptions, Encoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sparse_counts_beat_the_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x: Vec<Vec<f64>> = (0..120)
        .map(|_| (0..30).map(|_| if rng.random::<f64>() < 0.1 { rng.random_range(1..5) as f64 } else { 0.0 }).collect())
        .collect();
    let e = train_encoder(&x, 8, 1, EncoderOptions::default()).unwrap();
    assert!(e.reconstruction_mse(&x).unwrap() < e.baseline_mse(&x));
}

#[test]
fn saved_encoder_encodes_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x: Vec<Vec<f64>> = (0..40).map(|_| (0..6).map(|_| rng.random_range(0.0..3.0)).collect()).collect();
    let e = train_encoder(&x, 2, 7, EncoderOptions { epochs: 10, ..Default::default() }).unwrap();
    let back = Encoder::from_json(&e.to_json().unwrap()).unwrap();
    for row in &x {
        let z = e.encode(row).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z, back.encode(row).unwrap());
    }
    assert!(train_encoder(&x, 6, 0, EncoderOptions::default()).is_err());
    assert!(train_encoder(&x[..5], 2, 0, EncoderOptions::default()).is_err());
}
