#![allow(dead_code)]

use lexlevel::ml::FeatureMatrix;
use lexlevel::seed;
use rand::Rng;

pub fn matrix(rows: Vec<Vec<f64>>, labels: Vec<u8>) -> FeatureMatrix {
    let n = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    FeatureMatrix::new(
        (0..p).map(|j| format!("f{j}")).collect(),
        (0..n).map(|i| format!("r{i}")).collect(),
        rows,
        labels,
        vec!["t".into(); n],
    )
    .unwrap()
}

/// Logistic data where the first two columns carry signal and the rest are noise.
pub fn random_problem(seed: u64, n: usize, p: usize) -> FeatureMatrix {
    let mut rng = seed::rng(seed);
    let scale: Vec<f64> = (0..p).map(|_| rng.gen_range(0.2..5.0)).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..p).map(|j| scale[j] * rng.gen_range(-2.0..2.0)).collect())
        .collect();
    let labels = rows
        .iter()
        .map(|r| u8::from(r[0] / scale[0] - 0.7 * r[1] / scale[1] + rng.gen_range(-1.5..1.5) > 0.0))
        .collect();
    matrix(rows, labels)
}

/// Columns that carry no information about the balanced labels.
pub fn noise_problem(seed: u64, n: usize, p: usize) -> FeatureMatrix {
    let mut rng = seed::rng(seed);
    let rows = (0..n)
        .map(|_| (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let labels = (0..n).map(|i| (i % 2) as u8).collect();
    matrix(rows, labels)
}

/// x < 0 is class 0, x > 0 is class 1, plus a constant column.
pub fn separable() -> FeatureMatrix {
    let rows = (0..100)
        .map(|i| {
            let x = if i < 50 { -1.0 - i as f64 } else { 1.0 + (i - 50) as f64 };
            vec![x, 3.0]
        })
        .collect();
    let mut fm = matrix(rows, (0..100).map(|i| u8::from(i >= 50)).collect());
    fm.feature_names = vec!["x".into(), "flat".into()];
    fm
}

pub fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}
