//! Deterministic input generators shared by the benchmarks.

use l1sig_core::{metric_from_points, FiniteMetric, Norm, PointConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` pairwise distinct integer points in `[-range, range]^dim`.
pub fn random_points(seed: u64, n: usize, dim: usize, range: i64) -> PointConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.random_range(-range..=range)).collect();
        if !rows.contains(&p) {
            rows.push(p);
        }
    }
    PointConfig::from_integers(&rows).expect("non-empty rows of equal length")
}

pub fn random_l1_metric(seed: u64, n: usize, dim: usize) -> FiniteMetric {
    metric_from_points(&random_points(seed, n, dim, 10), Norm::L1).expect("n >= 2")
}
