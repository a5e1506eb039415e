#![allow(dead_code)]

use l1sig_core::{metric_from_points, BigRational, FiniteMetric, Norm, PointConfig};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Shortest-path metric of `K_{2,3}` with parts `{1,2}` and `{3,4,5}`.
pub fn k23_metric() -> FiniteMetric {
    let part = |v: usize| v < 2;
    FiniteMetric::from_fn(5, |i, j| if part(i) == part(j) { q(2) } else { q(1) }).unwrap()
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize, dim: usize, range: i64) -> PointConfig {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.random_range(-range..=range)).collect();
        if !rows.contains(&p) {
            rows.push(p);
        }
    }
    PointConfig::from_integers(&rows).unwrap()
}

/// Entries in `[1, 2]`: every triangle holds since the largest entry is at
/// most twice the smallest.
pub fn random_band_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetric {
    FiniteMetric::from_fn(n, |_, _| {
        let den = rng.random_range(1..=12i64);
        let num = rng.random_range(0..=den);
        q(1) + qr(num, den)
    })
    .unwrap()
}

/// Shortest paths over a connected random graph with positive rational
/// edge weights.
pub fn random_path_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetric {
    let inf: Option<BigRational> = None;
    let mut dist = vec![vec![inf; n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let weight = |rng: &mut R| qr(rng.random_range(1..=9), rng.random_range(1..=3));
    // Random spanning tree plus extra edges.
    for k in 1..n {
        let (a, b) = (order[k], order[rng.random_range(0..k)]);
        let w = weight(rng);
        dist[a][b] = Some(w.clone());
        dist[b][a] = Some(w);
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.3) {
                let w = weight(rng);
                if dist[i][j].as_ref().is_none_or(|d| w < *d) {
                    dist[i][j] = Some(w.clone());
                    dist[j][i] = Some(w);
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let (Some(a), Some(b)) = (&dist[i][k], &dist[k][j]) {
                    let via = a + b;
                    if dist[i][j].as_ref().is_none_or(|d| via < *d) {
                        dist[i][j] = Some(via);
                    }
                }
            }
        }
    }
    FiniteMetric::from_fn(n, |i, j| dist[i][j].clone().unwrap()).unwrap()
}

pub fn random_l1_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetric {
    let dim = rng.random_range(1..=4);
    metric_from_points(&random_points(rng, n, dim, 10), Norm::L1).unwrap()
}

/// A proper rational metric from one of several families, chosen at random.
pub fn random_proper_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetric {
    match rng.random_range(0..3) {
        0 => random_band_metric(rng, n),
        1 => random_path_metric(rng, n),
        _ => random_l1_metric(rng, n),
    }
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
