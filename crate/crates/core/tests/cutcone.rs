mod common;

use common::*;
use l1sig_core::cutcone::cut_count;
use l1sig_core::{
    cut_metric, cutcone_membership, embed_from_decomposition, embed_metric, enumerate_cuts,
    metric_from_points, verify_decomposition, verify_farkas, BigInt, BigRational, Cut,
    CutDecomposition, Embedding, FarkasCertificate, FiniteMetric, Membership, Norm,
};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hypermetric inequality `Σ_{i<j} b_i b_j d(i,j) ≤ 0` for integer `b` with
/// `Σ b = 1`. Every cut metric satisfies it (the sum equals
/// `−b(C)·(b(C) − 1) ≤ 0` for integer `b(C)`), hence so does the whole cone.
fn hypermetric_value(d: &FiniteMetric, b: &[i64]) -> BigRational {
    let n = d.n();
    let mut acc = q(0);
    for i in 0..n {
        for j in i + 1..n {
            acc += d.get(i, j) * q(b[i] * b[j]);
        }
    }
    acc
}

#[test]
fn bipartite_metric_violates_pentagonal_inequality() {
    // Independent of the solver: the pentagonal inequality with
    // b = (-1, -1, 1, 1, 1) is violated, so K_{2,3} is outside the cone.
    let d = k23_metric();
    let b = [-1, -1, 1, 1, 1];
    assert_eq!(hypermetric_value(&d, &b), q(2));
    for c in enumerate_cuts(5) {
        assert!(!hypermetric_value(&cut_metric(&c), &b).is_positive());
    }
    let Membership::Infeasible(cert) = cutcone_membership(&d).unwrap() else {
        panic!("K_{{2,3}} path metric is not in CUT_5")
    };
    assert!(verify_farkas(&d, &cert));
    for c in enumerate_cuts(5) {
        assert!(!cert.pairing(&cut_metric(&c)).is_positive());
    }
}

#[test]
fn farkas_output_is_integral_and_primitive() {
    let Membership::Infeasible(cert) = cutcone_membership(&k23_metric()).unwrap() else {
        panic!()
    };
    let gcd = cert
        .y()
        .iter()
        .fold(BigInt::from(0), |acc, v| num_integer::Integer::gcd(&acc, v));
    assert_eq!(gcd, BigInt::from(1));
}

#[test]
fn membership_on_two_points() {
    let d = FiniteMetric::new(2, vec![qr(7, 3)]).unwrap();
    let Membership::Feasible(dec) = cutcone_membership(&d).unwrap() else { panic!() };
    assert_eq!(dec.terms(), &[(Cut::new(2, &[0]).unwrap(), qr(7, 3))]);
}

#[test]
fn zero_semimetric_has_empty_decomposition() {
    let d = FiniteMetric::zero(4).unwrap();
    let Membership::Feasible(dec) = cutcone_membership(&d).unwrap() else { panic!() };
    assert!(dec.is_empty());
    assert!(verify_decomposition(&d, &dec));
}

/// Collects certificates from random band metrics (many are outside the cone
/// for n ≥ 5) to use as candidate separators elsewhere.
fn certificate_pool(n: usize, seed: u64) -> Vec<FarkasCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = Vec::new();
    for _ in 0..60 {
        let d = random_band_metric(&mut rng, n);
        if let Membership::Infeasible(y) = cutcone_membership(&d).unwrap() {
            pool.push(y);
        }
    }
    pool
}

#[test]
fn certificates_never_both_verify() {
    let n = 6;
    let pool = certificate_pool(n, 11);
    assert!(!pool.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let d = random_proper_metric(&mut rng, n);
        match cutcone_membership(&d).unwrap() {
            Membership::Feasible(dec) => {
                assert!(verify_decomposition(&d, &dec));
                assert!(pool.iter().all(|y| !verify_farkas(&d, y)));
            }
            Membership::Infeasible(y) => {
                assert!(verify_farkas(&d, &y));
                // A verified separator is positive on d but nonpositive on
                // every cut, hence on every point of the cone.
                let mut rng2 = ChaCha8Rng::seed_from_u64(13);
                for _ in 0..20 {
                    let dec = random_decomposition(&mut rng2, n);
                    assert!(!y.pairing(&dec.to_metric()).is_positive());
                    assert_ne!(dec.to_metric(), d);
                }
            }
        }
    }
}

fn random_decomposition<R: Rng>(rng: &mut R, n: usize) -> CutDecomposition {
    let mut terms = Vec::new();
    for c in enumerate_cuts(n) {
        if rng.random_bool(0.3) {
            terms.push((c, qr(rng.random_range(1..=6), rng.random_range(1..=4))));
        }
    }
    CutDecomposition::new(n, terms).unwrap()
}

#[test]
fn random_cone_points_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let n = rng.random_range(2..=7);
        let d = random_decomposition(&mut rng, n).to_metric();
        let Membership::Feasible(dec) = cutcone_membership(&d).unwrap() else {
            panic!("a nonnegative cut combination is in the cone")
        };
        assert!(verify_decomposition(&d, &dec));
        assert!(dec.len() <= n * (n - 1) / 2);
    }
}

#[test]
fn scale_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let lambda = qr(5, 3);
    for _ in 0..30 {
        let n = rng.random_range(3..=6);
        let d = random_proper_metric(&mut rng, n);
        let a = cutcone_membership(&d).unwrap();
        let b = cutcone_membership(&d.scaled(&lambda)).unwrap();
        assert_eq!(a.is_feasible(), b.is_feasible());
        if let Membership::Feasible(dec) = a {
            assert!(verify_decomposition(&d.scaled(&lambda), &dec.scaled(&lambda).unwrap()));
        }
    }
}

#[test]
fn additivity_of_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..30 {
        let n = rng.random_range(2..=6);
        let a = random_decomposition(&mut rng, n);
        let b = random_decomposition(&mut rng, n);
        let sum = a.to_metric().checked_add(&b.to_metric()).unwrap();
        assert!(verify_decomposition(&sum, &a.merge(&b).unwrap()));
    }
}

#[test]
fn relabeling_transforms_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..30 {
        let n = rng.random_range(3..=6);
        let d = random_proper_metric(&mut rng, n);
        let perm = random_permutation(&mut rng, n);
        let pd = d.permuted(&perm);
        let (a, b) = (cutcone_membership(&d).unwrap(), cutcone_membership(&pd).unwrap());
        assert_eq!(a.is_feasible(), b.is_feasible());
        match a {
            Membership::Feasible(dec) => assert!(verify_decomposition(&pd, &dec.permuted(&perm))),
            Membership::Infeasible(y) => assert!(verify_farkas(&pd, &y.permuted(&perm))),
        }
    }
}

#[test]
fn embedding_dimension_is_bounded_by_pair_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..40 {
        let n = rng.random_range(2..=7);
        let d = random_l1_metric(&mut rng, n);
        let Embedding::Points(x) = embed_metric(&d).unwrap() else { panic!() };
        assert!(x.dim() <= n * (n - 1) / 2);
        assert_eq!(metric_from_points(&x, Norm::L1).unwrap(), d);
    }
}

#[test]
fn embedding_is_linear_in_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let lambda = qr(7, 2);
    for _ in 0..20 {
        let n = rng.random_range(2..=6);
        let dec = random_decomposition(&mut rng, n);
        let x = embed_from_decomposition(&dec);
        let y = embed_from_decomposition(&dec.scaled(&lambda).unwrap());
        assert_eq!(y, x.scaled(&lambda));
        assert_eq!(
            metric_from_points(&y, Norm::L1).unwrap(),
            metric_from_points(&x, Norm::L1).unwrap().scaled(&lambda)
        );
    }
}

#[test]
fn cut_counts() {
    for n in 2..=10 {
        assert_eq!(enumerate_cuts(n).count(), cut_count(n));
        assert_eq!(cut_count(n), (1 << (n - 1)) - 1);
    }
}
