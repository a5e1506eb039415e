//! Explicit ℓ1 point configurations for members of the cut cone.
//!
//! Each term `(C, w)` of a decomposition contributes one axis on which the
//! members of `C` sit at `w` and everyone else at `0`, so the ℓ1 distance of
//! two points is the total weight of the cuts separating them.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cutcone::{cutcone_membership_with, CutDecomposition, FarkasCertificate, Limits, Membership};
use crate::error::Result;
use crate::metric::{FiniteMetric, PointConfig};

/// One axis per cut. An empty decomposition maps every point to the origin
/// of `Q^1`.
pub fn embed_from_decomposition(dec: &CutDecomposition) -> PointConfig {
    let n = dec.n();
    let points = if dec.is_empty() {
        vec![vec![BigRational::zero()]; n]
    } else {
        (0..n)
            .map(|v| {
                dec.terms()
                    .iter()
                    .map(|(cut, w)| if cut.contains(v) { w.clone() } else { BigRational::zero() })
                    .collect()
            })
            .collect()
    };
    PointConfig::new(points).expect("n >= 2 points of equal dimension")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    Points(PointConfig),
    NotEmbeddable(FarkasCertificate),
}

pub fn embed_metric(d: &FiniteMetric) -> Result<Embedding> {
    embed_metric_with(d, Limits::default())
}

pub fn embed_metric_with(d: &FiniteMetric, limits: Limits) -> Result<Embedding> {
    Ok(match cutcone_membership_with(d, limits)? {
        Membership::Feasible(dec) => Embedding::Points(embed_from_decomposition(&dec)),
        Membership::Infeasible(cert) => Embedding::NotEmbeddable(cert),
    })
}
