//! Exact-arithmetic tools for ℓ1-embeddability of finite metrics and
//! sphere-of-influence graphs.
//!
//! * [`metric`]: finite (semi)metrics, point sets, ℓ1 / ℓ∞ distances.
//! * [`cutcone`]: cuts, cut semimetrics and certified cut-cone membership.
//! * [`embedding`]: explicit ℓ1 points from a cut decomposition.
//! * [`sig`]: sphere-of-influence graphs.
//! * [`reduction`]: cut-cone membership with and without the SIG promise,
//!   and the reductions between the two.
//! * [`realizer`]: search for ℓ1 SIG realizations of a given graph.
//!
//! All arithmetic is over arbitrary-precision rationals. Library indices are
//! 0-based; text formats number vertices from 1.

pub mod cutcone;
pub mod embedding;
pub mod error;
pub mod format;
pub mod lp;
pub mod metric;
pub mod realizer;
pub mod reduction;
pub mod sig;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use cutcone::{
    cut_metric, cutcone_membership, cutcone_membership_with, enumerate_cuts, verify_decomposition,
    verify_farkas, Cut, CutDecomposition, FarkasCertificate, Limits, Membership,
};
pub use embedding::{embed_from_decomposition, embed_metric, embed_metric_with, Embedding};
pub use error::{Error, Result};
pub use metric::{metric_from_points, validate, FiniteMetric, Mode, Norm, PointConfig, ValidationReport, Violation};
pub use realizer::{
    candidate_nn_maps, margin_lp, realize_l1_sig, MarginOutcome, NearestNeighborMap, RealizeOutcome,
    Realization, SearchOptions,
};
pub use reduction::{reduce_a_to_b, reduce_b_to_a, solve_problem_b, solve_problem_b_with, ProblemBAnswer, ProblemBInstance};
pub use sig::{is_sig_metric, radii_of_influence, sig_from_metric, sig_from_points, InfluenceRadii, LabeledGraph};
