//! The cut-cone membership problem (A) and its SIG-promise variant (B),
//! with the two promise-preserving Karp reductions between them.
//!
//! * A → B sends a proper metric `d` to `(G_d, d)` where `G_d` is its SIG.
//! * B → A forgets the graph.

use std::fmt;
use std::str::FromStr;

use crate::cutcone::{
    cutcone_membership_with, CutDecomposition, FarkasCertificate, Limits, Membership,
};
use crate::error::{Error, Result};
use crate::format::{join_sections, split_sections};
use crate::metric::FiniteMetric;
use crate::sig::{is_sig_metric, sig_from_metric_with_stats, LabeledGraph, SigStats};

/// A pair `(G, d)` on a common vertex set. Instances outside the promise
/// (where `d` is not a SIG metric for `G`) are representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProblemBInstance {
    graph: LabeledGraph,
    metric: FiniteMetric,
}

impl ProblemBInstance {
    pub fn new(graph: LabeledGraph, metric: FiniteMetric) -> Result<Self> {
        if graph.n() != metric.n() {
            return Err(Error::SizeMismatch {
                expected: graph.n(),
                actual: metric.n(),
            });
        }
        Ok(ProblemBInstance { graph, metric })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn metric(&self) -> &FiniteMetric {
        &self.metric
    }

    pub fn in_promise(&self) -> bool {
        is_sig_metric(&self.graph, &self.metric)
    }
}

impl fmt::Display for ProblemBInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_sections([self.graph.to_string(), self.metric.to_string()]))
    }
}

impl FromStr for ProblemBInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let sections = split_sections(text);
        let [graph, metric] = sections.as_slice() else {
            return Err(Error::parse(
                0,
                format!("expected graph and metric sections, found {}", sections.len()),
            ));
        };
        ProblemBInstance::new(graph.parse()?, metric.parse()?)
    }
}

/// `d ↦ (G_d, d)`.
pub fn reduce_a_to_b(d: &FiniteMetric) -> Result<ProblemBInstance> {
    reduce_a_to_b_with_stats(d).map(|(inst, _)| inst)
}

pub fn reduce_a_to_b_with_stats(d: &FiniteMetric) -> Result<(ProblemBInstance, SigStats)> {
    let (graph, stats) = sig_from_metric_with_stats(d)?;
    Ok((
        ProblemBInstance {
            graph,
            metric: d.clone(),
        },
        stats,
    ))
}

/// `(G, d) ↦ d`.
pub fn reduce_b_to_a(inst: ProblemBInstance) -> FiniteMetric {
    inst.metric
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemBAnswer {
    Yes(CutDecomposition),
    No(FarkasCertificate),
    PromiseViolated,
}

pub fn solve_problem_b(inst: &ProblemBInstance) -> Result<ProblemBAnswer> {
    solve_problem_b_with(inst, Limits::default())
}

/// Checks the promise, then decides membership of `d` in the cut cone.
pub fn solve_problem_b_with(inst: &ProblemBInstance, limits: Limits) -> Result<ProblemBAnswer> {
    if !inst.in_promise() {
        return Ok(ProblemBAnswer::PromiseViolated);
    }
    Ok(match cutcone_membership_with(&inst.metric, limits)? {
        Membership::Feasible(dec) => ProblemBAnswer::Yes(dec),
        Membership::Infeasible(cert) => ProblemBAnswer::No(cert),
    })
}
