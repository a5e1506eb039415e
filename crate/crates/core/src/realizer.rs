//! Search for ℓ1 sphere-of-influence realizations of a graph.
//!
//! Fixing a nearest neighbor `σ(i)` for every vertex turns each radius
//! `r_i = d(i, σ(i))` into a linear form in the cut weights, so "some
//! `d ∈ CUT_n` has SIG exactly `G` with these nearest neighbors" becomes an
//! LP with strict inequalities. The strict parts share one margin `t`, the
//! weights are normalized to sum 1, and `t` is maximized; the system is
//! strictly feasible iff the optimum is positive.
//!
//! Variables: one weight per canonical cut, then `t`.
//!
//! ```text
//! Σ w_C = 1
//! d(i, σ(i)) ≤ d(i, k)                 k ∉ {i, σ(i)}
//! t ≤ d(i, j)                          every pair
//! d(i, j) + t ≤ r_i + r_j              every edge
//! r_i + r_j ≤ d(i, j)                  every non-edge
//! ```

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cutcone::{enumerate_cuts, verify_decomposition, Cut, CutDecomposition};
use crate::error::{Error, Result};
use crate::format::{content_lines, join_sections, parse_rational, parse_usize, split_sections};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::metric::{pairs, FiniteMetric};
use crate::sig::{radii_of_influence, sig_from_metric, LabeledGraph};

/// Default bound on `n` for the realization search.
pub const DEFAULT_REALIZER_MAX_N: usize = 8;

/// A choice of nearest neighbor `σ(i) ≠ i` for every vertex, each adjacent
/// to its vertex in the target graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NearestNeighborMap(Vec<usize>);

impl NearestNeighborMap {
    pub fn new(graph: &LabeledGraph, sigma: Vec<usize>) -> Result<Self> {
        if sigma.len() != graph.n() {
            return Err(Error::SizeMismatch {
                expected: graph.n(),
                actual: sigma.len(),
            });
        }
        for (i, &s) in sigma.iter().enumerate() {
            if s == i || s >= graph.n() || !graph.has_edge(i, s) {
                return Err(Error::InvalidNeighborMap(format!(
                    "vertex {} cannot have nearest neighbor {}",
                    i + 1,
                    s + 1
                )));
            }
        }
        Ok(NearestNeighborMap(sigma))
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for NearestNeighborMap {
    /// 1-based targets separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, s) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s + 1)?;
        }
        Ok(())
    }
}

/// All nearest-neighbor maps compatible with `G`, lexicographically in
/// `(σ(0), σ(1), …)`. There are `Π deg(i)` of them.
#[derive(Clone, Debug)]
pub struct CandidateMaps {
    adjacency: Vec<Vec<usize>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for CandidateMaps {
    type Item = NearestNeighborMap;

    fn next(&mut self) -> Option<Self::Item> {
        let cursor = self.cursor.as_mut()?;
        let item = NearestNeighborMap(
            cursor
                .iter()
                .zip(&self.adjacency)
                .map(|(&c, adj)| adj[c])
                .collect(),
        );
        let mut pos = cursor.len();
        loop {
            if pos == 0 {
                self.cursor = None;
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < self.adjacency[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
        Some(item)
    }
}

pub fn candidate_nn_maps(graph: &LabeledGraph) -> Result<CandidateMaps> {
    if graph.n() < 2 {
        return Err(Error::TooFewVertices(graph.n()));
    }
    if let Some(v) = graph.first_isolated_vertex() {
        return Err(Error::IsolatedVertex(v + 1));
    }
    Ok(CandidateMaps {
        cursor: Some(vec![0; graph.n()]),
        adjacency: graph.adjacency(),
    })
}

/// Number of maps [`candidate_nn_maps`] yields, saturating.
pub fn candidate_count(graph: &LabeledGraph) -> u64 {
    graph
        .degrees()
        .iter()
        .fold(1u64, |acc, &d| acc.saturating_mul(d as u64))
}

/// A verified ℓ1 SIG realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub graph: LabeledGraph,
    pub metric: FiniteMetric,
    pub decomposition: CutDecomposition,
    pub sigma: NearestNeighborMap,
    /// Optimal shared slack of the strict inequalities under `Σ w_C = 1`.
    pub margin: BigRational,
}

impl Realization {
    /// Re-checks the decomposition, the SIG and the nearest-neighbor radii.
    pub fn verify(&self) -> bool {
        let n = self.graph.n();
        if self.metric.n() != n || self.sigma.as_slice().len() != n || !self.margin.is_positive() {
            return false;
        }
        if !verify_decomposition(&self.metric, &self.decomposition) {
            return false;
        }
        if sig_from_metric(&self.metric).ok().as_ref() != Some(&self.graph) {
            return false;
        }
        let Ok(radii) = radii_of_influence(&self.metric) else {
            return false;
        };
        (0..n).all(|i| {
            let s = self.sigma.get(i);
            s != i && s < n && *radii.get(i) == self.metric.get(i, s)
        })
    }
}

impl fmt::Display for Realization {
    /// Report format: graph, metric, decomposition, σ line and margin line,
    /// separated by `---` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_sections([
            self.graph.to_string(),
            self.metric.to_string(),
            self.decomposition.to_string(),
            format!("{}\n", self.sigma),
            format!("{}\n", self.margin),
        ]))
    }
}

impl FromStr for Realization {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let sections = split_sections(text);
        let [graph, metric, dec, sigma, margin] = sections.as_slice() else {
            return Err(Error::parse(
                0,
                format!("expected five report sections, found {}", sections.len()),
            ));
        };
        let graph: LabeledGraph = graph.parse()?;
        let single_line = |s: &str| -> Result<(usize, String)> {
            let mut lines = content_lines(s);
            let (line, body) = lines.next().ok_or_else(|| Error::parse(0, "missing line"))?;
            if lines.next().is_some() {
                return Err(Error::parse(line, "expected a single line"));
            }
            Ok((line, body.to_string()))
        };
        let (line, sigma) = single_line(sigma)?;
        let sigma = sigma
            .split_whitespace()
            .map(|t| match parse_usize(t, line)? {
                0 => Err(Error::parse(line, "vertices are numbered from 1")),
                v => Ok(v - 1),
            })
            .collect::<Result<Vec<_>>>()?;
        let (line, margin) = single_line(margin)?;
        Ok(Realization {
            sigma: NearestNeighborMap::new(&graph, sigma)?,
            metric: metric.parse()?,
            decomposition: dec.parse()?,
            margin: parse_rational(&margin, line)?,
            graph,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarginOutcome {
    Realized(Realization),
    InfeasibleForSigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of nearest-neighbor maps to try.
    pub budget: u64,
    pub max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000,
            max_n: DEFAULT_REALIZER_MAX_N,
        }
    }
}

/// Linear form over `(w_0, …, w_{K-1}, t)` with small integer coefficients.
struct Form(Vec<i64>);

impl Form {
    fn zero(len: usize) -> Self {
        Form(vec![0; len])
    }

    fn add_distance(&mut self, cuts: &[Cut], i: usize, j: usize, sign: i64) -> &mut Self {
        for (c, cut) in self.0.iter_mut().zip(cuts) {
            if cut.separates(i, j) {
                *c += sign;
            }
        }
        self
    }

    fn add_margin(&mut self, sign: i64) -> &mut Self {
        *self.0.last_mut().expect("margin column") += sign;
        self
    }

    fn sparse(&self) -> Vec<(usize, BigRational)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (v, BigRational::from_integer(c.into())))
            .collect()
    }
}

pub fn margin_lp(graph: &LabeledGraph, sigma: &NearestNeighborMap) -> Result<MarginOutcome> {
    margin_lp_with(graph, sigma, DEFAULT_REALIZER_MAX_N)
}

pub fn margin_lp_with(
    graph: &LabeledGraph,
    sigma: &NearestNeighborMap,
    max_n: usize,
) -> Result<MarginOutcome> {
    let n = graph.n();
    if n > max_n {
        return Err(Error::ResourceLimit { n, max: max_n });
    }
    let sigma = NearestNeighborMap::new(graph, sigma.as_slice().to_vec())?;
    let cuts: Vec<Cut> = enumerate_cuts(n).collect();
    let k = cuts.len();
    let t = k;
    let mut lp = LinearProgram::new(k + 1);
    let mut objective = vec![BigRational::zero(); k + 1];
    objective[t] = -BigRational::one();
    lp.set_objective(objective);

    lp.add_constraint(
        (0..k).map(|v| (v, BigRational::one())).collect(),
        Relation::Eq,
        BigRational::one(),
    );
    let le_zero = |lp: &mut LinearProgram, form: &Form| {
        lp.add_constraint(form.sparse(), Relation::Le, BigRational::zero());
    };

    for i in 0..n {
        let s = sigma.get(i);
        for other in (0..n).filter(|&v| v != i && v != s) {
            let mut f = Form::zero(k + 1);
            f.add_distance(&cuts, i, s, 1).add_distance(&cuts, i, other, -1);
            le_zero(&mut lp, &f);
        }
    }
    for (i, j) in pairs(n) {
        let mut f = Form::zero(k + 1);
        f.add_margin(1).add_distance(&cuts, i, j, -1);
        le_zero(&mut lp, &f);
    }
    for (i, j) in pairs(n) {
        let mut f = Form::zero(k + 1);
        f.add_distance(&cuts, i, sigma.get(i), 1)
            .add_distance(&cuts, j, sigma.get(j), 1)
            .add_distance(&cuts, i, j, -1);
        if graph.has_edge(i, j) {
            // d(i,j) + t - r_i - r_j ≤ 0
            f.0.iter_mut().for_each(|c| *c = -*c);
            f.add_margin(1);
        }
        le_zero(&mut lp, &f);
    }

    let solution = match lp.solve() {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::Infeasible(_) => return Ok(MarginOutcome::InfeasibleForSigma),
        LpOutcome::Unbounded => unreachable!("the margin is bounded by a normalized distance"),
    };
    let margin = solution.x[t].clone();
    if !margin.is_positive() {
        return Ok(MarginOutcome::InfeasibleForSigma);
    }
    let terms = cuts
        .into_iter()
        .zip(solution.x)
        .filter(|(_, w)| w.is_positive())
        .collect();
    let decomposition = CutDecomposition::new(n, terms)?;
    let realization = Realization {
        graph: graph.clone(),
        metric: decomposition.to_metric(),
        decomposition,
        sigma,
        margin,
    };
    assert!(
        realization.verify(),
        "margin LP optimum failed verification"
    );
    Ok(MarginOutcome::Realized(realization))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizeOutcome {
    Realized(Realization),
    /// The graph has an isolated vertex (1-based), which no SIG has.
    NotRealizableStructural { vertex: usize },
    /// No tried map admitted a realization. `complete` is set when every
    /// candidate map was tried within the budget.
    Exhausted { maps_tried: u64, complete: bool },
}

pub fn realize_l1_sig(graph: &LabeledGraph, options: SearchOptions) -> Result<RealizeOutcome> {
    if graph.n() < 2 {
        return Err(Error::TooFewVertices(graph.n()));
    }
    if let Some(v) = graph.first_isolated_vertex() {
        return Ok(RealizeOutcome::NotRealizableStructural { vertex: v + 1 });
    }
    if graph.n() > options.max_n {
        return Err(Error::ResourceLimit {
            n: graph.n(),
            max: options.max_n,
        });
    }
    let mut maps_tried = 0;
    for sigma in candidate_nn_maps(graph)? {
        if maps_tried >= options.budget {
            return Ok(RealizeOutcome::Exhausted {
                maps_tried,
                complete: false,
            });
        }
        maps_tried += 1;
        if let MarginOutcome::Realized(r) = margin_lp_with(graph, &sigma, options.max_n)? {
            return Ok(RealizeOutcome::Realized(r));
        }
    }
    Ok(RealizeOutcome::Exhausted {
        maps_tried,
        complete: true,
    })
}
