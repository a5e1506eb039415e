//! Sphere-of-influence graphs.
//!
//! Vertex `i` has radius of influence `r_i = min_{j≠i} d(i, j)`; `i` and `j`
//! are adjacent iff `d(i, j) < r_i + r_j`, compared exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_usize};
use crate::metric::{
    pair_index, FiniteMetric, Mode, Norm, PointConfig, ScaledDistances,
    ScaledValues,
};

/// Simple undirected graph on `{0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Accepts edges in either orientation; rejects loops, duplicates and
    /// out-of-range vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = LabeledGraph::empty(n);
        for (i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", i + 1)));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({} {}) leaves V_{n}",
                    i + 1,
                    j + 1
                )));
            }
            if !g.edges.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("repeated edge ({} {})", i + 1, j + 1)));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: crate::metric::pairs(n).collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: (1..n).map(|j| (j - 1, j)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = Self::path(n);
        g.edges.insert((0, n - 1));
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// Neighbors of every vertex, each list ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn first_isolated_vertex(&self) -> Option<usize> {
        self.degrees().iter().position(|&d| d == 0)
    }

    /// Vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        LabeledGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| (perm[i].min(perm[j]), perm[i].max(perm[j])))
                .collect(),
        }
    }
}

impl fmt::Display for LabeledGraph {
    /// Graph file format: `n e`, then `i j` per edge (1-based, sorted).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for &(i, j) in &self.edges {
            writeln!(f, "{} {}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

impl FromStr for LabeledGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first, header) = lines.next().ok_or_else(|| Error::parse(1, "empty graph file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::parse(first, "expected `n e`"));
        }
        let n = parse_usize(head[0], first)?;
        let e = parse_usize(head[1], first)?;
        let mut edges = Vec::with_capacity(e);
        for (line, body) in lines {
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::parse(line, "expected `i j`"));
            }
            let i = parse_usize(toks[0], line)?;
            let j = parse_usize(toks[1], line)?;
            if i == 0 || j == 0 {
                return Err(Error::parse(line, "vertices are numbered from 1"));
            }
            edges.push((i - 1, j - 1));
        }
        if edges.len() != e {
            return Err(Error::SizeMismatch {
                expected: e,
                actual: edges.len(),
            });
        }
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        LabeledGraph::new(n, edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfluenceRadii(pub Vec<BigRational>);

impl InfluenceRadii {
    pub fn get(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

/// Comparison counts of one SIG computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SigStats {
    /// Comparisons spent on row minima.
    pub radius_comparisons: usize,
    /// One sign test of `r_i + r_j − d(i, j)` per pair.
    pub edge_tests: usize,
}

impl SigStats {
    pub fn total(&self) -> usize {
        self.radius_comparisons + self.edge_tests
    }
}

fn ensure_positive(d: &FiniteMetric) -> Result<()> {
    if d.entries().iter().any(|e| !e.is_positive()) {
        return Err(Error::InvalidMetric {
            mode: Mode::Metric,
            report: d.validate(Mode::Metric),
        });
    }
    Ok(())
}

/// Row minima. Requires every off-diagonal entry to be positive.
pub fn radii_of_influence(d: &FiniteMetric) -> Result<InfluenceRadii> {
    ensure_positive(d)?;
    let n = d.n();
    let (radii, _) = radii_kernel(n, d.entries());
    Ok(InfluenceRadii(radii))
}

fn radii_kernel<T: Ord + Clone>(n: usize, entries: &[T]) -> (Vec<T>, usize) {
    let mut comparisons = 0;
    let radii = (0..n)
        .map(|i| {
            let mut row = (0..n).filter(|&j| j != i).map(|j| {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                &entries[pair_index(n, a, b)]
            });
            let first = row.next().expect("n >= 2");
            row.fold(first, |best, e| {
                comparisons += 1;
                if e < best {
                    e
                } else {
                    best
                }
            })
            .clone()
        })
        .collect();
    (radii, comparisons)
}

fn sig_kernel<T>(n: usize, entries: &[T]) -> (LabeledGraph, SigStats)
where
    T: Ord + Clone,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    let (radii, radius_comparisons) = radii_kernel(n, entries);
    let mut edges = BTreeSet::new();
    let mut edge_tests = 0;
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            edge_tests += 1;
            if entries[idx] < &radii[i] + &radii[j] {
                edges.insert((i, j));
            }
            idx += 1;
        }
    }
    (
        LabeledGraph { n, edges },
        SigStats {
            radius_comparisons,
            edge_tests,
        },
    )
}

/// SIG of a proper metric.
pub fn sig_from_metric(d: &FiniteMetric) -> Result<LabeledGraph> {
    sig_from_metric_with_stats(d).map(|(g, _)| g)
}

/// As [`sig_from_metric`], also reporting the comparisons performed by the
/// graph construction itself (the metric-axiom check is not counted).
pub fn sig_from_metric_with_stats(d: &FiniteMetric) -> Result<(LabeledGraph, SigStats)> {
    d.ensure_valid(Mode::Metric)?;
    Ok(sig_kernel(d.n(), d.entries()))
}

/// SIG of pairwise distinct points under ℓ1 or ℓ∞.
///
/// Works on integer distances after clearing the coordinates' common
/// denominator; every comparison is invariant under that positive scaling,
/// so the graph equals `sig_from_metric(metric_from_points(points, norm))`.
pub fn sig_from_points(points: &PointConfig, norm: Norm) -> Result<LabeledGraph> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if let Some((i, j)) = points.find_duplicate() {
        return Err(Error::DuplicatePoints(i, j));
    }
    let scaled = ScaledDistances::compute(points, norm);
    let (g, _) = match &scaled.values {
        ScaledValues::Small(v) => sig_kernel(scaled.n, v),
        ScaledValues::Big(v) => sig_kernel(scaled.n, v),
    };
    Ok(g)
}

/// Labeled equality of `G` with the SIG of `d`. Anything outside the
/// operation's domain (size mismatch, improper metric) answers `false`.
pub fn is_sig_metric(g: &LabeledGraph, d: &FiniteMetric) -> bool {
    g.n() == d.n() && sig_from_metric(d).is_ok_and(|h| h == *g)
}
