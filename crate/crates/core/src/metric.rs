//! Finite (semi)metrics on `{0, …, n-1}` and point configurations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_rational, parse_usize};

/// Position of the pair `(i, j)`, `i < j`, in row-major upper-triangle order.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All pairs `(i, j)` with `i < j < n`, in storage order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Symmetric matrix with zero diagonal, stored as its strict upper triangle.
///
/// Entries are exact rationals. Structural well-formedness (size, symmetry,
/// zero diagonal) is guaranteed by construction; the metric axioms are not,
/// see [`FiniteMetric::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMetric {
    n: usize,
    entries: Vec<BigRational>,
}

impl FiniteMetric {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        if entries.len() != pair_count(n) {
            return Err(Error::SizeMismatch {
                expected: pair_count(n),
                actual: entries.len(),
            });
        }
        Ok(FiniteMetric { n, entries })
    }

    /// Builds a metric from a function of `(i, j)` with `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let entries = pairs(n).map(|(i, j)| f(i, j)).collect();
        Ok(FiniteMetric { n, entries })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| BigRational::zero())
    }

    /// Every off-diagonal entry equal to `value`.
    pub fn uniform(n: usize, value: BigRational) -> Result<Self> {
        Self::from_fn(n, |_, _| value.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Upper-triangle entries in row-major order.
    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// `d(i, j)`; zero on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> BigRational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.entries[pair_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.entries[pair_index(self.n, j, i)].clone(),
            std::cmp::Ordering::Equal => BigRational::zero(),
        }
    }

    /// Borrowing accessor for `i != j`.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        assert_ne!(i, j, "diagonal entries are not stored");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &self.entries[pair_index(self.n, a, b)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        FiniteMetric {
            n: self.n,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn checked_add(&self, other: &FiniteMetric) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(FiniteMetric {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Relabels vertices: vertex `i` becomes `perm[i]`, so the result `e`
    /// satisfies `e(perm[i], perm[j]) = self(i, j)`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let inv = invert_permutation(perm);
        FiniteMetric::from_fn(self.n, |a, b| self.get(inv[a], inv[b])).expect("n >= 2")
    }

    pub fn validate(&self, mode: Mode) -> ValidationReport {
        validate(self, mode)
    }

    pub fn is_valid(&self, mode: Mode) -> bool {
        self.validate(mode).is_valid()
    }

    /// Fails with [`Error::InvalidMetric`] unless valid under `mode`.
    pub fn ensure_valid(&self, mode: Mode) -> Result<()> {
        let report = self.validate(mode);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidMetric { mode, report })
        }
    }
}

pub(crate) fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![usize::MAX; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        assert!(p < perm.len() && inv[p] == usize::MAX, "not a permutation");
        inv[p] = i;
    }
    inv
}

/// Which axioms [`validate`] enforces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Nonnegativity and the triangle inequality.
    Semimetric,
    /// Additionally strict positivity off the diagonal.
    Metric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Semimetric => "semimetric",
            Mode::Metric => "metric",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semimetric" => Ok(Mode::Semimetric),
            "metric" => Ok(Mode::Metric),
            other => Err(Error::parse(0, format!("unknown mode `{other}`"))),
        }
    }
}

/// One violated axiom. Indices are 0-based; `Display` prints them 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    Negative { i: usize, j: usize },
    /// Zero distance between distinct vertices (metric mode only).
    NotPositive { i: usize, j: usize },
    /// `d(i, k) > d(i, j) + d(j, k)` with `i < k`.
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Negative { i, j } => write!(f, "negative ({} {})", i + 1, j + 1),
            Violation::NotPositive { i, j } => write!(f, "positivity ({} {})", i + 1, j + 1),
            Violation::Triangle { i, j, k } => {
                write!(f, "triangle ({} {} {})", i + 1, j + 1, k + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Reports every violated axiom. Pair checks come first in storage order,
/// then triangle checks ordered by `(i, k, j)`.
pub fn validate(d: &FiniteMetric, mode: Mode) -> ValidationReport {
    let n = d.n();
    let mut violations = Vec::new();
    for ((i, j), e) in pairs(n).zip(d.entries()) {
        if e.is_negative() {
            violations.push(Violation::Negative { i, j });
        } else if mode == Mode::Metric && e.is_zero() {
            violations.push(Violation::NotPositive { i, j });
        }
    }
    for (i, k) in pairs(n) {
        let long = d.entry(i, k);
        for j in (0..n).filter(|&j| j != i && j != k) {
            if *long > d.entry(i, j) + d.entry(j, k) {
                violations.push(Violation::Triangle { i, j, k });
            }
        }
    }
    ValidationReport { violations }
}

impl fmt::Display for FiniteMetric {
    /// Metric file format: `n` on line 1, upper triangle on line 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (idx, e) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        writeln!(f)
    }
}

impl FromStr for FiniteMetric {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first, header) = lines.next().ok_or_else(|| Error::parse(1, "empty metric file"))?;
        let mut head = header.split_whitespace();
        let n = parse_usize(head.next().unwrap_or_default(), first)?;
        if head.next().is_some() {
            return Err(Error::parse(first, "expected a single vertex count"));
        }
        let mut entries = Vec::with_capacity(pair_count(n));
        for (line, body) in lines {
            for tok in body.split_whitespace() {
                entries.push(parse_rational(tok, line)?);
            }
        }
        FiniteMetric::new(n, entries)
    }
}

/// Exponent of the ℓp norm. Only the two exponents with exact rational
/// distances are representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    LInf,
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Norm::L1),
            "inf" | "infinity" | "∞" => Ok(Norm::LInf),
            other => Err(Error::UnsupportedNorm(other.to_string())),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "1",
            Norm::LInf => "inf",
        })
    }
}

/// `n` points in `Q^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Vec<BigRational>>,
}

impl PointConfig {
    pub fn new(points: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::parse(1, "points need dimension at least 1"));
        }
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::RaggedPoints {
                index,
                expected: dim,
                actual: p.len(),
            });
        }
        Ok(PointConfig { dim, points })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&c| BigRational::from_integer(c.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        PointConfig {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|c| c * factor).collect())
                .collect(),
        }
    }

    /// Point `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let inv = invert_permutation(perm);
        PointConfig {
            dim: self.dim,
            points: inv.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// First pair of coinciding points, if any.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]).then(a.cmp(&b)));
        order
            .windows(2)
            .filter(|w| self.points[w[0]] == self.points[w[1]])
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .min()
    }
}

impl fmt::Display for PointConfig {
    /// Point file format: `n m`, then one line of `m` rationals per point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.points.len(), self.dim)?;
        for p in &self.points {
            for (idx, c) in p.iter().enumerate() {
                if idx > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for PointConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first, header) = lines.next().ok_or_else(|| Error::parse(1, "empty point file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::parse(first, "expected `n m`"));
        }
        let n = parse_usize(head[0], first)?;
        let m = parse_usize(head[1], first)?;
        let mut points = Vec::with_capacity(n);
        for (line, body) in lines {
            let row = body
                .split_whitespace()
                .map(|t| parse_rational(t, line))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != m {
                return Err(Error::parse(line, format!("expected {m} coordinates, got {}", row.len())));
            }
            points.push(row);
        }
        if points.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: points.len(),
            });
        }
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        PointConfig::new(points)
    }
}

/// Exact pairwise ℓp distances.
pub fn metric_from_points(points: &PointConfig, norm: Norm) -> Result<FiniteMetric> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    let scaled = ScaledDistances::compute(points, norm);
    let denom = scaled.denominator.clone();
    let entries = match scaled.values {
        ScaledValues::Small(v) => v
            .into_iter()
            .map(|x| BigRational::new(BigInt::from(x), denom.clone()))
            .collect(),
        ScaledValues::Big(v) => v
            .into_iter()
            .map(|x| BigRational::new(x, denom.clone()))
            .collect(),
    };
    FiniteMetric::new(n, entries)
}

/// Pairwise distances of a point set after clearing denominators: every
/// coordinate is multiplied by the common denominator `L`, so each stored
/// integer is exactly `L · d_p(x_i, x_j)`.
pub(crate) struct ScaledDistances {
    pub n: usize,
    pub denominator: BigInt,
    pub values: ScaledValues,
}

pub(crate) enum ScaledValues {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl ScaledDistances {
    pub fn compute(points: &PointConfig, norm: Norm) -> Self {
        let n = points.len();
        let denominator = points
            .points()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<Vec<BigInt>> = points
            .points()
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| c.numer() * (&denominator / c.denom()))
                    .collect()
            })
            .collect();

        // Coordinates below 2^62 in magnitude keep every ℓ1 sum of up to 2^62
        // terms inside i128.
        let small: Option<Vec<Vec<i64>>> = scaled
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| c.to_i64().filter(|v| v.unsigned_abs() < (1 << 62)))
                    .collect()
            })
            .collect();
        let values = match small {
            Some(coords) => ScaledValues::Small(pairwise(n, |i, j| {
                let it = coords[i]
                    .iter()
                    .zip(&coords[j])
                    .map(|(&a, &b)| (i128::from(a) - i128::from(b)).abs());
                match norm {
                    Norm::L1 => it.sum(),
                    Norm::LInf => it.max().unwrap_or(0),
                }
            })),
            None => ScaledValues::Big(pairwise(n, |i, j| {
                let it = scaled[i].iter().zip(&scaled[j]).map(|(a, b)| (a - b).abs());
                match norm {
                    Norm::L1 => it.sum(),
                    Norm::LInf => it.max().unwrap_or_else(BigInt::zero),
                }
            })),
        };
        ScaledDistances {
            n,
            denominator,
            values,
        }
    }
}

fn pairwise<T>(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Vec<T> {
    pairs(n).map(|(i, j)| f(i, j)).collect()
}
