//! Cuts, cut semimetrics and exact cut-cone membership.
//!
//! A cut `{C, V∖C}` is stored by its canonical side, the one containing
//! vertex 0. Membership of `d` in the cone spanned by all cut semimetrics is
//! decided by an exact Phase I simplex over every nontrivial cut; the answer
//! always carries a certificate that [`verify_decomposition`] or
//! [`verify_farkas`] re-checks from scratch.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_rational, parse_usize};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::metric::{invert_permutation, pair_count, pairs, FiniteMetric, Mode};

/// Largest ground set a [`Cut`] can describe.
pub const MAX_CUT_VERTICES: usize = 64;

/// Default bound on `n` for [`cutcone_membership`] (`2^13 − 1` columns).
pub const DEFAULT_MAX_N: usize = 14;

/// A canonical nontrivial cut of `{0, …, n-1}`: a vertex bitmask that
/// contains vertex 0 and is not the whole set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    n: usize,
    mask: u64,
}

impl Cut {
    /// Fails unless `members` is a canonical side: contains 0, is proper.
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        let mask = members_to_mask(n, members)?;
        Self::from_mask(n, mask)
    }

    /// Canonical representative of the partition `{S, V∖S}` for any proper
    /// nonempty `S`.
    pub fn canonical(n: usize, members: &[usize]) -> Result<Self> {
        let mask = members_to_mask(n, members)?;
        let full = full_mask(n);
        if mask == 0 || mask == full {
            return Err(Error::NonCanonicalCut("trivial cut".into()));
        }
        Self::from_mask(n, if mask & 1 == 1 { mask } else { full & !mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if !(2..=MAX_CUT_VERTICES).contains(&n) {
            return Err(Error::NonCanonicalCut(format!("unsupported ground set size {n}")));
        }
        let full = full_mask(n);
        if mask & !full != 0 {
            return Err(Error::NonCanonicalCut("member outside the ground set".into()));
        }
        if mask & 1 == 0 {
            return Err(Error::NonCanonicalCut("side must contain vertex 1".into()));
        }
        if mask == full {
            return Err(Error::NonCanonicalCut("side must be a proper subset".into()));
        }
        Ok(Cut { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.mask >> v & 1 == 1
    }

    /// Members in ascending order, 0-based.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    /// `δ_C(i, j)`: whether the cut separates `i` and `j`.
    #[inline]
    pub fn separates(&self, i: usize, j: usize) -> bool {
        ((self.mask >> i) ^ (self.mask >> j)) & 1 == 1
    }

    /// Image under the relabeling `v ↦ perm[v]`, re-canonicalized.
    pub fn permuted(&self, perm: &[usize]) -> Cut {
        let image: Vec<usize> = self.members().map(|v| perm[v]).collect();
        Cut::canonical(self.n, &image).expect("image of a nontrivial cut is nontrivial")
    }

    /// Position in [`enumerate_cuts`] order.
    pub fn rank(&self) -> usize {
        (self.mask >> 1) as usize
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, v) in self.members().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn members_to_mask(n: usize, members: &[usize]) -> Result<u64> {
    if !(2..=MAX_CUT_VERTICES).contains(&n) {
        return Err(Error::NonCanonicalCut(format!("unsupported ground set size {n}")));
    }
    let mut mask = 0u64;
    for &v in members {
        if v >= n {
            return Err(Error::NonCanonicalCut(format!("vertex {} outside V_{n}", v + 1)));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// All `2^(n-1) − 1` canonical nontrivial cuts of `{0, …, n-1}`.
///
/// The order is ascending in the bitmask of the cut's members among
/// vertices `1..n` (vertex 1 is the low bit): for `n = 3` this yields
/// `{1}, {1,2}, {1,3}` in 1-based notation.
pub fn enumerate_cuts(n: usize) -> impl Iterator<Item = Cut> {
    assert!(
        (2..=MAX_CUT_VERTICES).contains(&n),
        "cuts are enumerable for 2 <= n <= 64"
    );
    let count: u64 = (1u64 << (n - 1)) - 1;
    (0..count).map(move |rest| Cut {
        n,
        mask: (rest << 1) | 1,
    })
}

pub fn cut_count(n: usize) -> usize {
    (1usize << (n - 1)) - 1
}

/// The cut semimetric `δ_C`: 1 on separated pairs, 0 otherwise.
pub fn cut_metric(cut: &Cut) -> FiniteMetric {
    FiniteMetric::from_fn(cut.n, |i, j| {
        if cut.separates(i, j) {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
    .expect("cut ground sets have n >= 2")
}

/// A point `Σ w_C δ_C` of the cut cone with strictly positive weights on
/// pairwise distinct canonical cuts, kept in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutDecomposition {
    n: usize,
    terms: Vec<(Cut, BigRational)>,
}

impl CutDecomposition {
    pub fn new(n: usize, mut terms: Vec<(Cut, BigRational)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        for (cut, w) in &terms {
            if cut.n != n {
                return Err(Error::InvalidDecomposition(format!(
                    "cut {cut} lives on {} vertices, expected {n}",
                    cut.n
                )));
            }
            if !w.is_positive() {
                return Err(Error::InvalidDecomposition(format!(
                    "weight {w} of cut {cut} is not positive"
                )));
            }
        }
        terms.sort_by_key(|(c, _)| *c);
        if let Some(w) = terms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDecomposition(format!("cut {} repeated", w[0].0)));
        }
        Ok(CutDecomposition { n, terms })
    }

    pub fn empty(n: usize) -> Self {
        CutDecomposition {
            n,
            terms: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Cut, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_weight(&self) -> BigRational {
        self.terms.iter().map(|(_, w)| w).sum()
    }

    /// `Σ w_C δ_C`.
    pub fn to_metric(&self) -> FiniteMetric {
        let mut entries = vec![BigRational::zero(); pair_count(self.n)];
        for (cut, w) in &self.terms {
            for (e, (i, j)) in entries.iter_mut().zip(pairs(self.n)) {
                if cut.separates(i, j) {
                    *e += w;
                }
            }
        }
        FiniteMetric::new(self.n, entries).expect("n >= 2")
    }

    pub fn scaled(&self, factor: &BigRational) -> Result<Self> {
        CutDecomposition::new(
            self.n,
            self.terms.iter().map(|(c, w)| (*c, w * factor)).collect(),
        )
    }

    /// Sum of two decompositions; weights on shared cuts add.
    pub fn merge(&self, other: &CutDecomposition) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut acc: BTreeMap<Cut, BigRational> = BTreeMap::new();
        for (c, w) in self.terms.iter().chain(&other.terms) {
            *acc.entry(*c).or_insert_with(BigRational::zero) += w;
        }
        CutDecomposition::new(self.n, acc.into_iter().collect())
    }

    /// Relabels every cut by `v ↦ perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        CutDecomposition::new(
            self.n,
            self.terms.iter().map(|(c, w)| (c.permuted(perm), w.clone())).collect(),
        )
        .expect("relabeling is a bijection on canonical cuts")
    }
}

impl fmt::Display for CutDecomposition {
    /// Decomposition file format: `n k`, then `w : i1 i2 …` per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.terms.len())?;
        for (cut, w) in &self.terms {
            write!(f, "{w} :")?;
            for v in cut.members() {
                write!(f, " {}", v + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for CutDecomposition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first, header) =
            lines.next().ok_or_else(|| Error::parse(1, "empty decomposition file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::parse(first, "expected `n k`"));
        }
        let n = parse_usize(head[0], first)?;
        let k = parse_usize(head[1], first)?;
        let mut terms = Vec::with_capacity(k);
        for (line, body) in lines {
            let (w, members) = body
                .split_once(':')
                .ok_or_else(|| Error::parse(line, "expected `weight : members`"))?;
            let w = parse_rational(w.trim(), line)?;
            let members = members
                .split_whitespace()
                .map(|t| match parse_usize(t, line)? {
                    0 => Err(Error::parse(line, "vertices are numbered from 1")),
                    v => Ok(v - 1),
                })
                .collect::<Result<Vec<_>>>()?;
            let cut = Cut::new(n, &members)?;
            terms.push((cut, w));
        }
        if terms.len() != k {
            return Err(Error::SizeMismatch {
                expected: k,
                actual: terms.len(),
            });
        }
        let dec = CutDecomposition::new(n, terms)?;
        Ok(dec)
    }
}

/// A separating functional `y` on vertex pairs: `⟨y, δ_C⟩ ≤ 0` for every
/// cut and `⟨y, d⟩ > 0` for the refuted `d`.
///
/// Stored with integer entries whose gcd is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FarkasCertificate {
    n: usize,
    y: Vec<BigInt>,
}

impl FarkasCertificate {
    pub fn new(n: usize, y: Vec<BigInt>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        if y.len() != pair_count(n) {
            return Err(Error::SizeMismatch {
                expected: pair_count(n),
                actual: y.len(),
            });
        }
        Ok(FarkasCertificate { n, y })
    }

    /// Clears denominators and divides out the content; positive scaling
    /// preserves both certificate conditions.
    pub fn from_rational(n: usize, y: &[BigRational]) -> Result<Self> {
        let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = y.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let ints = if gcd.is_zero() || gcd.is_one() {
            ints
        } else {
            ints.into_iter().map(|v| v / &gcd).collect()
        };
        Self::new(n, ints)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries in pair order `(1,2), (1,3), …, (n-1,n)`.
    pub fn y(&self) -> &[BigInt] {
        &self.y
    }

    pub fn pairing(&self, d: &FiniteMetric) -> BigRational {
        self.y
            .iter()
            .zip(d.entries())
            .filter(|(y, _)| !y.is_zero())
            .map(|(y, e)| e * y)
            .sum()
    }

    pub fn pairing_with_cut(&self, cut: &Cut) -> BigInt {
        pairs(self.n)
            .zip(&self.y)
            .filter(|((i, j), _)| cut.separates(*i, *j))
            .map(|(_, y)| y)
            .sum()
    }

    /// Relabels pairs by `v ↦ perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let inv = invert_permutation(perm);
        let n = self.n;
        let get = |i: usize, j: usize| {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            self.y[crate::metric::pair_index(n, a, b)].clone()
        };
        FarkasCertificate {
            n,
            y: pairs(n).map(|(a, b)| get(inv[a], inv[b])).collect(),
        }
    }
}

impl fmt::Display for FarkasCertificate {
    /// Farkas file format: `n`, then the pair entries on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (idx, v) in self.y.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        writeln!(f)
    }
}

impl FromStr for FarkasCertificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first, header) = lines.next().ok_or_else(|| Error::parse(1, "empty certificate"))?;
        let n = parse_usize(header, first)?;
        let mut y = Vec::new();
        for (line, body) in lines {
            for tok in body.split_whitespace() {
                y.push(
                    tok.parse::<BigInt>()
                        .map_err(|_| Error::parse(line, format!("expected an integer, got `{tok}`")))?,
                );
            }
        }
        FarkasCertificate::new(n, y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Feasible(CutDecomposition),
    Infeasible(FarkasCertificate),
}

impl Membership {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Membership::Feasible(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// Decides `d ∈ CUT_n` with the default size bound.
pub fn cutcone_membership(d: &FiniteMetric) -> Result<Membership> {
    cutcone_membership_with(d, Limits::default())
}

pub fn cutcone_membership_with(d: &FiniteMetric, limits: Limits) -> Result<Membership> {
    let n = d.n();
    if n > limits.max_n || n > MAX_CUT_VERTICES {
        return Err(Error::ResourceLimit {
            n,
            max: limits.max_n.min(MAX_CUT_VERTICES),
        });
    }
    d.ensure_valid(Mode::Semimetric)?;

    let cuts: Vec<Cut> = enumerate_cuts(n).collect();
    let mut lp = LinearProgram::new(cuts.len());
    for ((i, j), rhs) in pairs(n).zip(d.entries()) {
        let row = cuts
            .iter()
            .enumerate()
            .filter(|(_, c)| c.separates(i, j))
            .map(|(col, _)| (col, BigRational::one()))
            .collect();
        lp.add_constraint(row, Relation::Eq, rhs.clone());
    }

    let membership = match lp.solve() {
        LpOutcome::Optimal(sol) => {
            let terms = cuts
                .into_iter()
                .zip(sol.x)
                .filter(|(_, w)| w.is_positive())
                .collect();
            Membership::Feasible(CutDecomposition::new(n, terms)?)
        }
        LpOutcome::Infeasible(inf) => {
            Membership::Infeasible(FarkasCertificate::from_rational(n, &inf.y)?)
        }
        LpOutcome::Unbounded => unreachable!("feasibility problems have a zero objective"),
    };
    debug_assert!(match &membership {
        Membership::Feasible(dec) => verify_decomposition(d, dec),
        Membership::Infeasible(y) => verify_farkas(d, y),
    });
    Ok(membership)
}

/// Exact check of `d = Σ w_C δ_C`. Mismatched sizes verify as `false`.
pub fn verify_decomposition(d: &FiniteMetric, dec: &CutDecomposition) -> bool {
    d.n() == dec.n()
        && dec.terms.iter().all(|(_, w)| w.is_positive())
        && dec.to_metric() == *d
}

/// Exact check of both certificate conditions over every canonical cut.
/// Mismatched sizes verify as `false`.
pub fn verify_farkas(d: &FiniteMetric, cert: &FarkasCertificate) -> bool {
    if d.n() != cert.n() || !cert.pairing(d).is_positive() {
        return false;
    }
    // Incremental cut values: walking masks in Gray-code order moves one
    // vertex across the cut per step.
    let n = d.n();
    let y = |i: usize, j: usize| -> &BigInt {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &cert.y[crate::metric::pair_index(n, a, b)]
    };
    let mut side = vec![false; n];
    side[0] = true;
    let mut value: BigInt = (1..n).map(|j| y(0, j)).sum();
    if value.is_positive() {
        return false;
    }
    // The walk visits all 2^(n-1) subsets of the non-zero vertices; the
    // trivial cut among them has value 0.
    for step in 1..(1u64 << (n - 1)) {
        // Gray code g(step) = step ^ (step >> 1) differs from g(step-1) in
        // the lowest set bit of `step`.
        let v = step.trailing_zeros() as usize + 1;
        let joining = !side[v];
        let mut delta = BigInt::zero();
        for u in (0..n).filter(|&u| u != v) {
            if side[u] {
                delta -= y(u, v);
            } else {
                delta += y(u, v);
            }
        }
        if !joining {
            delta = -delta;
        }
        side[v] = joining;
        value += delta;
        if value.is_positive() {
            return false;
        }
    }
    true
}
