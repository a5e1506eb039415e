//! Exact rational linear programming.
//!
//! Two-phase revised simplex. Both the entering and the leaving variable are
//! chosen by Bland's smallest-index rule, so the method terminates on
//! degenerate problems.
//!
//! Problems are stated as
//!
//! ```text
//! minimize    cᵀx
//! subject to  a_rᵀx (≤ | ≥ | =) b_r   for every row r
//!             x ≥ 0
//! ```
//!
//! Internally every row is scaled to integer coefficients and the basis
//! inverse is kept fraction-free: an integer matrix `M = D·B⁻¹` together
//! with `D = ±det B`, updated by exact integer division at each pivot. No
//! gcd is computed inside the pivot loop.
//!
//! When Phase I ends with a positive infeasibility, the Phase I dual vector is
//! returned as a Farkas certificate for the original rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs; a variable may appear at most once.
    pub coeffs: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub x: Vec<BigRational>,
    pub objective: BigRational,
    /// Number of pivots over both phases.
    pub pivots: usize,
}

/// Certificate that the constraint system has no nonnegative solution.
///
/// `y` is indexed by the original rows and satisfies `yᵀA_j ≤ 0` for every
/// variable `j`, `yᵀb > 0`, `y_r ≤ 0` on `≤` rows and `y_r ≥ 0` on `≥` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Infeasibility {
    pub y: Vec<BigRational>,
    /// Optimal Phase I value (sum of artificial variables, in scaled rows).
    pub phase_one_value: BigRational,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible(Infeasibility),
    Unbounded,
}

impl LinearProgram {
    /// Minimizes the zero objective unless [`set_objective`](Self::set_objective) is called.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![BigRational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn set_objective(&mut self, objective: Vec<BigRational>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<(usize, BigRational)>,
        relation: Relation,
        rhs: BigRational,
    ) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

/// Smallest positive integer clearing every denominator in `values`.
fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scale_to_integer(v: &BigRational, factor: &BigInt) -> BigInt {
    v.numer() * (factor / v.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    m: usize,
    num_structural: usize,
    /// Sparse integer columns of the scaled, sign-normalized constraint
    /// matrix, followed by slack/surplus and artificial columns.
    columns: Vec<Vec<(usize, BigInt)>>,
    kinds: Vec<ColumnKind>,
    /// Signed factor turning scaled row `r` back into original row `r`:
    /// original = scaled / row_scale[r].
    row_scale: Vec<BigInt>,

    basis: Vec<usize>,
    is_basic: Vec<bool>,
    /// `D · B⁻¹`.
    adj: Vec<Vec<BigInt>>,
    /// `D · x_B`.
    xb: Vec<BigInt>,
    /// Positive common denominator of `adj` and `xb`.
    det: BigInt,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); lp.num_vars];
        let mut kinds = vec![ColumnKind::Structural; lp.num_vars];
        let mut row_scale = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut relations = Vec::with_capacity(m);

        for (r, c) in lp.constraints.iter().enumerate() {
            let mut scale =
                common_denominator(c.coeffs.iter().map(|(_, a)| a).chain(Some(&c.rhs)));
            let flip = c.rhs.is_negative();
            if flip {
                scale = -scale;
            }
            rhs.push(scale_to_integer(&c.rhs, &scale));
            relations.push(match (c.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (rel, _) => rel,
            });
            for (v, a) in &c.coeffs {
                if !a.is_zero() {
                    columns[*v].push((r, scale_to_integer(a, &scale)));
                }
            }
            row_scale.push(scale);
        }

        let mut basis = vec![usize::MAX; m];
        for (r, rel) in relations.iter().enumerate() {
            match rel {
                Relation::Le => {
                    basis[r] = columns.len();
                    columns.push(vec![(r, BigInt::one())]);
                    kinds.push(ColumnKind::Slack);
                }
                Relation::Ge => {
                    columns.push(vec![(r, -BigInt::one())]);
                    kinds.push(ColumnKind::Slack);
                }
                Relation::Eq => {}
            }
        }
        for (r, rel) in relations.iter().enumerate() {
            if *rel != Relation::Le {
                basis[r] = columns.len();
                columns.push(vec![(r, BigInt::one())]);
                kinds.push(ColumnKind::Artificial);
            }
        }

        let mut is_basic = vec![false; columns.len()];
        for &b in &basis {
            is_basic[b] = true;
        }
        let adj = (0..m)
            .map(|r| {
                (0..m)
                    .map(|k| if r == k { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();

        Tableau {
            m,
            num_structural: lp.num_vars,
            columns,
            kinds,
            row_scale,
            basis,
            is_basic,
            adj,
            xb: rhs,
            det: BigInt::one(),
            pivots: 0,
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        if self.kinds.contains(&ColumnKind::Artificial) {
            let phase_one: Vec<BigInt> = self
                .kinds
                .iter()
                .map(|k| {
                    if *k == ColumnKind::Artificial {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            let finished = self.optimize(&phase_one, true);
            debug_assert!(finished, "phase I is bounded below by zero");
            let scaled_value: BigInt = self
                .basis
                .iter()
                .zip(&self.xb)
                .filter(|(b, _)| self.kinds[**b] == ColumnKind::Artificial)
                .map(|(_, x)| x)
                .sum();
            if scaled_value.is_positive() {
                // y = c_Bᵀ M / D on scaled rows; original rows pick up the
                // row scale.
                let y = self
                    .duals(&phase_one)
                    .into_iter()
                    .zip(&self.row_scale)
                    .map(|(y, s)| BigRational::new(y * s, self.det.clone()))
                    .collect();
                return LpOutcome::Infeasible(Infeasibility {
                    y,
                    phase_one_value: BigRational::new(scaled_value, self.det.clone()),
                    pivots: self.pivots,
                });
            }
            self.drive_out_artificials();
        }

        let obj_scale = common_denominator(&lp.objective);
        let mut cost: Vec<BigInt> = lp
            .objective
            .iter()
            .map(|c| scale_to_integer(c, &obj_scale))
            .collect();
        cost.resize(self.columns.len(), BigInt::zero());
        if !self.optimize(&cost, false) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![BigRational::zero(); self.num_structural];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_structural {
                x[b] = BigRational::new(self.xb[r].clone(), self.det.clone());
            }
        }
        let objective = lp
            .objective
            .iter()
            .zip(&x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum();
        LpOutcome::Optimal(Solution {
            objective,
            x,
            pivots: self.pivots,
        })
    }

    /// `c_Bᵀ M`, i.e. `D` times the simplex multipliers.
    fn duals(&self, cost: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.m];
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (yk, ak) in y.iter_mut().zip(&self.adj[r]) {
                if !ak.is_zero() {
                    if cb.is_one() {
                        *yk += ak;
                    } else {
                        *yk += cb * ak;
                    }
                }
            }
        }
        y
    }

    /// `D` times the reduced cost of column `j`; same sign since `D > 0`.
    fn scaled_reduced_cost(&self, j: usize, cost: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut d = if cost[j].is_zero() {
            BigInt::zero()
        } else {
            &cost[j] * &self.det
        };
        for (r, a) in &self.columns[j] {
            if y[*r].is_zero() {
                continue;
            }
            if a.is_one() {
                d -= &y[*r];
            } else {
                d -= &y[*r] * a;
            }
        }
        d
    }

    /// `M A_j = D · B⁻¹ A_j`.
    fn ftran(&self, j: usize) -> Vec<BigInt> {
        (0..self.m).map(|r| self.ftran_row(r, j)).collect()
    }

    fn ftran_row(&self, r: usize, j: usize) -> BigInt {
        let row = &self.adj[r];
        let mut acc = BigInt::zero();
        for (k, a) in &self.columns[j] {
            if row[*k].is_zero() {
                continue;
            }
            if a.is_one() {
                acc += &row[*k];
            } else {
                acc += &row[*k] * a;
            }
        }
        acc
    }

    /// Runs simplex iterations on `cost`. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[BigInt], allow_artificial: bool) -> bool {
        loop {
            let y = self.duals(cost);
            let entering = (0..self.columns.len()).find(|&j| {
                !self.is_basic[j]
                    && (allow_artificial || self.kinds[j] != ColumnKind::Artificial)
                    && self.scaled_reduced_cost(j, cost, &y).is_negative()
            });
            let Some(q) = entering else {
                return true;
            };
            let u = self.ftran(q);

            // Ratio test on x_r / ū_r = xb_r / u_r; ties broken by the
            // smallest basic variable index.
            let mut leave: Option<usize> = None;
            for (r, ur) in u.iter().enumerate() {
                if !ur.is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(best) => {
                        let lhs = &self.xb[r] * &u[best];
                        let rhs = &self.xb[best] * ur;
                        lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[best])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
            let Some(p) = leave else {
                return false;
            };
            self.pivot(p, q, &u);
        }
    }

    /// Fraction-free basis update: with `u = M A_q` and pivot `u_p`,
    /// `M'_r = (u_p M_r − u_r M_p) / D` for `r ≠ p`, `M'_p = M_p`, `D' = u_p`.
    fn pivot(&mut self, p: usize, q: usize, u: &[BigInt]) {
        let up = &u[p];
        let pivot_row = self.adj[p].clone();
        let pivot_x = self.xb[p].clone();
        for (r, ur) in u.iter().enumerate() {
            if r == p {
                continue;
            }
            let row = &mut self.adj[r];
            for (e, pe) in row.iter_mut().zip(&pivot_row) {
                if e.is_zero() && (ur.is_zero() || pe.is_zero()) {
                    continue;
                }
                let mut v = up * &*e;
                if !ur.is_zero() && !pe.is_zero() {
                    v -= ur * pe;
                }
                *e = v / &self.det;
            }
            let mut v = up * &self.xb[r];
            if !ur.is_zero() && !pivot_x.is_zero() {
                v -= ur * &pivot_x;
            }
            self.xb[r] = v / &self.det;
        }
        self.det = up.clone();
        if self.det.is_negative() {
            self.det = -std::mem::take(&mut self.det);
            for row in &mut self.adj {
                for e in row.iter_mut() {
                    if !e.is_zero() {
                        *e = -std::mem::take(e);
                    }
                }
            }
            for x in &mut self.xb {
                *x = -std::mem::take(x);
            }
        }
        self.is_basic[self.basis[p]] = false;
        self.is_basic[q] = true;
        self.basis[p] = q;
        self.pivots += 1;
    }

    /// After a feasible Phase I, replaces zero-level basic artificials by
    /// non-artificial columns where possible. An artificial that cannot be
    /// replaced sits on a redundant row and can never become nonzero.
    fn drive_out_artificials(&mut self) {
        for p in 0..self.m {
            if self.kinds[self.basis[p]] != ColumnKind::Artificial {
                continue;
            }
            let replacement = (0..self.columns.len()).find(|&j| {
                !self.is_basic[j]
                    && self.kinds[j] != ColumnKind::Artificial
                    && !self.ftran_row(p, j).is_zero()
            });
            if let Some(q) = replacement {
                let u = self.ftran(q);
                self.pivot(p, q, &u);
            }
        }
    }
}
