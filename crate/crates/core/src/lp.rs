//! Bounded-variable dual simplex over a dense explicit basis inverse.
//!
//! Every structural column is box-bounded, so the all-slack basis with each
//! structural parked at the bound favoured by its objective sign is dual
//! feasible. The dual simplex therefore needs no phase one, and adding rows
//! or fixing variables keeps an optimal basis dual feasible, which is what
//! the cutting-plane loop relies on for warm starts.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const FEAS_TOL: f64 = 1e-7;
pub const PIVOT_TOL: f64 = 1e-10;
pub const DUAL_TOL: f64 = 1e-9;
pub const BLAND_AFTER: usize = 1000;
const REFACTOR_EVERY: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> Self {
        Row { coeffs, sense, rhs }
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `x` violates the row (zero if satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let a = self.activity(x);
        match self.sense {
            Sense::Le => (a - self.rhs).max(0.0),
            Sense::Ge => (self.rhs - a).max(0.0),
            Sense::Eq => (a - self.rhs).abs(),
        }
    }
}

/// Maximise `objective · x` subject to the rows and `lower ≤ x ≤ upper`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LpModel {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
}

impl LpModel {
    pub fn new(objective: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        LpModel {
            lower,
            upper,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn add_rows(&mut self, rows: impl IntoIterator<Item = Row>) {
        self.rows.extend(rows);
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.columns();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::Model("bound vectors do not match column count".into()));
        }
        for j in 0..n {
            if !(self.lower[j].is_finite() && self.upper[j].is_finite()) {
                return Err(Error::Model(format!("column {j} is not box-bounded")));
            }
            if self.lower[j] > self.upper[j] {
                return Err(Error::Model(format!("column {j} has lower > upper")));
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.coeffs.iter().any(|&(j, a)| j >= n || !a.is_finite()) || !row.rhs.is_finite() {
                return Err(Error::Model(format!("row {r} is malformed")));
            }
        }
        Ok(())
    }

    /// Largest bound or row violation of `x`.
    pub fn max_residual(&self, x: &[f64]) -> f64 {
        let b = (0..self.columns())
            .map(|j| (self.lower[j] - x[j]).max(x[j] - self.upper[j]).max(0.0))
            .fold(0.0, f64::max);
        self.rows.iter().map(|r| r.violation(x)).fold(b, f64::max)
    }
}

/// Returns a copy of `m` with `rows` appended.
pub fn add_rows(m: &LpModel, rows: impl IntoIterator<Item = Row>) -> LpModel {
    let mut out = m.clone();
    out.add_rows(rows);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStatus {
    Basic,
    AtLower,
    AtUpper,
}

/// Status of every structural column and every row slack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub columns: Vec<VarStatus>,
    pub rows: Vec<VarStatus>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    pub basis: Option<Basis>,
    pub pivots: usize,
    /// Exact objective when solved in rational mode.
    pub exact_objective: Option<BigRational>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LpOptions {
    pub exact: bool,
}

pub fn lp_solve(m: &LpModel, warm: Option<&Basis>) -> Result<LpSolution> {
    lp_solve_with(m, warm, LpOptions::default())
}

pub fn lp_solve_with(m: &LpModel, warm: Option<&Basis>, opts: LpOptions) -> Result<LpSolution> {
    m.validate()?;
    if opts.exact {
        let (status, x, obj, basis, pivots) = Simplex::<BigRational>::run(m, warm)?;
        Ok(LpSolution {
            status,
            x: x.iter().map(|v| v.to_f64_lossy()).collect(),
            objective: obj.to_f64_lossy(),
            basis,
            pivots,
            exact_objective: Some(obj),
        })
    } else {
        let (status, x, obj, basis, pivots) = Simplex::<f64>::run(m, warm)?;
        Ok(LpSolution {
            status,
            x,
            objective: obj,
            basis,
            pivots,
            exact_objective: None,
        })
    }
}

/// Arithmetic needed by the simplex; implemented for `f64` and exact rationals.
pub trait Scalar: Clone + Debug + PartialOrd {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64_exact(v: f64) -> Self;
    fn to_f64_lossy(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_zero_val(&self) -> bool;
    fn pivot_tol() -> Self;
    fn feas_tol() -> Self;
    fn dual_tol() -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64_exact(v: f64) -> Self {
        v
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero_val(&self) -> bool {
        *self == 0.0
    }
    fn pivot_tol() -> Self {
        PIVOT_TOL
    }
    fn feas_tol() -> Self {
        FEAS_TOL * 0.1
    }
    fn dual_tol() -> Self {
        DUAL_TOL
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(BigInt::from(1))
    }
    fn from_f64_exact(v: f64) -> Self {
        BigRational::from_f64(v).expect("finite coefficient")
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn pivot_tol() -> Self {
        Zero::zero()
    }
    fn feas_tol() -> Self {
        Zero::zero()
    }
    fn dual_tol() -> Self {
        Zero::zero()
    }
}

type RunOutput<T> = (LpStatus, Vec<T>, T, Option<Basis>, usize);

/// Working state. Variables `0..n` are structurals; `n + r` is the row
/// variable `s_r = a_r · x`, so the constraint matrix is `[A | -I]`.
struct Simplex<T: Scalar> {
    n: usize,
    m: usize,
    a: Vec<Vec<T>>,
    cost: Vec<T>,
    lo: Vec<Option<T>>,
    up: Vec<Option<T>>,
    status: Vec<VarStatus>,
    head: Vec<usize>,
    binv: Vec<Vec<T>>,
    z: Vec<T>,
    d: Vec<T>,
}

impl<T: Scalar> Simplex<T> {
    fn run(model: &LpModel, warm: Option<&Basis>) -> Result<RunOutput<T>> {
        let mut s = Simplex::build(model);
        let warmed = warm.map(|b| s.install(b)).unwrap_or(false);
        if !warmed {
            s.cold_start();
        }
        let pivots = s.iterate()?;
        let status = if s.primal_infeasible_row().is_some() {
            LpStatus::Infeasible
        } else {
            LpStatus::Optimal
        };
        let x: Vec<T> = s.z[..s.n].to_vec();
        let obj = (0..s.n).fold(T::zero(), |acc, j| acc.add(&s.cost[j].mul(&s.z[j])));
        let basis = Basis {
            columns: s.status[..s.n].to_vec(),
            rows: s.status[s.n..].to_vec(),
        };
        if status == LpStatus::Infeasible {
            return Ok((status, x, obj, None, pivots));
        }
        Ok((status, x, obj, Some(basis), pivots))
    }

    fn build(model: &LpModel) -> Self {
        let n = model.columns();
        let m = model.rows.len();
        let mut a = vec![vec![T::zero(); n]; m];
        for (r, row) in model.rows.iter().enumerate() {
            for &(j, v) in &row.coeffs {
                a[r][j] = a[r][j].add(&T::from_f64_exact(v));
            }
        }
        let mut cost: Vec<T> = model.objective.iter().map(|&c| T::from_f64_exact(c)).collect();
        cost.extend((0..m).map(|_| T::zero()));
        let mut lo: Vec<Option<T>> = model.lower.iter().map(|&v| Some(T::from_f64_exact(v))).collect();
        let mut up: Vec<Option<T>> = model.upper.iter().map(|&v| Some(T::from_f64_exact(v))).collect();
        for row in &model.rows {
            let b = T::from_f64_exact(row.rhs);
            let (l, u) = match row.sense {
                Sense::Le => (None, Some(b)),
                Sense::Ge => (Some(b), None),
                Sense::Eq => (Some(b.clone()), Some(b)),
            };
            lo.push(l);
            up.push(u);
        }
        Simplex {
            n,
            m,
            a,
            cost,
            lo,
            up,
            status: vec![VarStatus::AtLower; n + m],
            head: Vec::new(),
            binv: Vec::new(),
            z: vec![T::zero(); n + m],
            d: vec![T::zero(); n + m],
        }
    }

    fn column(&self, j: usize, r: usize) -> T {
        if j < self.n {
            self.a[r][j].clone()
        } else if j - self.n == r {
            T::one().neg()
        } else {
            T::zero()
        }
    }

    fn cold_start(&mut self) {
        for j in 0..self.n {
            self.status[j] = if self.cost[j] > T::zero() {
                VarStatus::AtUpper
            } else {
                VarStatus::AtLower
            };
        }
        for r in 0..self.m {
            self.status[self.n + r] = VarStatus::Basic;
        }
        self.head = (0..self.m).map(|r| self.n + r).collect();
        self.binv = (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|k| if i == k { T::one().neg() } else { T::zero() })
                    .collect()
            })
            .collect();
        self.refresh();
    }

    /// Installs a previous basis. Rows beyond the stored ones get basic
    /// slacks. Returns false if the basis is unusable.
    fn install(&mut self, b: &Basis) -> bool {
        if b.columns.len() != self.n || b.rows.len() > self.m {
            return false;
        }
        let mut status = b.columns.clone();
        status.extend(b.rows.iter().cloned());
        status.extend((b.rows.len()..self.m).map(|_| VarStatus::Basic));
        let head: Vec<usize> = (0..self.n + self.m)
            .filter(|&j| status[j] == VarStatus::Basic)
            .collect();
        if head.len() != self.m {
            return false;
        }
        for (j, st) in status.iter_mut().enumerate() {
            let ok = match *st {
                VarStatus::Basic => true,
                VarStatus::AtLower => self.lo[j].is_some(),
                VarStatus::AtUpper => self.up[j].is_some(),
            };
            if !ok {
                *st = if self.lo[j].is_some() {
                    VarStatus::AtLower
                } else if self.up[j].is_some() {
                    VarStatus::AtUpper
                } else {
                    return false;
                };
            }
        }
        self.status = status;
        self.head = head;
        if !self.refactor() {
            return false;
        }
        self.refresh();
        self.repair_dual()
    }

    /// Gauss-Jordan inversion of the basis matrix.
    fn refactor(&mut self) -> bool {
        let m = self.m;
        let mut mat: Vec<Vec<T>> = (0..m)
            .map(|r| self.head.iter().map(|&j| self.column(j, r)).collect())
            .collect();
        let mut inv: Vec<Vec<T>> = (0..m)
            .map(|i| (0..m).map(|k| if i == k { T::one() } else { T::zero() }).collect())
            .collect();
        for col in 0..m {
            let mut best = None;
            let mut best_abs = T::pivot_tol();
            for (r, row) in mat.iter().enumerate().skip(col) {
                let v = row[col].abs();
                if v > best_abs {
                    best_abs = v;
                    best = Some(r);
                }
            }
            let Some(pr) = best else { return false };
            mat.swap(col, pr);
            inv.swap(col, pr);
            let piv = mat[col][col].clone();
            for k in 0..m {
                mat[col][k] = mat[col][k].div(&piv);
                inv[col][k] = inv[col][k].div(&piv);
            }
            for r in 0..m {
                if r == col || mat[r][col].is_zero_val() {
                    continue;
                }
                let f = mat[r][col].clone();
                for k in 0..m {
                    let t = mat[col][k].mul(&f);
                    mat[r][k] = mat[r][k].sub(&t);
                    let t = inv[col][k].mul(&f);
                    inv[r][k] = inv[r][k].sub(&t);
                }
            }
        }
        // mat·B = I after elimination on rows of B, so inv = B^{-1}.
        self.binv = inv;
        true
    }

    fn nonbasic_value(&self, j: usize) -> T {
        match self.status[j] {
            VarStatus::AtLower => self.lo[j].clone().expect("finite lower"),
            VarStatus::AtUpper => self.up[j].clone().expect("finite upper"),
            VarStatus::Basic => unreachable!(),
        }
    }

    /// Recomputes primal values and reduced costs from the current inverse.
    fn refresh(&mut self) {
        let (n, m) = (self.n, self.m);
        for j in 0..n + m {
            if self.status[j] != VarStatus::Basic {
                self.z[j] = self.nonbasic_value(j);
            }
        }
        // rhs = -N z_N
        let mut rhs = vec![T::zero(); m];
        for j in 0..n {
            if self.status[j] != VarStatus::Basic && !self.z[j].is_zero_val() {
                for (r, v) in rhs.iter_mut().enumerate() {
                    if !self.a[r][j].is_zero_val() {
                        *v = v.sub(&self.a[r][j].mul(&self.z[j]));
                    }
                }
            }
        }
        for r in 0..m {
            let j = n + r;
            if self.status[j] != VarStatus::Basic && !self.z[j].is_zero_val() {
                rhs[r] = rhs[r].add(&self.z[j]);
            }
        }
        for i in 0..m {
            let mut v = T::zero();
            for (k, rk) in rhs.iter().enumerate() {
                if !rk.is_zero_val() && !self.binv[i][k].is_zero_val() {
                    v = v.add(&self.binv[i][k].mul(rk));
                }
            }
            self.z[self.head[i]] = v;
        }
        // y = c_B B^{-1}; d_j = c_j - y M_j
        let mut y = vec![T::zero(); m];
        for (i, &h) in self.head.iter().enumerate() {
            if self.cost[h].is_zero_val() {
                continue;
            }
            for k in 0..m {
                if !self.binv[i][k].is_zero_val() {
                    y[k] = y[k].add(&self.cost[h].mul(&self.binv[i][k]));
                }
            }
        }
        for j in 0..n + m {
            if self.status[j] == VarStatus::Basic {
                self.d[j] = T::zero();
                continue;
            }
            let ym = if j < n {
                (0..m).fold(T::zero(), |acc, r| {
                    if self.a[r][j].is_zero_val() || y[r].is_zero_val() {
                        acc
                    } else {
                        acc.add(&y[r].mul(&self.a[r][j]))
                    }
                })
            } else {
                y[j - n].neg()
            };
            self.d[j] = self.cost[j].sub(&ym);
        }
    }

    /// Moves boxed nonbasics to the bound matching their reduced cost.
    /// Returns false if a one-sided nonbasic is dual infeasible.
    fn repair_dual(&mut self) -> bool {
        let tol = T::dual_tol();
        let mut flipped = false;
        for j in 0..self.n + self.m {
            let st = self.status[j];
            if st == VarStatus::Basic {
                continue;
            }
            let wrong = match st {
                VarStatus::AtLower => self.d[j] > tol,
                VarStatus::AtUpper => self.d[j] < tol.neg(),
                VarStatus::Basic => false,
            };
            if !wrong || self.is_fixed(j) {
                continue;
            }
            let target = if st == VarStatus::AtLower {
                VarStatus::AtUpper
            } else {
                VarStatus::AtLower
            };
            let ok = match target {
                VarStatus::AtUpper => self.up[j].is_some(),
                _ => self.lo[j].is_some(),
            };
            if !ok {
                return false;
            }
            self.status[j] = target;
            flipped = true;
        }
        if flipped {
            self.refresh();
        }
        true
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!((&self.lo[j], &self.up[j]), (Some(l), Some(u)) if l == u)
    }

    /// Basic position with the largest bound violation, or the lowest
    /// variable index among violated ones in Bland mode.
    fn choose_leaving(&self, bland: bool) -> Option<(usize, bool)> {
        let tol = T::feas_tol();
        let mut best: Option<(usize, bool, T)> = None;
        for (r, &h) in self.head.iter().enumerate() {
            let below = self.lo[h].as_ref().map(|l| l.sub(&self.z[h]));
            let above = self.up[h].as_ref().map(|u| self.z[h].sub(u));
            let cand = match (below, above) {
                (Some(b), _) if b > tol => Some((b, true)),
                (_, Some(a)) if a > tol => Some((a, false)),
                _ => None,
            };
            if let Some((viol, to_lower)) = cand {
                let better = match &best {
                    None => true,
                    Some((br, _, bv)) => {
                        if bland {
                            h < self.head[*br]
                        } else {
                            viol > *bv
                        }
                    }
                };
                if better {
                    best = Some((r, to_lower, viol));
                }
            }
        }
        best.map(|(r, t, _)| (r, t))
    }

    fn primal_infeasible_row(&self) -> Option<usize> {
        self.choose_leaving(false).map(|(r, _)| r)
    }

    fn iterate(&mut self) -> Result<usize> {
        let limit = 50 * (self.n + self.m) + 10_000;
        let mut pivots = 0;
        let mut degenerate_run = 0;
        let mut bland = false;
        let mut since_refactor = 0;
        loop {
            let Some((r, to_lower)) = self.choose_leaving(bland) else {
                if !T::EXACT && since_refactor > 0 {
                    // confirm optimality on a fresh factorisation
                    if self.refactor() {
                        self.refresh();
                        since_refactor = 0;
                        if self.choose_leaving(bland).is_some() {
                            continue;
                        }
                    }
                }
                return Ok(pivots);
            };
            if pivots >= limit {
                return Err(Error::IterationLimit(pivots));
            }
            // alpha_j = (row r of B^{-1}) · M_j
            let rho = self.binv[r].clone();
            let ptol = T::pivot_tol();
            let mut best: Option<(usize, T, T)> = None; // (j, ratio, |alpha|)
            for j in 0..self.n + self.m {
                let st = self.status[j];
                if st == VarStatus::Basic || self.is_fixed(j) {
                    continue;
                }
                let alpha = if j < self.n {
                    (0..self.m).fold(T::zero(), |acc, k| {
                        if rho[k].is_zero_val() || self.a[k][j].is_zero_val() {
                            acc
                        } else {
                            acc.add(&rho[k].mul(&self.a[k][j]))
                        }
                    })
                } else {
                    rho[j - self.n].neg()
                };
                let pos = alpha > ptol;
                let neg = alpha < ptol.neg();
                let eligible = match (to_lower, st) {
                    (true, VarStatus::AtLower) => neg,
                    (true, VarStatus::AtUpper) => pos,
                    (false, VarStatus::AtLower) => pos,
                    (false, VarStatus::AtUpper) => neg,
                    _ => false,
                };
                if !eligible {
                    continue;
                }
                let aa = alpha.abs();
                let ratio = self.d[j].abs().div(&aa);
                let better = match &best {
                    None => true,
                    Some((bj, br, ba)) => {
                        if ratio < *br {
                            true
                        } else if ratio == *br {
                            if bland {
                                j < *bj
                            } else {
                                aa > *ba
                            }
                        } else {
                            false
                        }
                    }
                };
                if better {
                    best = Some((j, ratio, aa));
                }
            }
            let Some((q, ratio, _)) = best else {
                return Ok(pivots);
            };
            if ratio.is_zero_val() || ratio < T::dual_tol() {
                degenerate_run += 1;
                if degenerate_run >= BLAND_AFTER {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            // entering column u = B^{-1} M_q
            let u: Vec<T> = (0..self.m)
                .map(|i| {
                    if q < self.n {
                        (0..self.m).fold(T::zero(), |acc, k| {
                            if self.binv[i][k].is_zero_val() || self.a[k][q].is_zero_val() {
                                acc
                            } else {
                                acc.add(&self.binv[i][k].mul(&self.a[k][q]))
                            }
                        })
                    } else {
                        self.binv[i][q - self.n].neg()
                    }
                })
                .collect();
            let leaving = self.head[r];
            self.status[leaving] = if to_lower {
                VarStatus::AtLower
            } else {
                VarStatus::AtUpper
            };
            self.status[q] = VarStatus::Basic;
            self.head[r] = q;
            let piv = u[r].clone();
            for k in 0..self.m {
                self.binv[r][k] = self.binv[r][k].div(&piv);
            }
            let prow = self.binv[r].clone();
            for i in 0..self.m {
                if i == r || u[i].is_zero_val() {
                    continue;
                }
                for k in 0..self.m {
                    if !prow[k].is_zero_val() {
                        let t = u[i].mul(&prow[k]);
                        self.binv[i][k] = self.binv[i][k].sub(&t);
                    }
                }
            }
            pivots += 1;
            since_refactor += 1;
            if !T::EXACT && since_refactor >= REFACTOR_EVERY {
                if !self.refactor() {
                    return Err(Error::Model("singular basis during refactorisation".into()));
                }
                since_refactor = 0;
            }
            self.refresh();
            if !T::EXACT {
                self.repair_dual();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_box() {
        let m = LpModel::new(vec![1.0], vec![0.0], vec![1.0]);
        let s = lp_solve(&m, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.x, vec![1.0]);
        assert_eq!(s.objective, 1.0);
    }

    #[test]
    fn small_lp() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let mut m = LpModel::new(vec![3.0, 2.0], vec![0.0, 0.0], vec![3.0, 10.0]);
        m.add_row(Row::new(vec![(0, 1.0), (1, 1.0)], Sense::Le, 4.0));
        m.add_row(Row::new(vec![(0, 1.0), (1, 3.0)], Sense::Le, 6.0));
        let s = lp_solve(&m, None).unwrap();
        assert!((s.objective - 11.0).abs() < 1e-9);
        let e = lp_solve_with(&m, None, LpOptions { exact: true }).unwrap();
        assert_eq!(e.exact_objective.unwrap(), BigRational::from_integer(11.into()));
    }

    #[test]
    fn infeasible() {
        let mut m = LpModel::new(vec![1.0], vec![0.0], vec![1.0]);
        m.add_row(Row::new(vec![(0, 1.0)], Sense::Ge, 2.0));
        assert_eq!(lp_solve(&m, None).unwrap().status, LpStatus::Infeasible);
        let mut e = LpModel::new(vec![1.0, 1.0], vec![0.0; 2], vec![1.0; 2]);
        e.add_row(Row::new(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 1.5));
        let s = lp_solve(&e, None).unwrap();
        assert!((s.objective - 1.5).abs() < 1e-9);
    }

    #[test]
    fn warm_start_after_cut() {
        // 2-cycle: x_ab + x_ba <= 1 cut lowers the bound from 9 to 5
        let mut m = LpModel::new(vec![5.0, 4.0], vec![0.0; 2], vec![1.0; 2]);
        let s0 = lp_solve(&m, None).unwrap();
        assert_eq!(s0.objective, 9.0);
        m.add_row(Row::new(vec![(0, 1.0), (1, 1.0)], Sense::Le, 1.0));
        let s1 = lp_solve(&m, s0.basis.as_ref()).unwrap();
        assert_eq!(s1.objective, 5.0);
        let cold = lp_solve(&m, None).unwrap();
        assert_eq!(cold.objective, s1.objective);
    }
}
