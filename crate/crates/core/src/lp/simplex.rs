//! Dense two-phase primal simplex with Bland's rule.
//!
//! Generic over [`Scalar`]: with [`Rational`](crate::Rational) every pivot is
//! exact and Bland's rule guarantees termination on the heavily degenerate
//! 0/1 systems built by [`super::program`].

use serde::Serialize;

use crate::scalar::Scalar;

use super::LinearProgram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Proof that `A x = b, x >= 0` has no solution: a vector `y` with
/// `yᵀA <= 0` and `yᵀb > 0`, plus the positive phase-one optimum it certifies.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityCertificate<T> {
    pub farkas: Vec<T>,
    pub phase_one_value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpSolution<T> {
    Optimal {
        value: T,
        /// Primal point attaining `value`, one entry per program variable.
        witness: Vec<T>,
        /// Dual multipliers, one per equality row; `bᵀdual == value`.
        dual: Vec<T>,
    },
    Infeasible(InfeasibilityCertificate<T>),
    Unbounded,
}

impl<T: Scalar> LpSolution<T> {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible(_) => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[T]> {
        match self {
            LpSolution::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sense {
    Min,
    Max,
}

/// Tableau after phase one, reusable for several phase-two objectives.
#[derive(Clone)]
struct Tableau<T> {
    /// `rows[i]` holds `n + m` coefficients followed by the right-hand side.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    /// Sign applied to each original row so that its rhs is nonnegative.
    flip: Vec<bool>,
    /// Original row index of each tableau row (redundant rows are dropped).
    origin: Vec<usize>,
    n: usize,
    m: usize,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.n + self.m
    }

    fn pivot(&mut self, cost: &mut [T], cost_rhs: &mut T, pr: usize, pc: usize) {
        let w = self.width();
        let piv = self.rows[pr][pc].clone();
        if !piv.is_one() {
            for x in self.rows[pr].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / piv.clone();
                }
            }
        }
        let support: Vec<usize> = (0..=w).filter(|&k| !self.rows[pr][k].is_zero()).collect();
        let prow = self.rows[pr].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for &k in &support {
                row[k] = row[k].clone() - f.clone() * prow[k].clone();
            }
            if !T::EXACT {
                row[pc] = T::zero();
            }
        }
        if !cost[pc].is_zero() {
            let f = cost[pc].clone();
            for &k in &support {
                if k == w {
                    *cost_rhs = cost_rhs.clone() - f.clone() * prow[k].clone();
                } else {
                    cost[k] = cost[k].clone() - f.clone() * prow[k].clone();
                }
            }
            if !T::EXACT {
                cost[pc] = T::zero();
            }
        }
        self.basis[pr] = pc;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns false on unboundedness.
    fn optimize(&mut self, cost: &mut [T], cost_rhs: &mut T, allowed: usize) -> bool {
        let eps = T::lp_eps();
        let neg_eps = -eps.clone();
        let w = self.width();
        loop {
            let Some(pc) = (0..allowed).find(|&j| cost[j] < neg_eps) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[pc] > eps {
                    let ratio = row[w].clone() / row[pc].clone();
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            match best {
                Some((pr, _)) => self.pivot(cost, cost_rhs, pr, pc),
                None => return false,
            }
        }
    }
}

/// Phase one. On success the tableau has a feasible basis of original columns.
fn phase_one<T: Scalar>(lp: &LinearProgram<T>) -> Result<Tableau<T>, InfeasibilityCertificate<T>> {
    let n = lp.num_vars;
    let m = lp.eq_rhs.len();
    let mut flip = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        flip[i] = lp.eq_rhs[i] < T::zero();
        let sign = if flip[i] { -T::one() } else { T::one() };
        let mut row = Vec::with_capacity(n + m + 1);
        row.extend(lp.eq_matrix[i].iter().map(|a| a.clone() * sign.clone()));
        row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
        row.push(lp.eq_rhs[i].clone() * sign);
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
        flip,
        origin: (0..m).collect(),
        n,
        m,
    };
    let w = n + m;
    let mut cost = vec![T::zero(); w];
    let mut cost_rhs = T::zero();
    for row in &tab.rows {
        for j in 0..n {
            if !row[j].is_zero() {
                cost[j] = cost[j].clone() - row[j].clone();
            }
        }
        cost_rhs = cost_rhs - row[w].clone();
    }
    tab.optimize(&mut cost, &mut cost_rhs, w);
    let phase_one_value = -cost_rhs;
    if phase_one_value > T::lp_eps() {
        // y_i = 1 - reduced cost of artificial i, mapped back through row flips.
        let farkas = (0..m)
            .map(|i| {
                let y = T::one() - cost[n + i].clone();
                if tab.flip[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return Err(InfeasibilityCertificate {
            farkas,
            phase_one_value,
        });
    }
    // Drive remaining artificials out of the basis; drop rows that cannot be.
    let eps = T::lp_eps();
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| tab.rows[r][j].abs() > eps) {
                Some(pc) => {
                    let mut dummy_cost = vec![T::zero(); w];
                    let mut dummy_rhs = T::zero();
                    tab.pivot(&mut dummy_cost, &mut dummy_rhs, r, pc);
                }
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    tab.origin.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    Ok(tab)
}

fn phase_two<T: Scalar>(mut tab: Tableau<T>, objective: &[T], sense: Sense) -> LpSolution<T> {
    let n = tab.n;
    let w = tab.width();
    let c: Vec<T> = objective
        .iter()
        .map(|x| match sense {
            Sense::Min => x.clone(),
            Sense::Max => -x.clone(),
        })
        .collect();
    let mut cost: Vec<T> = (0..w).map(|j| if j < n { c[j].clone() } else { T::zero() }).collect();
    let mut cost_rhs = T::zero();
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        let cb = if b < n { c[b].clone() } else { T::zero() };
        if cb.is_zero() {
            continue;
        }
        for k in 0..w {
            if !row[k].is_zero() {
                cost[k] = cost[k].clone() - cb.clone() * row[k].clone();
            }
        }
        cost_rhs = cost_rhs - cb * row[w].clone();
    }
    if !tab.optimize(&mut cost, &mut cost_rhs, n) {
        return LpSolution::Unbounded;
    }
    let mut witness = vec![T::zero(); n];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        if b < n {
            witness[b] = row[w].clone();
        }
    }
    let mut value = -cost_rhs;
    // Dual of the min problem: y_i = -(reduced cost of artificial i).
    let mut dual = vec![T::zero(); tab.m];
    for &orig in &tab.origin {
        let y = -cost[n + orig].clone();
        dual[orig] = if tab.flip[orig] { -y } else { y };
    }
    if sense == Sense::Max {
        value = -value;
        for y in dual.iter_mut() {
            *y = -y.clone();
        }
    }
    LpSolution::Optimal {
        value,
        witness,
        dual,
    }
}

pub fn solve_min<T: Scalar>(lp: &LinearProgram<T>) -> LpSolution<T> {
    match phase_one(lp) {
        Ok(tab) => phase_two(tab, &lp.objective, Sense::Min),
        Err(cert) => LpSolution::Infeasible(cert),
    }
}

pub fn solve_max<T: Scalar>(lp: &LinearProgram<T>) -> LpSolution<T> {
    match phase_one(lp) {
        Ok(tab) => phase_two(tab, &lp.objective, Sense::Max),
        Err(cert) => LpSolution::Infeasible(cert),
    }
}

/// Minimum and maximum sharing a single phase one.
pub fn solve_min_max<T: Scalar>(lp: &LinearProgram<T>) -> (LpSolution<T>, LpSolution<T>) {
    match phase_one(lp) {
        Ok(tab) => (
            phase_two(tab.clone(), &lp.objective, Sense::Min),
            phase_two(tab, &lp.objective, Sense::Max),
        ),
        Err(cert) => (LpSolution::Infeasible(cert.clone()), LpSolution::Infeasible(cert)),
    }
}
