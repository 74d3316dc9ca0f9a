//! Linear-programming oracle over joint potential-outcome distributions.
//!
//! [`program::build_program`] encodes "all tables consistent with the observed
//! arms and the harm thresholds" as `A x = b, x >= 0`, and the exact simplex in
//! [`simplex`] optimises `HR(T→Y)` over it. The closed forms in
//! [`crate::bounds`] are certified against this oracle.

pub mod program;
pub mod simplex;

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::observed::ObservedDist;
use crate::scalar::{sum, Scalar};

pub use program::{
    add_causal_necessity, build_program, c2_invariance_map, table_vector, witness_table, ALPHA, BETA, DELTA,
    GAMMA, NUM_CELLS,
};
pub use simplex::{solve_max, solve_min, solve_min_max, InfeasibilityCertificate, LpSolution, LpStatus};

/// `min / max objective·x` subject to `eq_matrix · x = eq_rhs`, `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    pub eq_matrix: Vec<Vec<T>>,
    pub eq_rhs: Vec<T>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn num_rows(&self) -> usize {
        self.eq_rhs.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::InvalidParameter(format!(
                "objective has {} entries for {} variables",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.eq_matrix.len() != self.eq_rhs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} constraint rows but {} right-hand sides",
                self.eq_matrix.len(),
                self.eq_rhs.len()
            )));
        }
        if let Some(r) = self.eq_matrix.iter().position(|row| row.len() != self.num_vars) {
            return Err(Error::InvalidParameter(format!("row {r} has the wrong width")));
        }
        Ok(())
    }

    /// True when every constraint coefficient is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.eq_matrix.iter().flatten().all(|a| a.is_zero() || a.is_one())
    }

    /// Rank of the constraint matrix by exact (or pivoted float) elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<T>> = self.eq_matrix.clone();
        let eps = T::lp_eps();
        let mut rank = 0;
        for col in 0..self.num_vars {
            let Some(p) = (rank..m.len()).max_by(|&a, &b| {
                m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
            }) else {
                break;
            };
            if m[p][col].abs() <= eps {
                continue;
            }
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in 0..m.len() {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone() / pivot.clone();
                    for k in col..self.num_vars {
                        let delta = f.clone() * m[rank][k].clone();
                        m[r][k] = m[r][k].clone() - delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        sum(self.objective.iter().zip(x).map(|(c, v)| c.clone() * v.clone()))
    }

    /// Largest `|A x - b|` entry, or `None` if some coordinate is negative
    /// beyond `tol` or the length is wrong.
    pub fn residual(&self, x: &[T], tol: &T) -> Option<T> {
        if x.len() != self.num_vars || x.iter().any(|v| *v < -tol.clone()) {
            return None;
        }
        let mut worst = T::zero();
        for (row, b) in self.eq_matrix.iter().zip(&self.eq_rhs) {
            let lhs = sum(row.iter().zip(x).filter(|(a, _)| !a.is_zero()).map(|(a, v)| a.clone() * v.clone()));
            let d = (lhs - b.clone()).abs();
            if d > worst {
                worst = d;
            }
        }
        Some(worst)
    }

    /// True when `x >= 0` and `A x = b` within `tol`.
    pub fn is_feasible(&self, x: &[T], tol: &T) -> bool {
        self.residual(x, tol).is_some_and(|r| r <= *tol)
    }

    /// Nonzero constraint coefficients as `(row, col, value)`; objective
    /// entries use row label `obj` in [`Self::triplet_listing`].
    pub fn triplets(&self) -> Vec<(usize, usize, T)> {
        let mut out = Vec::new();
        for (r, row) in self.eq_matrix.iter().enumerate() {
            for (c, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    out.push((r, c, a.clone()));
                }
            }
        }
        out
    }

    /// Plain-text triplet listing in the spirit of MPS: a `COLUMNS` section
    /// of `row col coefficient` lines and an `RHS` section.
    pub fn triplet_listing(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "NAME harm_rate_lp");
        let _ = writeln!(s, "ROWS {} COLS {}", self.num_rows(), self.num_vars);
        let _ = writeln!(s, "COLUMNS");
        for (c, a) in self.objective.iter().enumerate() {
            if !a.is_zero() {
                let _ = writeln!(s, "obj {c} {a}");
            }
        }
        for (r, c, a) in self.triplets() {
            let _ = writeln!(s, "r{r} {c} {a}");
        }
        let _ = writeln!(s, "RHS");
        for (r, b) in self.eq_rhs.iter().enumerate() {
            let _ = writeln!(s, "r{r} {b}");
        }
        let _ = writeln!(s, "ENDATA");
        s
    }

    /// Dense tableau: one line per row, coefficients then `| rhs`, with the
    /// objective as the last line.
    pub fn tableau_dump(&self) -> String {
        let mut s = String::new();
        for (row, b) in self.eq_matrix.iter().zip(&self.eq_rhs) {
            let cells: Vec<String> = row.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(s, "{} | {}", cells.join(" "), b);
        }
        let cells: Vec<String> = self.objective.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(s, "{} | obj", cells.join(" "));
        s
    }
}

/// Result of optimising `HR(T→Y)` over every table compatible with the data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleBounds<T> {
    pub status: LpStatus,
    pub min: Option<T>,
    pub max: Option<T>,
}

/// LP minimum and maximum of `HR(T→Y)` given `obs`, `HR(T→S) <= c1`,
/// `HR(S→Y|T=t) <= c2`, and optionally the causal-necessity slack `c3`.
pub fn oracle_bounds<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c2: &T, c3: Option<&T>) -> Result<OracleBounds<T>> {
    let mut lp = build_program(obs, c1, c2)?;
    if let Some(c3) = c3 {
        lp = add_causal_necessity(lp, c3)?;
    }
    let (lo, hi) = solve_min_max(&lp);
    Ok(OracleBounds {
        status: lo.status(),
        min: lo.value().cloned(),
        max: hi.value().cloned(),
    })
}
