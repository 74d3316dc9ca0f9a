//! Construction of the harm-rate program and the `c2` reparameterisation.
//!
//! Variables are the 64 cells `q[i][j]` at column `4 * i + j`, followed by the
//! slacks `α` (for `HR(T→S) <= c1`), `β` and `γ` (for `HR(S→Y|T=t) <= c2`),
//! and optionally `δ` (for causal necessity `<= c3`).

use crate::error::Result;
use crate::observed::ObservedDist;
use crate::potential::{
    check_threshold, observed_cell, PotentialTable, HARM_CELLS, SURROGATE_HARM_T0, SURROGATE_HARM_T1,
};
use crate::scalar::Scalar;

use super::LinearProgram;

pub const NUM_CELLS: usize = 64;
pub const ALPHA: usize = 64;
pub const BETA: usize = 65;
pub const GAMMA: usize = 66;
pub const DELTA: usize = 67;

/// The `(t, y, s)` cells whose probabilities are matched exactly. The two
/// remaining cells per arm follow from the total-mass row.
pub const OBSERVED_ROWS: [(usize, usize, usize); 6] =
    [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0)];

/// Cells with `S0 = S1` whose observed outcome differs between arms.
pub const CAUSAL_NECESSITY_CELLS: [(usize, [usize; 8]); 2] =
    [(0, [2, 3, 6, 7, 8, 9, 12, 13]), (3, [1, 3, 4, 6, 9, 11, 12, 14])];

fn col(i: usize, j: usize) -> usize {
    4 * i + j
}

/// Builds the program with 10 rows and 67 columns.
pub fn build_program<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c2: &T) -> Result<LinearProgram<T>> {
    obs.validate()?;
    check_threshold("c1", c1)?;
    check_threshold("c2", c2)?;
    let n = NUM_CELLS + 3;
    let mut rows = Vec::with_capacity(10);
    let mut rhs = Vec::with_capacity(10);
    for &(t, y, s) in &OBSERVED_ROWS {
        let mut row = vec![T::zero(); n];
        for i in 0..16 {
            for j in 0..4 {
                if observed_cell(i, j, t) == (s, y) {
                    row[col(i, j)] = T::one();
                }
            }
        }
        rows.push(row);
        rhs.push(obs.p(t, y, s));
    }
    let mut total = vec![T::one(); NUM_CELLS];
    total.extend([T::zero(), T::zero(), T::zero()]);
    rows.push(total);
    rhs.push(T::one());

    let mut slack_row = |cells: &mut dyn Iterator<Item = usize>, slack: usize, bound: &T| {
        let mut row = vec![T::zero(); n];
        for c in cells {
            row[c] = T::one();
        }
        row[slack] = T::one();
        rows.push(row);
        rhs.push(bound.clone());
    };
    slack_row(&mut (0..16).map(|i| col(i, 2)), ALPHA, c1);
    slack_row(&mut SURROGATE_HARM_T0.iter().flat_map(|&i| (0..4).map(move |j| col(i, j))), BETA, c2);
    slack_row(&mut SURROGATE_HARM_T1.iter().flat_map(|&i| (0..4).map(move |j| col(i, j))), GAMMA, c2);

    let mut objective = vec![T::zero(); n];
    for (j, cells) in HARM_CELLS.iter().enumerate() {
        for &i in cells {
            objective[col(i, j)] = T::one();
        }
    }
    Ok(LinearProgram {
        num_vars: n,
        objective,
        eq_matrix: rows,
        eq_rhs: rhs,
    })
}

/// Appends the slack `δ` and the row `Σ (causal-necessity cells) + δ = c3`.
pub fn add_causal_necessity<T: Scalar>(mut lp: LinearProgram<T>, c3: &T) -> Result<LinearProgram<T>> {
    check_threshold("c3", c3)?;
    for row in lp.eq_matrix.iter_mut() {
        row.push(T::zero());
    }
    lp.objective.push(T::zero());
    lp.num_vars += 1;
    let mut row = vec![T::zero(); lp.num_vars];
    for (j, cells) in CAUSAL_NECESSITY_CELLS {
        for i in cells {
            row[col(i, j)] = T::one();
        }
    }
    row[lp.num_vars - 1] = T::one();
    lp.eq_matrix.push(row);
    lp.eq_rhs.push(c3.clone());
    Ok(lp)
}

/// Full variable vector for `table`: its 64 cells and the slacks implied by
/// the thresholds. Slacks are negative when the table breaks a threshold.
pub fn table_vector<T: Scalar>(table: &PotentialTable<T>, c1: &T, c2: &T, c3: Option<&T>) -> Vec<T> {
    let h = table.harm_profile();
    let mut v = table.to_vec();
    v.push(c1.clone() - h.hr_t_s);
    v.push(c2.clone() - h.hr_s_y_t0);
    v.push(c2.clone() - h.hr_s_y_t1);
    if let Some(c3) = c3 {
        v.push(c3.clone() - table.causal_necessity_violation());
    }
    v
}

/// The table formed by the first 64 coordinates of an LP witness.
pub fn witness_table<T: Scalar>(witness: &[T]) -> Result<PotentialTable<T>> {
    PotentialTable::from_slice(&witness[..NUM_CELLS.min(witness.len())])
}

/// Where each cell with `Y00 > Y01` or `Y10 > Y11` sends its mass, per
/// stratum `j`: `(source rows, target row)`.
const C2_MAP: [&[(&[usize], usize)]; 4] = [
    &[(&[8], 12), (&[9], 13), (&[10, 11, 14], 15), (&[2, 6], 3)],
    &[(&[8, 10, 14], 12), (&[2, 6], 0), (&[9, 11], 13)],
    &[(&[8, 9], 1), (&[2, 10, 11], 3), (&[6, 14], 15)],
    &[(&[6, 14], 12), (&[2, 8, 10], 0), (&[9, 11], 1)],
];

/// Moves all mass off the surrogate-harm rows `{2, 6, 8, 9, 10, 11, 14}` onto
/// rows with the same observed outcomes in both arms and the same harm
/// status, so the observed arms, `HR(T→S)` and `HR(T→Y)` are unchanged while
/// `HR(S→Y|T=0) = HR(S→Y|T=1) = 0`.
pub fn c2_invariance_map<T: Scalar>(q: &PotentialTable<T>) -> Result<PotentialTable<T>> {
    let mut out: [[T; 4]; 16] = std::array::from_fn(|i| std::array::from_fn(|j| q.cell(i, j)));
    for (j, moves) in C2_MAP.iter().enumerate() {
        for (sources, target) in moves.iter() {
            for &i in sources.iter() {
                let mass = std::mem::replace(&mut out[i][j], T::zero());
                out[*target][j] = out[*target][j].clone() + mass;
            }
        }
    }
    PotentialTable::new(out)
}
