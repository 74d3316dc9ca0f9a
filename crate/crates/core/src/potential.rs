//! Joint distributions of potential outcomes and the harm rates and surrogate
//! criteria evaluated directly on them.
//!
//! A [`PotentialTable`] assigns a probability to each of the 64 principal
//! types `(Y00, Y01, Y10, Y11, S0, S1)` of a binary surrogate `S` and binary
//! outcome `Y`, where `Y_ts` is the outcome under treatment `t` and surrogate
//! `s`, and `S_t` the surrogate under treatment `t`. Cells are indexed
//! `q[i][j]` with `i = 8·Y00 + 4·Y01 + 2·Y10 + Y11` and `j = 2·S0 + S1`.
//!
//! [`StrongTable3`] covers a three-level strong surrogate, where the outcome
//! depends on treatment only through `S`: `q[i][j]` with `i = 3·S0 + S1`
//! and `j = 4·Y0 + 2·Y1 + Y2`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::observed::ObservedDist;
use crate::scalar::{approx_eq, sum, Scalar};

pub const BINARY_ENCODING: &str = "i=8*Y00+4*Y01+2*Y10+Y11, j=2*S0+S1";
pub const STRONG3_ENCODING: &str = "i=3*S0+S1, j=4*Y0+2*Y1+Y2";

/// Cells counted by `HR(T→Y) = P(Y_{0S0} = 1, Y_{1S1} = 0)`, per stratum `j`.
pub const HARM_CELLS: [[usize; 4]; 4] = [[8, 9, 12, 13], [8, 10, 12, 14], [4, 5, 12, 13], [4, 6, 12, 14]];
/// Rows `i` with `Y00 = 1, Y01 = 0`: harmed by raising the surrogate under control.
pub const SURROGATE_HARM_T0: [usize; 4] = [8, 9, 10, 11];
/// Rows `i` with `Y10 = 1, Y11 = 0`: harmed by raising the surrogate under treatment.
pub const SURROGATE_HARM_T1: [usize; 4] = [2, 6, 10, 14];

/// Potential outcomes `(Y00, Y01, Y10, Y11)` encoded by row `i`.
pub fn outcomes(i: usize) -> [usize; 4] {
    [(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1]
}

/// Potential surrogates `(S0, S1)` encoded by column `j`.
pub fn surrogates(j: usize) -> [usize; 2] {
    [(j >> 1) & 1, j & 1]
}

/// Observed `(S, Y)` in arm `t` for a unit of principal type `(i, j)`.
pub fn observed_cell(i: usize, j: usize, t: usize) -> (usize, usize) {
    let s = surrogates(j)[t];
    let y = outcomes(i)[2 * t + s];
    (s, y)
}

fn validate_cells<T: Scalar>(cells: impl Iterator<Item = T>) -> Result<()> {
    let mut total = T::zero();
    for (k, q) in cells.enumerate() {
        if q < T::zero() {
            return Err(Error::InvalidTable(format!("cell #{k} = {q} is negative")));
        }
        total = total + q;
    }
    if !approx_eq(&total, &T::one(), &T::default_tol()) {
        return Err(Error::InvalidTable(format!("cells sum to {total}, not 1")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable<T> {
    q: [[T; 4]; 16],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmProfile<T> {
    /// `P(S0 = 1, S1 = 0)`
    pub hr_t_s: T,
    /// `P(Y00 = 1, Y01 = 0)`
    pub hr_s_y_t0: T,
    /// `P(Y10 = 1, Y11 = 0)`
    pub hr_s_y_t1: T,
    /// `P(Y_{0S0} = 1, Y_{1S1} = 0)`
    pub hr_t_y: T,
    /// `E[Y_{1S1}] - E[Y_{0S0}]`
    pub ace_t_y: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParadoxVerdict {
    Manifests,
    Absent,
    PremiseViolated,
}

/// Outcome of a criterion check. Comparisons whose conditioning event has
/// probability zero are treated as satisfied and listed in `vacuous`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionCheck<T> {
    pub holds: bool,
    /// Conditional quantities in the order the criterion compares them.
    pub values: Vec<Option<T>>,
    pub vacuous: Vec<String>,
}

impl<T: Scalar> PotentialTable<T> {
    pub fn new(q: [[T; 4]; 16]) -> Result<Self> {
        validate_cells(q.iter().flatten().cloned())?;
        Ok(PotentialTable { q })
    }

    /// Builds a table from the nonzero cells `(i, j, q_ij)`.
    pub fn from_cells(cells: &[(usize, usize, T)]) -> Result<Self> {
        let mut q: [[T; 4]; 16] = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
        for (i, j, v) in cells {
            if *i >= 16 || *j >= 4 {
                return Err(Error::InvalidTable(format!("cell ({i},{j}) out of range")));
            }
            q[*i][*j] = q[*i][*j].clone() + v.clone();
        }
        Self::new(q)
    }

    /// Unit mass on cell `(i, j)`.
    pub fn point_mass(i: usize, j: usize) -> Result<Self> {
        Self::from_cells(&[(i, j, T::one())])
    }

    pub fn cell(&self, i: usize, j: usize) -> T {
        self.q[i][j].clone()
    }

    pub fn cells(&self) -> &[[T; 4]; 16] {
        &self.q
    }

    /// Row-major `(i, j)` flattening: index `4 * i + j`.
    pub fn to_vec(&self) -> Vec<T> {
        self.q.iter().flatten().cloned().collect()
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        if v.len() != 64 {
            return Err(Error::InvalidTable(format!("expected 64 cells, got {}", v.len())));
        }
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| v[4 * i + j].clone())))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<PotentialTable<U>> {
        PotentialTable::new(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.q[i][j]))))
    }

    fn sum_rows(&self, rows: &[usize]) -> T {
        sum(rows.iter().flat_map(|&i| self.q[i].iter().cloned()))
    }

    pub fn harm_profile(&self) -> HarmProfile<T> {
        let hr_t_s = sum((0..16).map(|i| self.q[i][2].clone()));
        let hr_t_y = sum(
            HARM_CELLS
                .iter()
                .enumerate()
                .flat_map(|(j, rows)| rows.iter().map(move |&i| (i, j)))
                .map(|(i, j)| self.q[i][j].clone()),
        );
        let mut ey0 = T::zero();
        let mut ey1 = T::zero();
        for i in 0..16 {
            for j in 0..4 {
                if observed_cell(i, j, 0).1 == 1 {
                    ey0 = ey0 + self.q[i][j].clone();
                }
                if observed_cell(i, j, 1).1 == 1 {
                    ey1 = ey1 + self.q[i][j].clone();
                }
            }
        }
        HarmProfile {
            hr_t_s,
            hr_s_y_t0: self.sum_rows(&SURROGATE_HARM_T0),
            hr_s_y_t1: self.sum_rows(&SURROGATE_HARM_T1),
            hr_t_y,
            ace_t_y: ey1 - ey0,
        }
    }

    /// The arm-wise `P(Y, S | T)` implied by consistency.
    pub fn induced_observed(&self) -> ObservedDist<T> {
        let mut p: [[[T; 2]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| T::zero())));
        for i in 0..16 {
            for j in 0..4 {
                if self.q[i][j].is_zero() {
                    continue;
                }
                for (t, arm) in p.iter_mut().enumerate() {
                    let (s, y) = observed_cell(i, j, t);
                    arm[y][s] = arm[y][s].clone() + self.q[i][j].clone();
                }
            }
        }
        ObservedDist::new_unchecked(p)
    }

    /// Individual surrogate paradox with thresholds `c1` (treatment harm on
    /// the surrogate) and `c2` (surrogate harm on the outcome).
    pub fn detect_paradox(&self, c1: &T, c2: &T) -> Result<ParadoxVerdict> {
        check_unit("c1", c1)?;
        check_unit("c2", c2)?;
        if *c2 > T::one() - c1.clone() {
            return Err(Error::Threshold {
                name: "c2",
                value: c2.to_string(),
                reason: "must satisfy c2 <= 1 - c1",
            });
        }
        let h = self.harm_profile();
        let surrogate_harm = if h.hr_s_y_t0 > h.hr_s_y_t1 { h.hr_s_y_t0 } else { h.hr_s_y_t1 };
        Ok(if h.hr_t_s > *c1 || surrogate_harm > *c2 {
            ParadoxVerdict::PremiseViolated
        } else if h.hr_t_y > c1.clone() + c2.clone() {
            ParadoxVerdict::Manifests
        } else {
            ParadoxVerdict::Absent
        })
    }

    /// Paradox with a single threshold: `HR(T→S) <= c1` yet `HR(T→Y) > c1`.
    pub fn detect_paradox_c1_only(&self, c1: &T) -> Result<ParadoxVerdict> {
        check_unit("c1", c1)?;
        let h = self.harm_profile();
        Ok(if h.hr_t_s > *c1 {
            ParadoxVerdict::PremiseViolated
        } else if h.hr_t_y > *c1 {
            ParadoxVerdict::Manifests
        } else {
            ParadoxVerdict::Absent
        })
    }

    /// `T ⊥ Y | S`. Values are `P(Y=1|T=0,S=0), P(Y=1|T=1,S=0),
    /// P(Y=1|T=0,S=1), P(Y=1|T=1,S=1)`.
    pub fn check_prentice(&self, tol: &T) -> CriterionCheck<T> {
        let obs = self.induced_observed();
        let mut values = Vec::with_capacity(4);
        let mut vacuous = Vec::new();
        let mut holds = true;
        for s in 0..2 {
            let f0 = obs.outcome_mean(s, 0);
            let f1 = obs.outcome_mean(s, 1);
            match (&f0, &f1) {
                (Some(a), Some(b)) => holds &= approx_eq(a, b, tol),
                _ => vacuous.push(format!("P(S={s}|T=t) = 0 in some arm")),
            }
            values.push(f0);
            values.push(f1);
        }
        CriterionCheck { holds, values, vacuous }
    }

    /// `Y_{T=0}` and `Y_{T=1}` equally distributed within each stratum
    /// `S0 = S1 = s`. Values are `P(Y_{T=0}=1|s=0), P(Y_{T=1}=1|s=0),
    /// P(Y_{T=0}=1|s=1), P(Y_{T=1}=1|s=1)`.
    pub fn check_principal(&self, tol: &T) -> CriterionCheck<T> {
        let mut values = Vec::with_capacity(4);
        let mut vacuous = Vec::new();
        let mut holds = true;
        for (s, j) in [(0usize, 0usize), (1, 3)] {
            let mass = sum((0..16).map(|i| self.q[i][j].clone()));
            if mass.is_zero() {
                vacuous.push(format!("stratum S0=S1={s} is empty"));
                values.extend([None, None]);
                continue;
            }
            let y0 = sum((0..16).filter(|&i| outcomes(i)[s] == 1).map(|i| self.q[i][j].clone()));
            let y1 = sum((0..16).filter(|&i| outcomes(i)[2 + s] == 1).map(|i| self.q[i][j].clone()));
            let (a, b) = (y0 / mass.clone(), y1 / mass);
            holds &= approx_eq(&a, &b, tol);
            values.extend([Some(a), Some(b)]);
        }
        CriterionCheck { holds, values, vacuous }
    }

    /// `P(Y_{T=1,S1} = 0, Y_{T=0,S1} = 1)`: units whose direct effect of
    /// treatment on the outcome, holding the treated surrogate, is negative.
    pub fn negative_direct_effect(&self) -> T {
        let mut total = T::zero();
        for i in 0..16 {
            for j in 0..4 {
                let s1 = surrogates(j)[1];
                let y = outcomes(i);
                if y[2 + s1] == 0 && y[s1] == 1 {
                    total = total + self.q[i][j].clone();
                }
            }
        }
        total
    }

    /// `P(S0 = S1, Y_{1S1} != Y_{0S0})`
    pub fn causal_necessity_violation(&self) -> T {
        let mut total = T::zero();
        for j in [0, 3] {
            for i in 0..16 {
                if observed_cell(i, j, 0).1 != observed_cell(i, j, 1).1 {
                    total = total + self.q[i][j].clone();
                }
            }
        }
        total
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cells": self.q.iter().map(|row| row.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "encoding": BINARY_ENCODING,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = parse_cells::<T>(v, BINARY_ENCODING, 16, 4)?;
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone())))
    }
}

fn check_unit<T: Scalar>(name: &'static str, c: &T) -> Result<()> {
    if *c < T::zero() || *c > T::one() {
        return Err(Error::Threshold {
            name,
            value: c.to_string(),
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

pub(crate) fn check_threshold<T: Scalar>(name: &'static str, c: &T) -> Result<()> {
    check_unit(name, c)
}

fn parse_cells<T: Scalar>(v: &serde_json::Value, encoding: &str, rows: usize, cols: usize) -> Result<Vec<Vec<T>>> {
    let bad = |m: String| Error::parse("table JSON", m);
    let enc = v
        .get("encoding")
        .and_then(|e| e.as_str())
        .ok_or_else(|| bad("missing `encoding` string".into()))?;
    if enc != encoding {
        return Err(bad(format!("encoding `{enc}` does not match `{encoding}`")));
    }
    let cells = v
        .get("cells")
        .and_then(|c| c.as_array())
        .ok_or_else(|| bad("missing `cells` array".into()))?;
    if cells.len() != rows {
        return Err(bad(format!("expected {rows} rows, got {}", cells.len())));
    }
    cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .filter(|r| r.len() == cols)
                .ok_or_else(|| bad(format!("row {i} must have {cols} entries")))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| T::from_json(x).ok_or_else(|| bad(format!("cell ({i},{j}) is not a number"))))
                .collect()
        })
        .collect()
}

impl<T: Scalar> Serialize for PotentialTable<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for PotentialTable<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Wu et al.: `f(s,t) = E(Y|S=s,T=t)` increasing in `s` for some arm, and
/// `f(s,1) >= f(s,0)` for every `s`. Values are `f(1,1), f(1,0), f(0,1), f(0,0)`.
pub fn check_wu<T: Scalar>(obs: &ObservedDist<T>, tol: &T) -> CriterionCheck<T> {
    let f = |s, t| obs.outcome_mean(s, t);
    let mut vacuous = Vec::new();
    let mut ge = |a: Option<T>, b: Option<T>, what: &str| match (a, b) {
        (Some(a), Some(b)) => a >= b - tol.clone(),
        _ => {
            vacuous.push(what.to_string());
            true
        }
    };
    let monotone = ge(f(1, 1), f(0, 1), "f(1,1) >= f(0,1)") || ge(f(1, 0), f(0, 0), "f(1,0) >= f(0,0)");
    let dominance = ge(f(0, 1), f(0, 0), "f(0,1) >= f(0,0)") & ge(f(1, 1), f(1, 0), "f(1,1) >= f(1,0)");
    CriterionCheck {
        holds: monotone && dominance,
        values: vec![f(1, 1), f(1, 0), f(0, 1), f(0, 0)],
        vacuous,
    }
}

/// A population split by a binary unmeasured confounder `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureWorld<T> {
    pub weight_w1: T,
    pub table_w0: PotentialTable<T>,
    pub table_w1: PotentialTable<T>,
}

impl<T: Scalar> MixtureWorld<T> {
    pub fn new(weight_w1: T, table_w0: PotentialTable<T>, table_w1: PotentialTable<T>) -> Result<Self> {
        check_unit("weight_w1", &weight_w1)?;
        Ok(MixtureWorld {
            weight_w1,
            table_w0,
            table_w1,
        })
    }

    /// Population table marginalised over `W`.
    pub fn marginal(&self) -> PotentialTable<T> {
        let w1 = self.weight_w1.clone();
        let w0 = T::one() - w1.clone();
        PotentialTable {
            q: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    w0.clone() * self.table_w0.q[i][j].clone() + w1.clone() * self.table_w1.q[i][j].clone()
                })
            }),
        }
    }
}

/// VanderWeele: (a) `E(Y|t,s,w)` nondecreasing in `t` and `s` for each `w`;
/// (b) `P(S > s | t, w)` nondecreasing in `t`. Values per `w` are
/// `E(Y|0,0,w), E(Y|1,0,w), E(Y|0,1,w), E(Y|1,1,w), P(S=1|0,w), P(S=1|1,w)`.
pub fn check_vanderweele<T: Scalar>(mix: &MixtureWorld<T>, tol: &T) -> CriterionCheck<T> {
    let mut holds = true;
    let mut values = Vec::new();
    let mut vacuous = Vec::new();
    let components = [
        (T::one() - mix.weight_w1.clone(), &mix.table_w0),
        (mix.weight_w1.clone(), &mix.table_w1),
    ];
    for (w, (weight, table)) in components.into_iter().enumerate() {
        if weight.is_zero() {
            vacuous.push(format!("P(W={w}) = 0"));
            values.extend(std::iter::repeat_n(None, 6));
            continue;
        }
        let obs = table.induced_observed();
        let e = |t: usize, s: usize| obs.outcome_mean(s, t);
        let mut ge = |a: Option<T>, b: Option<T>, what: String| match (a, b) {
            (Some(a), Some(b)) => a >= b - tol.clone(),
            _ => {
                vacuous.push(what);
                true
            }
        };
        for s in 0..2 {
            holds &= ge(e(1, s), e(0, s), format!("E(Y|1,{s},{w}) >= E(Y|0,{s},{w})"));
        }
        for t in 0..2 {
            holds &= ge(e(t, 1), e(t, 0), format!("E(Y|{t},1,{w}) >= E(Y|{t},0,{w})"));
        }
        holds &= obs.ps(1, 1) >= obs.ps(0, 1) - tol.clone();
        values.extend([e(0, 0), e(1, 0), e(0, 1), e(1, 1), Some(obs.ps(0, 1)), Some(obs.ps(1, 1))]);
    }
    CriterionCheck { holds, values, vacuous }
}

/// Joint distribution of `(S0, S1, Y_{S=0}, Y_{S=1}, Y_{S=2})` for a
/// three-level strong surrogate.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongTable3<T> {
    q: [[T; 8]; 9],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Strong3Profile<T> {
    pub hr_t_s: T,
    /// `max(P(Y0>Y1), P(Y0>Y2), P(Y1>Y2))`
    pub hr_s_y: T,
    /// Pairwise `[P(Y0>Y1), P(Y0>Y2), P(Y1>Y2)]`.
    pub pairwise: [T; 3],
    pub hr_t_y: T,
}

impl<T: Scalar> StrongTable3<T> {
    pub fn new(q: [[T; 8]; 9]) -> Result<Self> {
        validate_cells(q.iter().flatten().cloned())?;
        Ok(StrongTable3 { q })
    }

    pub fn from_cells(cells: &[(usize, usize, T)]) -> Result<Self> {
        let mut q: [[T; 8]; 9] = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
        for (i, j, v) in cells {
            if *i >= 9 || *j >= 8 {
                return Err(Error::InvalidTable(format!("cell ({i},{j}) out of range")));
            }
            q[*i][*j] = q[*i][*j].clone() + v.clone();
        }
        Self::new(q)
    }

    pub fn cell(&self, i: usize, j: usize) -> T {
        self.q[i][j].clone()
    }

    /// `Y_{S=s}` for outcome pattern `j`.
    pub fn outcome(j: usize, s: usize) -> usize {
        (j >> (2 - s)) & 1
    }

    pub fn profile(&self) -> Strong3Profile<T> {
        let col_sum = |js: &[usize]| sum((0..9).flat_map(|i| js.iter().map(move |&j| (i, j))).map(|(i, j)| self.q[i][j].clone()));
        let hr_t_s = sum([3usize, 6, 7].iter().flat_map(|&i| self.q[i].iter().cloned()));
        let pairwise = [col_sum(&[4, 5]), col_sum(&[4, 6]), col_sum(&[2, 6])];
        let hr_s_y = pairwise.iter().cloned().fold(T::zero(), crate::scalar::max_of);
        let mut hr_t_y = T::zero();
        for i in 0..9 {
            let (s0, s1) = (i / 3, i % 3);
            for j in 0..8 {
                if Self::outcome(j, s0) == 1 && Self::outcome(j, s1) == 0 {
                    hr_t_y = hr_t_y + self.q[i][j].clone();
                }
            }
        }
        Strong3Profile {
            hr_t_s,
            hr_s_y,
            pairwise,
            hr_t_y,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cells": self.q.iter().map(|row| row.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "encoding": STRONG3_ENCODING,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = parse_cells::<T>(v, STRONG3_ENCODING, 9, 8)?;
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone())))
    }
}

impl<T: Scalar> Serialize for StrongTable3<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for StrongTable3<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Default quantisation grid for random tables: cells are multiples of
/// `1 / total` where `total ≈ 1e9`.
pub const DEFAULT_RESOLUTION: u64 = 1_000_000_000;

/// Dirichlet(`concentration`) weights over `k` cells, quantised to integer
/// counts on a grid of `resolution`, so that rational tables sum to one
/// exactly. Deterministic in `seed` (ChaCha8).
pub fn dirichlet_counts(seed: u64, concentration: f64, k: usize, resolution: u64) -> Result<Vec<u64>> {
    if !(concentration > 0.0 && concentration.is_finite()) {
        return Err(Error::InvalidParameter(format!("concentration must be positive, got {concentration}")));
    }
    let gamma = Gamma::new(concentration, 1.0).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g: Vec<f64> = (0..k).map(|_| gamma.sample(&mut rng)).collect();
        let total: f64 = g.iter().sum();
        let counts: Vec<u64> = g.iter().map(|x| (x / total * resolution as f64).round() as u64).collect();
        if counts.iter().any(|&c| c > 0) {
            return Ok(counts);
        }
    }
}

fn normalise<T: Scalar>(counts: &[u64]) -> Vec<T> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| T::from_ratio(c as i64, total as i64)).collect()
}

/// Random table with Dirichlet-distributed cells, reproducible from `seed`.
pub fn random_world<T: Scalar>(seed: u64, concentration: f64) -> Result<PotentialTable<T>> {
    random_world_quantized(seed, concentration, DEFAULT_RESOLUTION)
}

pub fn random_world_quantized<T: Scalar>(seed: u64, concentration: f64, resolution: u64) -> Result<PotentialTable<T>> {
    let cells = normalise::<T>(&dirichlet_counts(seed, concentration, 64, resolution)?);
    let mut v = cells;
    // Fix floating rounding so the sum check always passes.
    if !T::EXACT {
        let total = sum(v.iter().cloned());
        for x in v.iter_mut() {
            *x = x.clone() / total.clone();
        }
    }
    PotentialTable::from_slice(&v)
}

/// Rows `i` where `Y_{0s} = Y_{1s}` for both `s`: no direct treatment effect.
pub const STRONG_ROWS: [usize; 4] = [0, 5, 10, 15];

/// Random table supported on strong-surrogate rows.
pub fn random_strong_binary_world<T: Scalar>(seed: u64, concentration: f64) -> Result<PotentialTable<T>> {
    let w = normalise::<T>(&dirichlet_counts(seed, concentration, 16, DEFAULT_RESOLUTION)?);
    let mut cells = Vec::with_capacity(16);
    for (k, &i) in STRONG_ROWS.iter().enumerate() {
        for j in 0..4 {
            cells.push((i, j, w[4 * k + j].clone()));
        }
    }
    PotentialTable::from_cells(&cells)
}

pub fn random_strong3_world<T: Scalar>(seed: u64, concentration: f64) -> Result<StrongTable3<T>> {
    let w = normalise::<T>(&dirichlet_counts(seed, concentration, 72, DEFAULT_RESOLUTION)?);
    StrongTable3::new(std::array::from_fn(|i| std::array::from_fn(|j| w[8 * i + j].clone())))
}
