//! Observed arm-wise joint distribution `P(Y = y, S = s | T = t)`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{approx_eq, sum, Scalar};

/// `p[t][y][s] = P(Y = y, S = s | T = t)` for binary treatment, outcome and
/// surrogate.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedDist<T> {
    p: [[[T; 2]; 2]; 2],
}

impl<T: Scalar> ObservedDist<T> {
    /// Validates nonnegativity and that each arm sums to one (exactly for
    /// rationals, within `1e-9` for floats).
    pub fn new(p: [[[T; 2]; 2]; 2]) -> Result<Self> {
        let obs = ObservedDist { p };
        obs.validate()?;
        Ok(obs)
    }

    /// Builds from per-arm cells listed as `[P00, P01, P10, P11]` (index `2y + s`).
    pub fn from_arms(control: [T; 4], treated: [T; 4]) -> Result<Self> {
        let arm = |a: [T; 4]| {
            let [p00, p01, p10, p11] = a;
            [[p00, p01], [p10, p11]]
        };
        Self::new([arm(control), arm(treated)])
    }

    pub(crate) fn new_unchecked(p: [[[T; 2]; 2]; 2]) -> Self {
        ObservedDist { p }
    }

    pub fn validate(&self) -> Result<()> {
        for t in 0..2 {
            for y in 0..2 {
                for s in 0..2 {
                    if self.p[t][y][s] < T::zero() {
                        return Err(Error::InvalidObserved(format!(
                            "P(Y={y},S={s}|T={t}) = {} is negative",
                            self.p[t][y][s]
                        )));
                    }
                }
            }
            let total = self.arm_total(t);
            if !approx_eq(&total, &T::one(), &T::default_tol()) {
                return Err(Error::InvalidObserved(format!("arm T={t} sums to {total}, not 1")));
            }
        }
        Ok(())
    }

    fn arm_total(&self, t: usize) -> T {
        sum(self.p[t].iter().flatten().cloned())
    }

    /// `P(Y = y, S = s | T = t)`
    pub fn p(&self, t: usize, y: usize, s: usize) -> T {
        self.p[t][y][s].clone()
    }

    /// `P(Y = y | T = t)`
    pub fn py(&self, t: usize, y: usize) -> T {
        self.p(t, y, 0) + self.p(t, y, 1)
    }

    /// `P(S = s | T = t)`
    pub fn ps(&self, t: usize, s: usize) -> T {
        self.p(t, 0, s) + self.p(t, 1, s)
    }

    pub fn cells(&self) -> &[[[T; 2]; 2]; 2] {
        &self.p
    }

    /// `E(Y | S = s, T = t)`, `None` when the conditioning event is null.
    pub fn outcome_mean(&self, s: usize, t: usize) -> Option<T> {
        let denom = self.ps(t, s);
        if denom.is_zero() {
            None
        } else {
            Some(self.p(t, 1, s) / denom)
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ObservedDist<U> {
        ObservedDist {
            p: std::array::from_fn(|t| std::array::from_fn(|y| std::array::from_fn(|s| f(&self.p[t][y][s])))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arm = |t: usize| {
            serde_json::Value::Array(
                (0..2)
                    .map(|y| serde_json::Value::Array((0..2).map(|s| self.p[t][y][s].to_json()).collect()))
                    .collect(),
            )
        };
        serde_json::json!({ "p": [arm(0), arm(1)], "index": "p[t][y][s]" })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::parse("observed distribution JSON", m.to_string());
        let p = v.get("p").and_then(|p| p.as_array()).ok_or_else(|| bad("missing array `p`"))?;
        if p.len() != 2 {
            return Err(bad("`p` must have two arms"));
        }
        let mut out: [[[T; 2]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| T::zero())));
        for t in 0..2 {
            let arm = p[t].as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("arm must be 2x2"))?;
            for y in 0..2 {
                let row = arm[y].as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("arm must be 2x2"))?;
                for s in 0..2 {
                    out[t][y][s] = T::from_json(&row[s])
                        .ok_or_else(|| bad(&format!("p[{t}][{y}][{s}] is not a number")))?;
                }
            }
        }
        Self::new(out)
    }
}

impl<T: Scalar> Serialize for ObservedDist<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ObservedDist<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}
