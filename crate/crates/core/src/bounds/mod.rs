//! Closed-form sharp bounds on `HR(T→Y)` from the observed arms.
//!
//! With `Pys|t = P(Y=y, S=s | T=t)` and `HR(T→S) <= c1`, the sharp bounds are
//! `L = max(L1..L4)` and `U = min(U1..U4)`:
//!
//! | k | `Lk`                         | `Uk`                          |
//! |---|------------------------------|-------------------------------|
//! | 1 | `0`                          | `P(Y=1|T=0)`                  |
//! | 2 | `P11|0 - P11|1 - c1`         | `c1 + P10|0 + P01|1`          |
//! | 3 | `P(Y=0|T=1) - P(Y=0|T=0)`    | `P(Y=0|T=1)`                  |
//! | 4 | `P00|1 - P00|0 - c1`         | `1 + c1 - P01|0 - P10|1`      |
//!
//! Adding causal necessity (at most a `c3` share of units with `S0 = S1`
//! change outcome) leaves `L` unchanged and tightens the upper bound to
//! `Ũ = min(Ũ1..Ũ15)`, see [`upper_terms_cn`]. Neither bound depends on the
//! surrogate-harm threshold `c2`.

pub mod curve;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::observed::ObservedDist;
use crate::potential::check_threshold;
use crate::scalar::Scalar;

pub use curve::{lower_curve, upper_curve, upper_curve_cn, CurveKind, PiecewiseCurve, Segment};

/// Harm thresholds: `c1` bounds `HR(T→S)`, `c2` bounds each `HR(S→Y|T=t)`,
/// `c3` bounds the causal-necessity violation.
#[derive(Debug, Clone, PartialEq)]
pub struct Thresholds<T> {
    pub c1: T,
    pub c2: T,
    pub c3: Option<T>,
}

impl<T: Scalar> Thresholds<T> {
    pub fn new(c1: T, c2: T, c3: Option<T>) -> Result<Self> {
        check_threshold("c1", &c1)?;
        check_threshold("c2", &c2)?;
        if c2 > T::one() - c1.clone() {
            return Err(Error::Threshold {
                name: "c2",
                value: c2.to_string(),
                reason: "must satisfy c2 <= 1 - c1",
            });
        }
        if let Some(c3) = &c3 {
            check_threshold("c3", c3)?;
        }
        Ok(Thresholds { c1, c2, c3 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// Only `HR(T→S) <= c1` (and the irrelevant `c2`).
    Basic,
    /// Additionally the causal-necessity slack `c3`.
    CausalNecessity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The upper bound is at most `c1`: no compatible world has the paradox.
    Excluded,
    /// The lower bound exceeds `c1`: every compatible world has the paradox.
    Present,
    Indeterminate,
    /// No joint distribution reproduces the observed arms under the premises.
    Incompatible,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Excluded => "excluded",
            Verdict::Present => "present",
            Verdict::Indeterminate => "indeterminate",
            Verdict::Incompatible => "incompatible",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub lower: T,
    /// 1-based index of the binding lower term (smallest index on ties).
    pub lower_active: usize,
    pub upper: T,
    /// 1-based index of the binding upper term (smallest index on ties).
    pub upper_active: usize,
    pub mode: BoundMode,
    /// False when the observed arms cannot arise under the premises; the
    /// bounds are then reported unclamped and are meaningless.
    pub compatible: bool,
    pub c1: T,
    pub c3: Option<T>,
    /// Smallest `c3` at which the causal-necessity bound equals the basic one.
    pub saturation_c3: Option<T>,
    pub lower_terms: Vec<T>,
    pub upper_terms: Vec<T>,
}

struct P<T> {
    p00_0: T,
    p01_0: T,
    p10_0: T,
    p11_0: T,
    p00_1: T,
    p01_1: T,
    p10_1: T,
    p11_1: T,
}

impl<T: Scalar> P<T> {
    fn of(obs: &ObservedDist<T>) -> Self {
        P {
            p00_0: obs.p(0, 0, 0),
            p01_0: obs.p(0, 0, 1),
            p10_0: obs.p(0, 1, 0),
            p11_0: obs.p(0, 1, 1),
            p00_1: obs.p(1, 0, 0),
            p01_1: obs.p(1, 0, 1),
            p10_1: obs.p(1, 1, 0),
            p11_1: obs.p(1, 1, 1),
        }
    }
}

/// `[L1, L2, L3, L4]`
pub fn lower_terms<T: Scalar>(obs: &ObservedDist<T>, c1: &T) -> [T; 4] {
    let p = P::of(obs);
    [
        T::zero(),
        p.p11_0 - p.p11_1 - c1.clone(),
        obs.py(1, 0) - obs.py(0, 0),
        p.p00_1 - p.p00_0 - c1.clone(),
    ]
}

/// `[U1, U2, U3, U4]`
pub fn upper_terms<T: Scalar>(obs: &ObservedDist<T>, c1: &T) -> [T; 4] {
    let p = P::of(obs);
    [
        obs.py(0, 1),
        c1.clone() + p.p10_0 + p.p01_1,
        obs.py(1, 0),
        T::one() + c1.clone() - p.p01_0 - p.p10_1,
    ]
}

/// Coefficient of `c1` in each `Ũk`.
pub const UPPER_CN_C1_SLOPE: [i64; 15] = [0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0];

/// Coefficient of `c3` in each `Ũk`, as `(numerator, denominator)`.
pub const UPPER_CN_C3_WEIGHT: [(i64, i64); 15] = [
    (0, 1),
    (0, 1),
    (0, 1),
    (0, 1),
    (1, 1),
    (1, 1),
    (1, 1),
    (1, 1),
    (1, 1),
    (1, 1),
    (1, 2),
    (1, 2),
    (1, 2),
    (1, 2),
    (1, 2),
];

/// `[Ũ1, …, Ũ15]`. The first four are `U3, U1, U2, U4`; the rest involve `c3`.
///
/// Each term is a vertex of the dual of the causal-necessity program, so the
/// minimum is attained by some compatible table whenever one exists.
pub fn upper_terms_cn<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c3: &T) -> [T; 15] {
    let p = P::of(obs);
    let h = T::half();
    let one = T::one();
    let c1 = c1.clone();
    let c3 = c3.clone();
    let half_c3 = h.clone() * c3.clone();
    [
        obs.py(1, 0),
        obs.py(0, 1),
        c1.clone() + p.p10_0.clone() + p.p01_1.clone(),
        one.clone() + c1.clone() - p.p01_0.clone() - p.p10_1.clone(),
        c1.clone() + c3.clone() - p.p01_0.clone() + p.p01_1.clone(),
        c1.clone() + c3.clone() + p.p10_0.clone() - p.p10_1.clone(),
        c3.clone() + p.p11_0.clone() + p.p01_1.clone(),
        c3.clone() + p.p10_0.clone() + p.p00_1.clone(),
        one.clone() + c3.clone() - p.p01_0.clone() - p.p11_1.clone(),
        one + c3 - p.p00_0.clone() - p.p10_1.clone(),
        half_c3.clone() + c1 + h.clone() * (p.p01_1.clone() - p.p10_1.clone() - p.p01_0.clone() + p.p10_0.clone()),
        h.clone() + half_c3.clone() + h.clone() * (p.p01_1.clone() - p.p11_1.clone() + p.p11_0.clone() - p.p01_0.clone()),
        h.clone() + half_c3.clone() + h.clone() * (p.p00_1.clone() - p.p11_1 - p.p01_0 + p.p10_0.clone()),
        h.clone() + half_c3.clone() + h.clone() * (p.p01_1 - p.p10_1.clone() + p.p11_0 - p.p00_0.clone()),
        h.clone() + half_c3 + h * (p.p00_1 - p.p10_1 - p.p00_0 + p.p10_0),
    ]
}

/// Index (0-based) and value of the minimum, smallest index on ties.
pub(crate) fn argmin<T: Scalar>(terms: &[T]) -> (usize, T) {
    let mut best = 0;
    for (k, t) in terms.iter().enumerate() {
        if *t < terms[best] {
            best = k;
        }
    }
    (best, terms[best].clone())
}

pub(crate) fn argmax<T: Scalar>(terms: &[T]) -> (usize, T) {
    let mut best = 0;
    for (k, t) in terms.iter().enumerate() {
        if *t > terms[best] {
            best = k;
        }
    }
    (best, terms[best].clone())
}

/// Whether some joint distribution reproduces `obs` with `HR(T→S) <= c1`:
/// exactly when `P(S=1|T=0) - P(S=1|T=1) <= c1`.
pub fn is_compatible<T: Scalar>(obs: &ObservedDist<T>, c1: &T) -> bool {
    obs.ps(0, 1) - obs.ps(1, 1) <= *c1
}

/// Left-hand sides that must all be nonnegative for a table to exist with
/// `HR(T→S) <= c1` and causal-necessity violation `<= c3`. They are the
/// recession directions of the dual program.
pub fn compatibility_margins_cn<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c3: &T) -> [T; 13] {
    let p = P::of(obs);
    let (c1, c3) = (c1.clone(), c3.clone());
    let two = T::one() + T::one();
    let one = T::one();
    [
        p.p00_0.clone() + p.p10_0.clone() - p.p00_1.clone() - p.p10_1.clone() + c1.clone(),
        -p.p01_0.clone() + p.p00_1.clone() + p.p01_1.clone() + p.p10_1.clone() + c3.clone(),
        p.p00_0.clone() + p.p01_0.clone() + p.p10_0.clone() - p.p01_1.clone() + c3.clone(),
        p.p00_0.clone() - p.p01_0.clone() - p.p00_1.clone() + p.p01_1.clone() + two.clone() * c1.clone() + c3.clone(),
        p.p00_0.clone() + p.p01_0.clone() + two.clone() * p.p10_0.clone()
            - p.p00_1.clone()
            - p.p01_1.clone()
            - two.clone() * p.p10_1.clone()
            + two.clone() * c1.clone()
            + c3.clone(),
        -p.p10_0.clone() - p.p00_1.clone() + one.clone() + c3.clone(),
        p.p00_0.clone() - p.p00_1.clone() + c1.clone() + c3.clone(),
        two.clone() * p.p00_0.clone() + p.p01_0.clone() + p.p10_0.clone()
            - two.clone() * p.p00_1.clone()
            - p.p01_1.clone()
            - p.p10_1.clone()
            + two.clone() * c1.clone()
            + c3.clone(),
        p.p00_0.clone() + p.p01_0.clone() + p.p10_0.clone() - p.p00_1.clone() - p.p01_1.clone() - p.p10_1.clone()
            + c1.clone()
            + c3.clone(),
        -p.p01_0.clone() + p.p01_1.clone() + c1.clone() + c3.clone(),
        -p.p01_0.clone() + p.p10_0.clone() + p.p01_1.clone() - p.p10_1.clone() + two * c1.clone() + c3.clone(),
        -p.p00_0 - p.p10_1.clone() + one + c3.clone(),
        p.p10_0 - p.p10_1 + c1 + c3,
    ]
}

pub fn is_compatible_cn<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c3: &T) -> bool {
    compatibility_margins_cn(obs, c1, c3).iter().all(|m| *m >= T::zero())
}

/// Sharp bounds under `HR(T→S) <= c1`.
pub fn sharp_bounds<T: Scalar>(obs: &ObservedDist<T>, c1: &T) -> Result<BoundReport<T>> {
    obs.validate()?;
    check_threshold("c1", c1)?;
    let lower_terms = lower_terms(obs, c1);
    let upper_terms = upper_terms(obs, c1);
    let (la, lower) = argmax(&lower_terms);
    let (ua, upper) = argmin(&upper_terms);
    Ok(BoundReport {
        lower,
        lower_active: la + 1,
        upper,
        upper_active: ua + 1,
        mode: BoundMode::Basic,
        compatible: is_compatible(obs, c1),
        c1: c1.clone(),
        c3: None,
        saturation_c3: None,
        lower_terms: lower_terms.to_vec(),
        upper_terms: upper_terms.to_vec(),
    })
}

/// Sharp bounds under `HR(T→S) <= c1` and causal-necessity violation `<= c3`.
/// The lower bound is the basic one.
pub fn sharp_bounds_cn<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c3: &T) -> Result<BoundReport<T>> {
    check_threshold("c3", c3)?;
    let basic = sharp_bounds(obs, c1)?;
    let terms = upper_terms_cn(obs, c1, c3);
    let (ua, upper) = argmin(&terms);
    Ok(BoundReport {
        upper,
        upper_active: ua + 1,
        mode: BoundMode::CausalNecessity,
        compatible: is_compatible_cn(obs, c1, c3),
        c3: Some(c3.clone()),
        saturation_c3: Some(saturation_c3(obs, c1)),
        upper_terms: terms.to_vec(),
        ..basic
    })
}

/// Smallest `c3 >= 0` with `Ũ(c1, c3) = U(c1)`. May exceed 1, in which case
/// causal necessity tightens the bound for every admissible `c3`.
pub fn saturation_c3<T: Scalar>(obs: &ObservedDist<T>, c1: &T) -> T {
    let (_, u) = argmin(&upper_terms(obs, c1));
    let at_zero = upper_terms_cn(obs, c1, &T::zero());
    let mut need = T::zero();
    for (k, g) in at_zero.iter().enumerate().skip(4) {
        let (n, d) = UPPER_CN_C3_WEIGHT[k];
        let c = (u.clone() - g.clone()) * T::from_ratio(d, n);
        if c > need {
            need = c;
        }
    }
    need
}

fn verdict<T: Scalar>(report: &BoundReport<T>) -> Verdict {
    if !report.compatible {
        Verdict::Incompatible
    } else if report.upper <= report.c1 {
        Verdict::Excluded
    } else if report.lower > report.c1 {
        Verdict::Present
    } else {
        Verdict::Indeterminate
    }
}

/// Excluded iff `U <= c1`, Present iff `L > c1`.
pub fn paradox_criterion<T: Scalar>(obs: &ObservedDist<T>, c1: &T) -> Result<Verdict> {
    Ok(verdict(&sharp_bounds(obs, c1)?))
}

/// As [`paradox_criterion`] with `Ũ` in place of `U`.
pub fn paradox_criterion_cn<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c3: &T) -> Result<Verdict> {
    Ok(verdict(&sharp_bounds_cn(obs, c1, c3)?))
}

impl<T: Scalar> BoundReport<T> {
    pub fn verdict(&self) -> Verdict {
        verdict(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |v: &[T]| v.iter().map(Scalar::to_json).collect::<Vec<_>>();
        serde_json::json!({
            "lower": self.lower.to_json(),
            "lower_active": self.lower_active,
            "upper": self.upper.to_json(),
            "upper_active": self.upper_active,
            "mode": self.mode,
            "compatible": self.compatible,
            "c1": self.c1.to_json(),
            "c3": self.c3.as_ref().map(Scalar::to_json),
            "saturation_c3": self.saturation_c3.as_ref().map(Scalar::to_json),
            "lower_terms": list(&self.lower_terms),
            "upper_terms": list(&self.upper_terms),
            "verdict": self.verdict(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::parse("bound report JSON", m.to_string());
        let num = |key: &str| v.get(key).and_then(T::from_json).ok_or_else(|| bad(&format!("missing `{key}`")));
        let opt = |key: &str| match v.get(key) {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(x) => T::from_json(x).map(Some).ok_or_else(|| bad(&format!("bad `{key}`"))),
        };
        let idx = |key: &str| {
            v.get(key)
                .and_then(|x| x.as_u64())
                .map(|x| x as usize)
                .ok_or_else(|| bad(&format!("missing `{key}`")))
        };
        let list = |key: &str| -> Result<Vec<T>> {
            v.get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| bad(&format!("missing `{key}`")))?
                .iter()
                .map(|x| T::from_json(x).ok_or_else(|| bad(&format!("bad entry in `{key}`"))))
                .collect()
        };
        let mode = match v.get("mode").and_then(|m| m.as_str()) {
            Some("basic") => BoundMode::Basic,
            Some("causal_necessity") => BoundMode::CausalNecessity,
            _ => return Err(bad("unknown `mode`")),
        };
        Ok(BoundReport {
            lower: num("lower")?,
            lower_active: idx("lower_active")?,
            upper: num("upper")?,
            upper_active: idx("upper_active")?,
            mode,
            compatible: v.get("compatible").and_then(|c| c.as_bool()).ok_or_else(|| bad("missing `compatible`"))?,
            c1: num("c1")?,
            c3: opt("c3")?,
            saturation_c3: opt("saturation_c3")?,
            lower_terms: list("lower_terms")?,
            upper_terms: list("upper_terms")?,
        })
    }
}

impl<T: Scalar> Serialize for BoundReport<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Which of the strict inequality sets making a bound informative hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nontriviality {
    /// `P10|0 < P00|1` and `P01|1 < P11|0`: `U2` undercuts `U1, U3` at `c1 = 0`.
    pub upper_via_u2: bool,
    /// `P11|1 < P01|0` and `P00|0 < P10|1`: `U4` undercuts `U1, U3` at `c1 = 0`.
    pub upper_via_u4: bool,
    /// `P10|0 < P10|1` and `P11|1 < P11|0`: `L2` exceeds `L1, L3` at `c1 = 0`.
    pub lower_via_l2: bool,
    /// `P01|1 < P01|0` and `P00|0 < P00|1`: `L4` exceeds `L1, L3` at `c1 = 0`.
    pub lower_via_l4: bool,
}

impl Nontriviality {
    pub fn upper(&self) -> bool {
        self.upper_via_u2 || self.upper_via_u4
    }

    pub fn lower(&self) -> bool {
        self.lower_via_l2 || self.lower_via_l4
    }
}

pub fn nontriviality<T: Scalar>(obs: &ObservedDist<T>) -> Nontriviality {
    let p = P::of(obs);
    Nontriviality {
        upper_via_u2: p.p10_0 < p.p00_1 && p.p01_1 < p.p11_0,
        upper_via_u4: p.p11_1 < p.p01_0 && p.p00_0 < p.p10_1,
        lower_via_l2: p.p10_0 < p.p10_1 && p.p11_1 < p.p11_0,
        lower_via_l4: p.p01_1 < p.p01_0 && p.p00_0 < p.p00_1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn obs(c: [i64; 4], t: [i64; 4], n: i64) -> ObservedDist<Rational> {
        ObservedDist::from_arms(c.map(|x| r(x, n)), t.map(|x| r(x, n))).unwrap()
    }

    #[test]
    fn identical_arms_have_zero_lower_bound() {
        let o = obs([1, 2, 3, 4], [1, 2, 3, 4], 10);
        let b = sharp_bounds(&o, &r(0, 1)).unwrap();
        assert!(b.lower.is_zero());
        assert_eq!(b.lower_active, 1);
        assert!(b.lower_terms[1..].iter().all(|l| *l <= r(0, 1)));
    }

    #[test]
    fn c1_one_upper_is_simple_bound() {
        let o = obs([1, 2, 3, 4], [4, 1, 3, 2], 10);
        let b = sharp_bounds(&o, &r(1, 1)).unwrap();
        let simple = if o.py(0, 1) < o.py(1, 0) { o.py(0, 1) } else { o.py(1, 0) };
        assert_eq!(b.upper, simple);
    }

    #[test]
    fn criterion_excluded_when_no_treated_failures() {
        // P(Y=0|T=1) = 0.
        let o = obs([1, 2, 3, 4], [0, 0, 3, 7], 10);
        for k in 0..=10 {
            assert_eq!(paradox_criterion(&o, &r(k, 10)).unwrap(), Verdict::Excluded);
        }
    }

    #[test]
    fn criterion_present_when_simple_lower_bound_exceeds_c1() {
        // Everyone has (S0, S1) = (0, 1), and P(Y=0|T=1) - P(Y=0|T=0) = 0.7 > c1.
        let o = obs([1, 0, 9, 0], [0, 8, 0, 2], 10);
        assert_eq!(paradox_criterion(&o, &r(1, 10)).unwrap(), Verdict::Present);
        for k in [0, 1, 5, 10] {
            assert_eq!(paradox_criterion_cn(&o, &r(1, 10), &r(k, 10)).unwrap(), Verdict::Present);
        }
    }

    #[test]
    fn incompatible_when_surrogate_drops_more_than_c1() {
        // P(S=1|T=0) = 0.8, P(S=1|T=1) = 0.2.
        let o = obs([1, 4, 1, 4], [4, 1, 4, 1], 10);
        assert!(!is_compatible(&o, &r(1, 2)));
        assert_eq!(paradox_criterion(&o, &r(1, 2)).unwrap(), Verdict::Incompatible);
        assert!(is_compatible(&o, &r(6, 10)));
    }

    #[test]
    fn upper_cn_first_terms_are_basic_terms() {
        let o = obs([1, 2, 3, 4], [2, 2, 3, 3], 10);
        let u = upper_terms(&o, &r(1, 5));
        let t = upper_terms_cn(&o, &r(1, 5), &r(0, 1));
        assert_eq!([t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone()], [u[2].clone(), u[0].clone(), u[1].clone(), u[3].clone()]);
    }

    #[test]
    fn saturation_restores_basic_bound() {
        let o = obs([3, 1, 2, 4], [1, 3, 4, 2], 10);
        let c1 = r(1, 20);
        let sat = saturation_c3(&o, &c1);
        let basic = sharp_bounds(&o, &c1).unwrap().upper;
        if sat <= r(1, 1) {
            assert_eq!(sharp_bounds_cn(&o, &c1, &sat).unwrap().upper, basic);
        }
        if sat > r(0, 1) {
            let below = sat.clone() * r(1, 2);
            assert!(sharp_bounds_cn(&o, &c1, &below).unwrap().upper < basic);
        }
    }

    #[test]
    fn nontriviality_on_identical_arms() {
        let o = obs([1, 2, 3, 4], [1, 2, 3, 4], 10);
        let n = nontriviality(&o);
        assert!(!n.upper() && !n.lower());
    }

    #[test]
    fn report_json_round_trip() {
        let o = obs([1, 2, 3, 4], [2, 2, 3, 3], 10);
        let b = sharp_bounds_cn(&o, &r(1, 10), &r(1, 50)).unwrap();
        let back = BoundReport::<Rational>::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        let f = sharp_bounds(&o.map(|x| x.to_f64_lossy()), &0.1).unwrap();
        assert_eq!(BoundReport::<f64>::from_json(&serde_json::to_value(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn thresholds_validate_joint_range() {
        assert!(Thresholds::new(r(1, 2), r(1, 2), None).is_ok());
        assert!(Thresholds::new(r(1, 2), r(3, 5), None).is_err());
        assert!(Thresholds::new(r(1, 2), r(0, 1), Some(r(2, 1))).is_err());
    }
}
