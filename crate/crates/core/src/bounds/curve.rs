//! Bounds as exact piecewise-linear functions of `c1` on `[0, 1]`.
//!
//! Every bound term is affine in `c1`, so each bound is the lower (or upper)
//! envelope of a handful of lines. Breakpoints are the exact intersections of
//! consecutive active lines.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::observed::ObservedDist;
use crate::potential::check_threshold;
use crate::scalar::Scalar;

use super::{lower_terms, upper_terms, upper_terms_cn, UPPER_CN_C1_SLOPE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Upper,
    Lower,
    UpperCn,
}

/// `value = intercept + slope * c1` on one interval, with the 1-based index of
/// the bound term tracing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment<T> {
    pub intercept: T,
    pub slope: T,
    pub term: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCurve<T> {
    pub kind: CurveKind,
    pub c3: Option<T>,
    /// `0 = b0 < b1 < … < bn = 1`; segment `k` covers `[b_k, b_{k+1}]`.
    pub breakpoints: Vec<T>,
    pub segments: Vec<Segment<T>>,
}

/// Lines `(intercept, slope, term)` and the envelope of their minimum over
/// `[0, 1]`, as `(breakpoints, active line per interval)`.
fn min_envelope<T: Scalar>(lines: &[(T, T)]) -> (Vec<T>, Vec<usize>) {
    let value = |k: usize, x: &T| lines[k].0.clone() + lines[k].1.clone() * x.clone();
    // Best line just to the right of x: lowest value, then lowest slope, then index.
    let best_at = |x: &T| {
        let mut best = 0;
        for k in 1..lines.len() {
            let (vk, vb) = (value(k, x), value(best, x));
            if vk < vb || (vk == vb && lines[k].1 < lines[best].1) {
                best = k;
            }
        }
        best
    };
    let one = T::one();
    let mut x = T::zero();
    let mut active = best_at(&x);
    let mut breaks = vec![x.clone()];
    let mut seq = vec![active];
    loop {
        let mut next: Option<(T, usize)> = None;
        for k in 0..lines.len() {
            if lines[k].1 >= lines[active].1 {
                continue;
            }
            let cross = (lines[k].0.clone() - lines[active].0.clone()) / (lines[active].1.clone() - lines[k].1.clone());
            if cross <= x || cross >= one {
                continue;
            }
            let better = match &next {
                None => true,
                Some((cx, ck)) => cross < *cx || (cross == *cx && lines[k].1 < lines[*ck].1),
            };
            if better {
                next = Some((cross, k));
            }
        }
        match next {
            Some((cx, _)) => {
                x = cx;
                active = best_at(&x);
                breaks.push(x.clone());
                seq.push(active);
            }
            None => break,
        }
    }
    breaks.push(one);
    (breaks, seq)
}

fn build<T: Scalar>(kind: CurveKind, c3: Option<T>, lines: Vec<(T, T)>, negate: bool) -> PiecewiseCurve<T> {
    let work: Vec<(T, T)> = if negate {
        lines.iter().map(|(a, b)| (-a.clone(), -b.clone())).collect()
    } else {
        lines.clone()
    };
    let (breaks, seq) = min_envelope(&work);
    let mut breakpoints = vec![breaks[0].clone()];
    let mut segments: Vec<Segment<T>> = Vec::new();
    for (k, &line) in seq.iter().enumerate() {
        let (a, b) = lines[line].clone();
        if let Some(last) = segments.last() {
            if last.intercept == a && last.slope == b {
                continue;
            }
            breakpoints.push(breaks[k].clone());
        }
        segments.push(Segment {
            intercept: a,
            slope: b,
            term: line + 1,
        });
    }
    breakpoints.push(breaks[breaks.len() - 1].clone());
    PiecewiseCurve {
        kind,
        c3,
        breakpoints,
        segments,
    }
}

fn affine<T: Scalar>(at0: &[T], at1: &[T]) -> Vec<(T, T)> {
    at0.iter().zip(at1).map(|(a, b)| (a.clone(), b.clone() - a.clone())).collect()
}

/// `c1 ↦ U(c1)`, slopes in `{0, 1}`.
pub fn upper_curve<T: Scalar>(obs: &ObservedDist<T>) -> Result<PiecewiseCurve<T>> {
    obs.validate()?;
    let lines = affine(&upper_terms(obs, &T::zero()), &upper_terms(obs, &T::one()));
    Ok(build(CurveKind::Upper, None, lines, false))
}

/// `c1 ↦ L(c1)`, slopes in `{0, -1}`.
pub fn lower_curve<T: Scalar>(obs: &ObservedDist<T>) -> Result<PiecewiseCurve<T>> {
    obs.validate()?;
    let lines = affine(&lower_terms(obs, &T::zero()), &lower_terms(obs, &T::one()));
    Ok(build(CurveKind::Lower, None, lines, true))
}

/// `c1 ↦ Ũ(c1, c3)` at fixed `c3`, slopes in `{0, 1}`.
pub fn upper_curve_cn<T: Scalar>(obs: &ObservedDist<T>, c3: &T) -> Result<PiecewiseCurve<T>> {
    obs.validate()?;
    check_threshold("c3", c3)?;
    let lines = upper_terms_cn(obs, &T::zero(), c3)
        .into_iter()
        .zip(UPPER_CN_C1_SLOPE)
        .map(|(a, s)| (a, T::from_ratio(s, 1)))
        .collect();
    Ok(build(CurveKind::UpperCn, Some(c3.clone()), lines, false))
}

impl<T: Scalar> PiecewiseCurve<T> {
    /// 1 when the curve is flat on `[0, 1]`, 2 when it has a sloped part.
    pub fn scenario(&self) -> u8 {
        if self.segments.iter().all(|s| s.slope.is_zero()) {
            1
        } else {
            2
        }
    }

    /// Interior breakpoints only.
    pub fn interior_breakpoints(&self) -> &[T] {
        &self.breakpoints[1..self.breakpoints.len() - 1]
    }

    pub fn segment_index(&self, c1: &T) -> usize {
        let interior = self.interior_breakpoints();
        interior.iter().take_while(|b| *b <= c1).count().min(self.segments.len() - 1)
    }

    pub fn eval(&self, c1: &T) -> T {
        let s = &self.segments[self.segment_index(c1)];
        s.intercept.clone() + s.slope.clone() * c1.clone()
    }

    /// True when adjacent segments meet at each breakpoint.
    pub fn is_continuous(&self) -> bool {
        self.segments.windows(2).zip(self.interior_breakpoints()).all(|(w, b)| {
            let left = w[0].intercept.clone() + w[0].slope.clone() * b.clone();
            let right = w[1].intercept.clone() + w[1].slope.clone() * b.clone();
            left == right
        })
    }

    pub fn samples(&self, grid: &[T]) -> Vec<(T, T)> {
        grid.iter().map(|x| (x.clone(), self.eval(x))).collect()
    }

    /// `c1,value` rows for plotting.
    pub fn to_csv(&self, grid: &[T]) -> String {
        let mut out = String::from("c1,value\n");
        for (x, v) in self.samples(grid) {
            out.push_str(&format!("{x},{v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "c3": self.c3.as_ref().map(Scalar::to_json),
            "scenario": self.scenario(),
            "breakpoints": self.breakpoints.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "segments": self.segments.iter().map(|s| serde_json::json!({
                "intercept": s.intercept.to_json(),
                "slope": s.slope.to_json(),
                "term": s.term,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::parse("curve JSON", m.to_string());
        let kind = match v.get("kind").and_then(|k| k.as_str()) {
            Some("upper") => CurveKind::Upper,
            Some("lower") => CurveKind::Lower,
            Some("upper_cn") => CurveKind::UpperCn,
            _ => return Err(bad("unknown `kind`")),
        };
        let c3 = match v.get("c3") {
            None | Some(serde_json::Value::Null) => None,
            Some(x) => Some(T::from_json(x).ok_or_else(|| bad("bad `c3`"))?),
        };
        let breakpoints = v
            .get("breakpoints")
            .and_then(|b| b.as_array())
            .ok_or_else(|| bad("missing `breakpoints`"))?
            .iter()
            .map(|x| T::from_json(x).ok_or_else(|| bad("bad breakpoint")))
            .collect::<Result<Vec<_>>>()?;
        let segments = v
            .get("segments")
            .and_then(|s| s.as_array())
            .ok_or_else(|| bad("missing `segments`"))?
            .iter()
            .map(|s| {
                Ok(Segment {
                    intercept: s.get("intercept").and_then(T::from_json).ok_or_else(|| bad("bad intercept"))?,
                    slope: s.get("slope").and_then(T::from_json).ok_or_else(|| bad("bad slope"))?,
                    term: s.get("term").and_then(|t| t.as_u64()).ok_or_else(|| bad("bad term"))? as usize,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if segments.is_empty() || breakpoints.len() != segments.len() + 1 {
            return Err(bad("need one more breakpoint than segments"));
        }
        Ok(PiecewiseCurve {
            kind,
            c3,
            breakpoints,
            segments,
        })
    }
}

impl<T: Scalar> Serialize for PiecewiseCurve<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{nontriviality, sharp_bounds, sharp_bounds_cn};
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn obs(c: [i64; 4], t: [i64; 4], n: i64) -> ObservedDist<Rational> {
        ObservedDist::from_arms(c.map(|x| r(x, n)), t.map(|x| r(x, n))).unwrap()
    }

    fn grid() -> Vec<Rational> {
        (0..=100).map(|k| r(k, 100)).collect()
    }

    #[test]
    fn flat_when_no_inequality_set_holds() {
        let o = obs([1, 2, 3, 4], [1, 2, 3, 4], 10);
        let c = upper_curve(&o).unwrap();
        assert_eq!(c.scenario(), 1);
        assert_eq!(c.segments.len(), 1);
        assert_eq!(c.eval(&r(0, 1)), if o.py(0, 1) < o.py(1, 0) { o.py(0, 1) } else { o.py(1, 0) });
    }

    #[test]
    fn rising_then_flat_when_u2_set_holds() {
        // P10|0 = 0.1 < P00|1 = 0.4, P01|1 = 0.1 < P11|0 = 0.4.
        let o = obs([3, 2, 1, 4], [4, 1, 3, 2], 10);
        assert!(nontriviality(&o).upper_via_u2);
        let c = upper_curve(&o).unwrap();
        assert_eq!(c.scenario(), 2);
        assert_eq!(c.segments.len(), 2);
        assert_eq!((c.segments[0].slope.clone(), c.segments[1].slope.clone()), (r(1, 1), r(0, 1)));
        assert_eq!(c.segments[0].term, 2);
        assert!(c.is_continuous());
    }

    #[test]
    fn curves_match_pointwise_bounds() {
        let cases = [
            obs([3, 2, 1, 4], [4, 1, 3, 2], 10),
            obs([1, 1, 4, 4], [4, 4, 1, 1], 10),
            obs([2, 5, 1, 2], [1, 1, 6, 2], 10),
        ];
        for o in &cases {
            let (u, l) = (upper_curve(o).unwrap(), lower_curve(o).unwrap());
            let cn = upper_curve_cn(o, &r(1, 50)).unwrap();
            for x in grid() {
                let b = sharp_bounds(o, &x).unwrap();
                assert_eq!(u.eval(&x), b.upper);
                assert_eq!(l.eval(&x), b.lower);
                assert_eq!(cn.eval(&x), sharp_bounds_cn(o, &x, &r(1, 50)).unwrap().upper);
            }
            assert!(u.segments.iter().all(|s| s.slope == r(0, 1) || s.slope == r(1, 1)));
            assert!(l.segments.iter().all(|s| s.slope == r(0, 1) || s.slope == r(-1, 1)));
        }
    }

    #[test]
    fn json_round_trip_and_csv() {
        let o = obs([3, 2, 1, 4], [4, 1, 3, 2], 10);
        let c = upper_curve_cn(&o, &r(0, 1)).unwrap();
        assert_eq!(PiecewiseCurve::<Rational>::from_json(&c.to_json()).unwrap(), c);
        let csv = c.to_csv(&[r(0, 1), r(1, 2), r(1, 1)]);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("c1,value\n0,"));
    }
}
