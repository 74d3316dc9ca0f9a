//! From trial counts to estimated bounds and bootstrap uncertainty regions.
//!
//! Resampling is stratified by arm with arm sizes fixed, because treatment is
//! randomised. Replicate `b` draws from a ChaCha8 stream keyed by
//! `(seed, b)`, so results do not depend on thread count or scheduling.

use std::io::Read;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, sharp_bounds, sharp_bounds_cn, BoundReport, CurveKind};
use crate::error::{Error, Result};
use crate::lp::{oracle_bounds, LpStatus};
use crate::observed::ObservedDist;
use crate::scalar::{convert, Rational, Scalar};

/// Recorded in every region so results can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3), seed_from_u64(seed), stream = replicate index";

pub const DEFAULT_REPLICATES: usize = 2000;
pub const DEFAULT_LEVEL: f64 = 0.95;

/// `n[t][y][s]` cell counts of a two-arm trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialCounts {
    pub n: [[[u64; 2]; 2]; 2],
}

impl TrialCounts {
    pub fn new(n: [[[u64; 2]; 2]; 2]) -> Result<Self> {
        let c = TrialCounts { n };
        for t in 0..2 {
            if c.arm_total(t) == 0 {
                return Err(Error::InvalidCounts(format!("arm T={t} has no observations")));
            }
        }
        Ok(c)
    }

    /// Per-arm cells listed as `[n00, n01, n10, n11]` (index `2y + s`).
    pub fn from_arms(control: [u64; 4], treated: [u64; 4]) -> Result<Self> {
        let arm = |a: [u64; 4]| [[a[0], a[1]], [a[2], a[3]]];
        Self::new([arm(control), arm(treated)])
    }

    pub fn arm_total(&self, t: usize) -> u64 {
        self.n[t].iter().flatten().sum()
    }

    /// Maximum-likelihood `P(Y=y, S=s | T=t) = n[t][y][s] / n_t`.
    pub fn estimate<T: Scalar>(&self) -> ObservedDist<T> {
        let p = std::array::from_fn(|t| {
            let total = self.arm_total(t) as i64;
            std::array::from_fn(|y| std::array::from_fn(|s| T::from_ratio(self.n[t][y][s] as i64, total)))
        });
        let obs = ObservedDist::new_unchecked(p);
        debug_assert!(obs.validate().is_ok());
        obs
    }

    /// One stratified multinomial resample with the same arm sizes.
    pub fn resample(&self, rng: &mut ChaCha8Rng) -> TrialCounts {
        let mut out = [[[0u64; 2]; 2]; 2];
        for t in 0..2 {
            let cells = [self.n[t][0][0], self.n[t][0][1], self.n[t][1][0], self.n[t][1][1]];
            let mut left = self.arm_total(t);
            let mut mass_left = left;
            for (k, &c) in cells.iter().enumerate() {
                let draw = if k == 3 || mass_left == 0 {
                    left
                } else if c == 0 {
                    0
                } else {
                    let p = (c as f64 / mass_left as f64).min(1.0);
                    Binomial::new(left, p).expect("valid binomial").sample(rng)
                };
                out[t][k / 2][k % 2] = draw;
                left -= draw;
                mass_left -= c;
            }
        }
        TrialCounts { n: out }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,y,s,count\n");
        for t in 0..2 {
            for y in 0..2 {
                for sv in 0..2 {
                    s.push_str(&format!("{t},{y},{sv},{}\n", self.n[t][y][sv]));
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "counts": self.n, "index": "n[t][y][s]" })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n: [[[u64; 2]; 2]; 2] = serde_json::from_value(
            v.get("counts")
                .cloned()
                .ok_or_else(|| Error::parse("counts JSON", "missing `counts` array"))?,
        )
        .map_err(|e| Error::parse("counts JSON", format!("`counts` must be a 2x2x2 array of nonnegative integers: {e}")))?;
        Self::new(n)
    }
}

/// A parsed input file: raw counts or arm-wise probabilities.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialData {
    Counts(TrialCounts),
    Probabilities(ObservedDist<Rational>),
}

impl TrialData {
    pub fn observed<T: Scalar>(&self) -> ObservedDist<T> {
        match self {
            TrialData::Counts(c) => c.estimate(),
            TrialData::Probabilities(p) => p.map(convert),
        }
    }

    pub fn counts(&self) -> Option<&TrialCounts> {
        match self {
            TrialData::Counts(c) => Some(c),
            TrialData::Probabilities(_) => None,
        }
    }

    /// Reads CSV with header `t,y,s,count` or `t,y,s,p`, or JSON with a
    /// `counts` or `p` field. Missing CSV cells count as zero.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(trimmed)?;
            if v.get("counts").is_some() {
                return Ok(TrialData::Counts(TrialCounts::from_json(&v)?));
            }
            return Ok(TrialData::Probabilities(ObservedDist::from_json(&v)?));
        }
        parse_csv(text)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut text = String::new();
        std::fs::File::open(path)?.read_to_string(&mut text)?;
        Self::parse(&text)
    }
}

fn parse_csv(text: &str) -> Result<TrialData> {
    let ctx = |line: usize| format!("CSV line {line}");
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(|h| h.to_ascii_lowercase()).collect();
    let is_counts = match header.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["t", "y", "s", "count"] => true,
        ["t", "y", "s", "p"] => false,
        _ => {
            return Err(Error::parse(
                "CSV header",
                format!("expected `t,y,s,count` or `t,y,s,p`, found `{}`", header.join(",")),
            ))
        }
    };
    let mut counts = [[[0u64; 2]; 2]; 2];
    let mut probs: [[[Rational; 2]; 2]; 2] =
        std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Rational::from_ratio(0, 1))));
    let mut seen = [[[false; 2]; 2]; 2];
    for (k, record) in reader.records().enumerate() {
        let line = k + 2;
        let record = record?;
        if record.len() != 4 {
            return Err(Error::parse(ctx(line), format!("expected 4 fields, found {}", record.len())));
        }
        let mut idx = [0usize; 3];
        for (f, name) in ["t", "y", "s"].iter().enumerate() {
            idx[f] = match &record[f] {
                "0" => 0,
                "1" => 1,
                other => return Err(Error::parse(ctx(line), format!("field `{name}` must be 0 or 1, found `{other}`"))),
            };
        }
        let [t, y, s] = idx;
        if seen[t][y][s] {
            return Err(Error::parse(ctx(line), format!("duplicate cell t={t},y={y},s={s}")));
        }
        seen[t][y][s] = true;
        if is_counts {
            counts[t][y][s] = record[3]
                .parse()
                .map_err(|_| Error::parse(ctx(line), format!("field `count` must be a nonnegative integer, found `{}`", &record[3])))?;
        } else {
            probs[t][y][s] = Rational::parse_decimal(&record[3])
                .ok_or_else(|| Error::parse(ctx(line), format!("field `p` is not a number: `{}`", &record[3])))?;
        }
    }
    if is_counts {
        Ok(TrialData::Counts(TrialCounts::new(counts)?))
    } else {
        Ok(TrialData::Probabilities(ObservedDist::new(probs)?))
    }
}

/// Simulates a trial with `per_arm` units in each arm drawn from `obs`.
/// Deterministic in `seed` (ChaCha8, stream 0).
pub fn simulate_counts(obs: &ObservedDist<f64>, per_arm: u64, seed: u64) -> Result<TrialCounts> {
    obs.validate()?;
    if per_arm == 0 {
        return Err(Error::InvalidParameter("need at least one unit per arm".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = [[[0u64; 2]; 2]; 2];
    for (t, arm) in n.iter_mut().enumerate() {
        let (mut left, mut mass) = (per_arm, 1.0f64);
        for k in 0..4 {
            let (y, s) = (k / 2, k % 2);
            let p = obs.p(t, y, s);
            let draw = if k == 3 || mass <= 0.0 {
                left
            } else {
                Binomial::new(left, (p / mass).clamp(0.0, 1.0))
                    .expect("valid binomial")
                    .sample(&mut rng)
            };
            arm[y][s] = draw;
            left -= draw;
            mass -= p;
        }
    }
    TrialCounts::new(n)
}

/// Number of resamples, RNG seed and confidence level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BootstrapConfig {
    pub replicates: usize,
    pub seed: u64,
    pub level: f64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            replicates: DEFAULT_REPLICATES,
            seed: 0,
            level: DEFAULT_LEVEL,
        }
    }
}

impl BootstrapConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 100 {
            return Err(Error::InvalidParameter(format!("need at least 100 replicates, got {}", self.replicates)));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::InvalidParameter(format!("level must lie in (0, 1), got {}", self.level)));
        }
        Ok(())
    }
}

/// The `b`-th resample of `counts`, independent of every other index.
pub fn replicate(counts: &TrialCounts, seed: u64, b: u64) -> TrialCounts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(b);
    counts.resample(&mut rng)
}

/// Nearest-order-statistic quantile: the `ceil(n p)`-th smallest value.
pub fn quantile<T: Scalar>(sorted: &[T], p: f64) -> T {
    let n = sorted.len();
    let k = ((n as f64 * p).ceil() as usize).clamp(1, n);
    sorted[k - 1].clone()
}

fn sorted<T: Scalar>(mut v: Vec<T>) -> Vec<T> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v
}

/// Closed-form bounds and LP bounds on one replicate, in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Audit {
    pub replicate: u64,
    pub closed_form: (String, String),
    pub lp: Option<(String, String)>,
    pub compatible: bool,
    pub agrees: bool,
}

fn audit(counts: &TrialCounts, seed: u64, c1: f64, c3: Option<f64>) -> Result<Audit> {
    let rep = replicate(counts, seed, 0);
    let obs: ObservedDist<Rational> = rep.estimate();
    let c1: Rational = convert(&c1);
    let c3: Option<Rational> = c3.map(|c| convert(&c));
    let closed = match &c3 {
        Some(c3) => sharp_bounds_cn(&obs, &c1, c3)?,
        None => sharp_bounds(&obs, &c1)?,
    };
    let lp = oracle_bounds(&obs, &c1, &Rational::from_ratio(0, 1), c3.as_ref())?;
    let feasible = lp.status == LpStatus::Optimal;
    let agrees = feasible == closed.compatible
        && (!feasible || (lp.min.as_ref() == Some(&closed.lower) && lp.max.as_ref() == Some(&closed.upper)));
    Ok(Audit {
        replicate: 0,
        closed_form: (closed.lower.to_string(), closed.upper.to_string()),
        lp: lp.min.zip(lp.max).map(|(a, b)| (a.to_string(), b.to_string())),
        compatible: closed.compatible,
        agrees,
    })
}

/// Percentile region `[q_{α/2}(L*), q_{1-α/2}(U*)]` with `α = 1 - level`,
/// widened if needed to contain the full-sample point estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyRegion<T> {
    pub level: f64,
    pub lower_limit: T,
    pub upper_limit: T,
    pub point_lower: T,
    pub point_upper: T,
    pub c1: T,
    pub c3: Option<T>,
    pub replicates: usize,
    pub seed: u64,
    /// Replicates whose resampled arms were incompatible with the premises.
    pub incompatible_replicates: usize,
    pub audit: Option<Audit>,
}

impl<T: Scalar> UncertaintyRegion<T> {
    pub fn contains(&self, other: &UncertaintyRegion<T>) -> bool {
        self.lower_limit <= other.lower_limit && other.upper_limit <= self.upper_limit
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "lower_limit": self.lower_limit.to_json(),
            "upper_limit": self.upper_limit.to_json(),
            "point_lower": self.point_lower.to_json(),
            "point_upper": self.point_upper.to_json(),
            "c1": self.c1.to_json(),
            "c3": self.c3.as_ref().map(Scalar::to_json),
            "replicates": self.replicates,
            "seed": self.seed,
            "incompatible_replicates": self.incompatible_replicates,
            "rng": RNG_ALGORITHM,
            "quantile": "nearest order statistic",
            "audit": self.audit,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::parse("uncertainty region JSON", m.to_string());
        let num = |k: &str| v.get(k).and_then(T::from_json).ok_or_else(|| bad(&format!("missing `{k}`")));
        let int = |k: &str| v.get(k).and_then(|x| x.as_u64()).ok_or_else(|| bad(&format!("missing `{k}`")));
        let audit = match v.get("audit") {
            None | Some(serde_json::Value::Null) => None,
            Some(a) => Some(Audit {
                replicate: a.get("replicate").and_then(|x| x.as_u64()).ok_or_else(|| bad("bad audit"))?,
                closed_form: serde_json::from_value(a.get("closed_form").cloned().unwrap_or_default())
                    .map_err(|_| bad("bad audit"))?,
                lp: serde_json::from_value(a.get("lp").cloned().unwrap_or_default()).map_err(|_| bad("bad audit"))?,
                compatible: a.get("compatible").and_then(|x| x.as_bool()).ok_or_else(|| bad("bad audit"))?,
                agrees: a.get("agrees").and_then(|x| x.as_bool()).ok_or_else(|| bad("bad audit"))?,
            }),
        };
        Ok(UncertaintyRegion {
            level: v.get("level").and_then(|x| x.as_f64()).ok_or_else(|| bad("missing `level`"))?,
            lower_limit: num("lower_limit")?,
            upper_limit: num("upper_limit")?,
            point_lower: num("point_lower")?,
            point_upper: num("point_upper")?,
            c1: num("c1")?,
            c3: match v.get("c3") {
                None | Some(serde_json::Value::Null) => None,
                Some(x) => Some(T::from_json(x).ok_or_else(|| bad("bad `c3`"))?),
            },
            replicates: int("replicates")? as usize,
            seed: int("seed")?,
            incompatible_replicates: int("incompatible_replicates")? as usize,
            audit,
        })
    }
}

impl<T: Scalar> Serialize for UncertaintyRegion<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// One grid point of a bootstrapped bound curve.
#[derive(Debug, Clone, PartialEq)]
pub struct BandPoint<T> {
    pub c1: T,
    pub region: UncertaintyRegion<T>,
    /// Percentile band of the lower bound curve, `[q_{α/2}(L*), q_{1-α/2}(L*)]`.
    pub lower_band: (T, T),
    /// Percentile band of the upper bound curve, `[q_{α/2}(U*), q_{1-α/2}(U*)]`.
    pub upper_band: (T, T),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveBands<T> {
    pub c3: Option<T>,
    pub points: Vec<BandPoint<T>>,
    /// Shape of the point-estimate upper curve (1 = flat, 2 = rising then flat).
    pub upper_scenario: u8,
    pub lower_scenario: u8,
    pub audit: Option<Audit>,
}

fn bounds_for<T: Scalar>(obs: &ObservedDist<T>, c1: &T, c3: Option<&T>) -> Result<BoundReport<T>> {
    match c3 {
        Some(c3) => sharp_bounds_cn(obs, c1, c3),
        None => sharp_bounds(obs, c1),
    }
}

/// Bootstrap bands at every `c1` in `grid`, reusing one set of resamples.
pub fn curve_region<T: Scalar>(
    counts: &TrialCounts,
    grid: &[T],
    c3: Option<&T>,
    cfg: &BootstrapConfig,
) -> Result<CurveBands<T>> {
    cfg.validate()?;
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty c1 grid".into()));
    }
    for c1 in grid {
        crate::potential::check_threshold("c1", c1)?;
    }
    let obs: ObservedDist<T> = counts.estimate();
    let points: Vec<BoundReport<T>> = grid.iter().map(|c1| bounds_for(&obs, c1, c3)).collect::<Result<_>>()?;

    // reps[b][g] = (L*, U*, compatible) for replicate b at grid point g.
    let reps: Vec<Vec<(T, T, bool)>> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|b| {
            let rep: ObservedDist<T> = replicate(counts, cfg.seed, b).estimate();
            grid.iter()
                .map(|c1| {
                    let r = bounds_for(&rep, c1, c3).expect("thresholds validated");
                    (r.lower, r.upper, r.compatible)
                })
                .collect()
        })
        .collect();

    let alpha = 1.0 - cfg.level;
    let (lo_p, hi_p) = (alpha / 2.0, 1.0 - alpha / 2.0);
    let mut out = Vec::with_capacity(grid.len());
    for (g, (c1, point)) in grid.iter().zip(&points).enumerate() {
        let ls = sorted(reps.iter().map(|r| r[g].0.clone()).collect());
        let us = sorted(reps.iter().map(|r| r[g].1.clone()).collect());
        let incompatible = reps.iter().filter(|r| !r[g].2).count();
        let lower_band = (quantile(&ls, lo_p), quantile(&ls, hi_p));
        let upper_band = (quantile(&us, lo_p), quantile(&us, hi_p));
        let lower_limit = crate::scalar::min_of(lower_band.0.clone(), point.lower.clone());
        let upper_limit = crate::scalar::max_of(upper_band.1.clone(), point.upper.clone());
        out.push(BandPoint {
            c1: c1.clone(),
            region: UncertaintyRegion {
                level: cfg.level,
                lower_limit,
                upper_limit,
                point_lower: point.lower.clone(),
                point_upper: point.upper.clone(),
                c1: c1.clone(),
                c3: c3.cloned(),
                replicates: cfg.replicates,
                seed: cfg.seed,
                incompatible_replicates: incompatible,
                audit: None,
            },
            lower_band,
            upper_band,
        });
    }
    let upper_curve = match c3 {
        Some(c3) => bounds::upper_curve_cn(&obs, c3)?,
        None => bounds::upper_curve(&obs)?,
    };
    let audit = audit(counts, cfg.seed, grid[0].to_f64_lossy(), c3.map(|c| c.to_f64_lossy()))?;
    Ok(CurveBands {
        c3: c3.cloned(),
        points: out,
        upper_scenario: upper_curve.scenario(),
        lower_scenario: bounds::lower_curve(&obs)?.scenario(),
        audit: Some(audit),
    })
}

/// Bootstrap region for the bounds at a single `c1` (and optional `c3`).
pub fn bootstrap_region<T: Scalar>(
    counts: &TrialCounts,
    c1: &T,
    c3: Option<&T>,
    cfg: &BootstrapConfig,
) -> Result<UncertaintyRegion<T>> {
    let bands = curve_region(counts, std::slice::from_ref(c1), c3, cfg)?;
    let mut region = bands.points.into_iter().next().expect("one grid point").region;
    region.audit = bands.audit;
    Ok(region)
}

impl<T: Scalar> CurveBands<T> {
    /// `c1,point,band_low,band_high` for the chosen curve.
    pub fn to_csv(&self, kind: CurveKind) -> String {
        let mut s = String::from("c1,point,band_low,band_high\n");
        for p in &self.points {
            let (point, band) = match kind {
                CurveKind::Lower => (&p.region.point_lower, &p.lower_band),
                _ => (&p.region.point_upper, &p.upper_band),
            };
            s.push_str(&format!(
                "{},{},{},{}\n",
                p.c1.to_f64_lossy(),
                point.to_f64_lossy(),
                band.0.to_f64_lossy(),
                band.1.to_f64_lossy()
            ));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "c3": self.c3.as_ref().map(Scalar::to_json),
            "upper_scenario": self.upper_scenario,
            "lower_scenario": self.lower_scenario,
            "audit": self.audit,
            "points": self.points.iter().map(|p| serde_json::json!({
                "c1": p.c1.to_json(),
                "region": p.region.to_json(),
                "lower_band": [p.lower_band.0.to_json(), p.lower_band.1.to_json()],
                "upper_band": [p.upper_band.0.to_json(), p.upper_band.1.to_json()],
            })).collect::<Vec<_>>(),
        })
    }
}
