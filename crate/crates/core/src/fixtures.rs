//! Golden worlds with known harm rates and criterion outcomes.
//!
//! Each fixture pairs a world (a binary table, a three-level strong-surrogate
//! table, a confounded mixture or a Gaussian structural model) with expected
//! quantities. [`replay`] recomputes every quantity and compares.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::potential::{check_wu, MixtureWorld, ParadoxVerdict, PotentialTable, StrongTable3};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussianModel {
    /// `Y = a0 + a1 T + a2 S + a3 W + e1`, `S = b0 + b1 T + b2 W + e2`.
    Prentice,
    /// `Y = a0 + a1 S + a2 W + (2T - 1) e1`, `S = b0 + b1 T + b2 W + e2`.
    Principal,
}

/// Coefficients of a linear Gaussian model with a standard-normal
/// confounder `W` and independent standard-normal errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianParams {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub variant: GaussianModel,
}

impl GaussianParams {
    pub fn prentice(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Self {
        GaussianParams {
            a0: 0.0,
            a1,
            a2,
            a3,
            b0: 0.0,
            b1,
            b2,
            variant: GaussianModel::Prentice,
        }
    }

    /// `a3` is unused by this model.
    pub fn principal(a1: f64, a2: f64, b1: f64, b2: f64) -> Self {
        GaussianParams {
            a0: 0.0,
            a1,
            a2,
            a3: 0.0,
            b0: 0.0,
            b1,
            b2,
            variant: GaussianModel::Principal,
        }
    }

    fn surrogate(&self, t: f64, w: f64, e2: f64) -> f64 {
        self.b0 + self.b1 * t + self.b2 * w + e2
    }

    /// Potential outcome `Y_{t,s}` for a unit with confounder `w` and error `e1`.
    fn outcome(&self, t: f64, s: f64, w: f64, e1: f64) -> f64 {
        match self.variant {
            GaussianModel::Prentice => self.a0 + self.a1 * t + self.a2 * s + self.a3 * w + e1,
            GaussianModel::Principal => self.a0 + self.a1 * s + self.a2 * w + (2.0 * t - 1.0) * e1,
        }
    }
}

/// Coefficient of `t` in `E(Y | T=t, S=s)` under the Prentice-type model:
/// `[a1 (1 + b2²) - a3 b1 b2] / (1 + b2²)`. Zero means `Y ⊥ T | S`.
pub fn gaussian_prentice_tcoef(p: &GaussianParams) -> Result<f64> {
    if p.variant != GaussianModel::Prentice {
        return Err(Error::InvalidParameter("the t-coefficient is defined for the Prentice-type model".into()));
    }
    let v = 1.0 + p.b2 * p.b2;
    Ok((p.a1 * v - p.a3 * p.b1 * p.b2) / v)
}

/// `Var(Y | T, S)` under the Prentice-type model: `(1 + b2² + a3²) / (1 + b2²)`.
pub fn gaussian_prentice_conditional_variance(p: &GaussianParams) -> Result<f64> {
    if p.variant != GaussianModel::Prentice {
        return Err(Error::InvalidParameter("defined for the Prentice-type model".into()));
    }
    let v = 1.0 + p.b2 * p.b2;
    Ok((v + p.a3 * p.a3) / v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianHarm {
    pub hr_t_y: f64,
    /// Set when the individual effect is identically zero, so no one is
    /// strictly harmed and the rate is reported as 0.
    pub zero_effect: bool,
}

/// Analytic `HR(T→Y)`. In the Prentice-type model `Y_{T=1} - Y_{T=0} = a1 + a2 b1`
/// for every unit; in the principal model `HR(T→Y) = Φ(-a1 b1 / 2)`.
pub fn gaussian_hr(p: &GaussianParams) -> GaussianHarm {
    match p.variant {
        GaussianModel::Prentice => {
            let effect = p.a1 + p.a2 * p.b1;
            GaussianHarm {
                hr_t_y: if effect < 0.0 { 1.0 } else { 0.0 },
                zero_effect: effect == 0.0,
            }
        }
        GaussianModel::Principal => GaussianHarm {
            hr_t_y: Normal::standard().cdf(-p.a1 * p.b1 / 2.0),
            zero_effect: false,
        },
    }
}

/// Empirical harm rates from simulating both arms for each unit, plus an
/// OLS fit of `Y` on `(1, T, S)` for a randomised `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloHarm {
    pub n: usize,
    pub seed: u64,
    pub hr_t_s: f64,
    /// Share with `Y_{0,S0+1} < Y_{0,S0}`.
    pub hr_s_y_t0: f64,
    /// Share with `Y_{1,S1+1} < Y_{1,S1}`.
    pub hr_s_y_t1: f64,
    pub hr_t_y: f64,
    pub slope_t: f64,
    pub slope_t_se: f64,
    pub residual_variance: f64,
}

const MC_BLOCK: usize = 1 << 16;

#[derive(Default, Clone, Copy)]
struct Tally {
    ts: u64,
    sy0: u64,
    sy1: u64,
    ty: u64,
    xtx: [[f64; 3]; 3],
    xty: [f64; 3],
    yy: f64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.ts += o.ts;
        self.sy0 += o.sy0;
        self.sy1 += o.sy1;
        self.ty += o.ty;
        for i in 0..3 {
            for j in 0..3 {
                self.xtx[i][j] += o.xtx[i][j];
            }
            self.xty[i] += o.xty[i];
        }
        self.yy += o.yy;
        self
    }
}

/// Simulates `n` units. Block `k` of 65536 units uses ChaCha8 stream `k`, so
/// the result is independent of the number of threads.
pub fn monte_carlo_hr(p: &GaussianParams, n: usize, seed: u64) -> Result<MonteCarloHarm> {
    if n < 10_000 {
        return Err(Error::InvalidParameter(format!("need at least 10^4 units, got {n}")));
    }
    let blocks = n.div_ceil(MC_BLOCK);
    let tally = (0..blocks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut t = Tally::default();
            let len = MC_BLOCK.min(n - k * MC_BLOCK);
            for _ in 0..len {
                let w: f64 = StandardNormal.sample(&mut rng);
                let e1: f64 = StandardNormal.sample(&mut rng);
                let e2: f64 = StandardNormal.sample(&mut rng);
                let arm: f64 = if rand::Rng::gen_bool(&mut rng, 0.5) { 1.0 } else { 0.0 };
                let s0 = p.surrogate(0.0, w, e2);
                let s1 = p.surrogate(1.0, w, e2);
                let y0 = p.outcome(0.0, s0, w, e1);
                let y1 = p.outcome(1.0, s1, w, e1);
                t.ts += u64::from(s0 > s1);
                t.ty += u64::from(y0 > y1);
                t.sy0 += u64::from(p.outcome(0.0, s0 + 1.0, w, e1) < y0);
                t.sy1 += u64::from(p.outcome(1.0, s1 + 1.0, w, e1) < y1);
                let (s, y) = if arm == 1.0 { (s1, y1) } else { (s0, y0) };
                let x = [1.0, arm, s];
                for i in 0..3 {
                    for j in 0..3 {
                        t.xtx[i][j] += x[i] * x[j];
                    }
                    t.xty[i] += x[i] * y;
                }
                t.yy += y * y;
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let xtx = nalgebra::Matrix3::from_fn(|i, j| tally.xtx[i][j]);
    let xty = nalgebra::Vector3::from_fn(|i, _| tally.xty[i]);
    let inv = xtx
        .try_inverse()
        .ok_or_else(|| Error::InvalidParameter("singular design in regression".into()))?;
    let beta = inv * xty;
    let rss = tally.yy - 2.0 * beta.dot(&xty) + (beta.transpose() * xtx * beta)[(0, 0)];
    let sigma2 = rss / (n as f64 - 3.0);
    let nf = n as f64;
    Ok(MonteCarloHarm {
        n,
        seed,
        hr_t_s: tally.ts as f64 / nf,
        hr_s_y_t0: tally.sy0 as f64 / nf,
        hr_s_y_t1: tally.sy1 as f64 / nf,
        hr_t_y: tally.ty as f64 / nf,
        slope_t: beta[1],
        slope_t_se: (sigma2 * inv[(1, 1)]).sqrt(),
        residual_variance: sigma2,
    })
}

/// Units and seed used when replaying the Gaussian fixtures.
pub const MC_UNITS: usize = 1_000_000;
pub const MC_SEED: u64 = 2024;

#[derive(Debug, Clone, PartialEq)]
pub enum FixtureWorld {
    Binary(PotentialTable<Rational>),
    Strong3(StrongTable3<Rational>),
    Mixture(MixtureWorld<Rational>),
    Gaussian(GaussianParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Stated in the published account of the example.
    Reported,
    /// Follows from reported values by calculation or simulation.
    Derived,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Exact(Rational),
    Within { value: f64, tol: f64 },
    Holds(bool),
    Verdict(ParadoxVerdict),
    /// Shown in reports but not checked.
    Recorded,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Exact(r) => write!(f, "{}", show(r)),
            Expected::Within { value, tol } => write!(f, "{value} ± {tol}"),
            Expected::Holds(b) => write!(f, "{b}"),
            Expected::Verdict(v) => write!(f, "{v:?}"),
            Expected::Recorded => write!(f, "(recorded)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedValue {
    pub quantity: &'static str,
    pub value: Expected,
    pub origin: Origin,
    /// Where the value comes from, in words.
    pub anchor: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExampleFixture {
    pub name: &'static str,
    pub description: &'static str,
    pub world: FixtureWorld,
    pub expected: Vec<ExpectedValue>,
}

#[derive(Debug, Clone, PartialEq)]
enum Computed {
    Exact(Rational),
    Float(f64),
    Bool(bool),
    Verdict(ParadoxVerdict),
}

impl std::fmt::Display for Computed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Computed::Exact(r) => write!(f, "{}", show(r)),
            Computed::Float(x) => write!(f, "{x}"),
            Computed::Bool(b) => write!(f, "{b}"),
            Computed::Verdict(v) => write!(f, "{v:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub origin: Origin,
    pub anchor: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

fn show(r: &Rational) -> String {
    r.to_decimal_string().unwrap_or_else(|| r.to_string())
}

fn r(s: &str) -> Rational {
    Rational::parse_decimal(s).expect("literal")
}

/// Nonzero cells of the two binary counterexample tables, listed by row `i`
/// for strata `j = 0, 1, 3` (no unit has `S0 = 1, S1 = 0`).
const TABLE_ROWS: [usize; 9] = [0, 1, 3, 4, 5, 7, 12, 13, 15];

const PRENTICE_TABLE: [[&str; 3]; 9] = [
    ["0.01", "0.015", "0.005"],
    ["0.02", "0.02", "0.025"],
    ["0.04", "0.05", "0.07"],
    ["0", "0.015", "0.05"],
    ["0", "0.04", "0.03"],
    ["0.03", "0.06", "0.065"],
    ["0.05", "0.08", "0.035"],
    ["0.02", "0.07", "0.045"],
    ["0.03", "0.05", "0.075"],
];

const PRINCIPAL_TABLE: [[&str; 3]; 9] = [
    ["0.025", "0.015", "0.005"],
    ["0.03", "0.02", "0.025"],
    ["0.04", "0.05", "0.06"],
    ["0.035", "0.015", "0.05"],
    ["0.04", "0.04", "0.03"],
    ["0.03", "0.06", "0.015"],
    ["0.05", "0.08", "0.035"],
    ["0.02", "0.07", "0.025"],
    ["0.03", "0.05", "0.055"],
];

fn binary_table(rows: &[[&str; 3]; 9]) -> PotentialTable<Rational> {
    let mut cells = Vec::new();
    for (&i, row) in TABLE_ROWS.iter().zip(rows) {
        for (&j, v) in [0usize, 1, 3].iter().zip(row) {
            cells.push((i, j, r(v)));
        }
    }
    PotentialTable::from_cells(&cells).expect("fixture table is valid")
}

/// Table under which the Prentice, Wu and VanderWeele criteria hold while
/// `HR(T→Y) = 0.235`.
pub fn prentice_table() -> PotentialTable<Rational> {
    binary_table(&PRENTICE_TABLE)
}

/// Table under which the principal-surrogate criterion holds while
/// `HR(T→Y) = 0.235`.
pub fn principal_table() -> PotentialTable<Rational> {
    binary_table(&PRINCIPAL_TABLE)
}

/// Six equally likely strong-surrogate types with `HR(T→Y) = 1`.
pub fn strong3_table() -> StrongTable3<Rational> {
    let sixth = Rational::from_ratio(1, 6);
    let cells: Vec<_> = [(5, 2), (1, 4), (2, 4), (1, 5), (2, 6), (5, 6)]
        .into_iter()
        .map(|(i, j)| (i, j, sixth.clone()))
        .collect();
    StrongTable3::from_cells(&cells).expect("fixture table is valid")
}

fn ev(quantity: &'static str, value: Expected, origin: Origin, anchor: &'static str) -> ExpectedValue {
    ExpectedValue {
        quantity,
        value,
        origin,
        anchor,
    }
}

pub fn fixtures() -> Vec<ExampleFixture> {
    use Expected::*;
    use Origin::*;
    let exact = |s: &str| Exact(r(s));
    let prentice_gauss = GaussianParams::prentice(-2.0, 1.0, -4.0, 1.0, 1.0);
    let principal_gauss = GaussianParams::principal(1.0, 1.0, 1.0, 1.0);
    let phi_half = Normal::standard().cdf(-0.5);
    vec![
        ExampleFixture {
            name: "prentice_binary",
            description: "binary world satisfying the Prentice criterion in which the paradox manifests",
            world: FixtureWorld::Binary(prentice_table()),
            expected: vec![
                ev("hr_t_y", exact("0.235"), Reported, "harm rate of the Prentice counterexample"),
                ev("ace_t_y", exact("0.03"), Reported, "average causal effect of the Prentice counterexample"),
                ev("hr_t_s", exact("0"), Reported, "no unit harmed on the surrogate"),
                ev("hr_s_y_t0", exact("0"), Reported, "no unit harmed by the surrogate"),
                ev("hr_s_y_t1", exact("0"), Reported, "no unit harmed by the surrogate"),
                ev("p_s1_t0", exact("0.4"), Derived, "sum of the cells with S0 = 1"),
                ev("p_s1_t1", exact("0.8"), Derived, "sum of the cells with S1 = 1"),
                ev("prentice.p_y1_t0_s0", exact("0.5"), Reported, "Prentice conditionals"),
                ev("prentice.p_y1_t1_s0", exact("0.5"), Reported, "Prentice conditionals"),
                ev("prentice.p_y1_t0_s1", exact("0.75"), Reported, "Prentice conditionals"),
                ev("prentice.p_y1_t1_s1", exact("0.75"), Reported, "Prentice conditionals"),
                ev("prentice.holds", Holds(true), Reported, "Prentice criterion satisfied"),
                ev("paradox(c1=0,c2=0)", Verdict(ParadoxVerdict::Manifests), Reported, "paradox manifests"),
                ev("paradox_c1_only(c1=0)", Verdict(ParadoxVerdict::Manifests), Derived, "0.235 > 0"),
                ev("paradox_c1_only(c1=0.3)", Verdict(ParadoxVerdict::Absent), Derived, "0.235 <= 0.3"),
            ],
        },
        ExampleFixture {
            name: "principal_binary",
            description: "binary world satisfying the principal-surrogate criterion in which the paradox manifests",
            world: FixtureWorld::Binary(principal_table()),
            expected: vec![
                ev("hr_t_y", exact("0.235"), Reported, "harm rate of the principal counterexample"),
                ev("principal.y0_s0", exact("1/3"), Reported, "stratum conditionals"),
                ev("principal.y1_s0", exact("1/3"), Reported, "stratum conditionals"),
                ev("principal.y0_s1", exact("3/10"), Reported, "stratum conditionals"),
                ev("principal.y1_s1", exact("3/10"), Reported, "stratum conditionals"),
                ev("principal.holds", Holds(true), Reported, "principal-surrogate criterion satisfied"),
                ev("paradox(c1=0,c2=0)", Verdict(ParadoxVerdict::Manifests), Reported, "paradox manifests"),
            ],
        },
        ExampleFixture {
            name: "strong3",
            description: "three-level strong surrogate with HR(T→Y) exceeding HR(T→S) + HR(S→Y)",
            world: FixtureWorld::Strong3(strong3_table()),
            expected: vec![
                ev("hr_t_s", exact("0"), Reported, "three-level strong surrogate counterexample"),
                ev("hr_s_y", exact("2/3"), Reported, "three-level strong surrogate counterexample"),
                ev("hr_t_y", exact("1"), Reported, "three-level strong surrogate counterexample"),
            ],
        },
        ExampleFixture {
            name: "wu_binary",
            description: "the Prentice counterexample read against the Wu criterion",
            world: FixtureWorld::Binary(prentice_table()),
            expected: vec![
                ev("wu.f11", exact("0.75"), Reported, "f(s,t) = E(Y|S=s,T=t)"),
                ev("wu.f10", exact("0.75"), Reported, "f(s,t) = E(Y|S=s,T=t)"),
                ev("wu.f01", exact("0.5"), Reported, "f(s,t) = E(Y|S=s,T=t)"),
                ev("wu.f00", exact("0.5"), Reported, "f(s,t) = E(Y|S=s,T=t)"),
                ev("wu.holds", Holds(true), Reported, "Wu criterion satisfied"),
                ev("hr_t_y", exact("0.235"), Reported, "paradox manifests"),
            ],
        },
        ExampleFixture {
            name: "vanderweele_mixture",
            description: "the Prentice counterexample in both strata of a binary confounder",
            world: FixtureWorld::Mixture(
                MixtureWorld::new(Rational::from_ratio(1, 2), prentice_table(), prentice_table())
                    .expect("valid mixture"),
            ),
            expected: vec![
                ev("vanderweele.holds", Holds(true), Reported, "VanderWeele conditions satisfied"),
                ev("hr_t_y", exact("0.235"), Reported, "paradox manifests"),
            ],
        },
        ExampleFixture {
            name: "gaussian_prentice",
            description: "continuous model with Y independent of T given S yet everyone harmed",
            world: FixtureWorld::Gaussian(prentice_gauss),
            expected: vec![
                ev("tcoef", Within { value: 0.0, tol: 1e-12 }, Reported, "a1 (1 + b2²) - a3 b1 b2 = 0"),
                ev("hr_t_y.analytic", Within { value: 1.0, tol: 0.0 }, Derived, "a1 + a2 b1 = -1 < 0 for every unit"),
                ev("mc.hr_t_y", Within { value: 1.0, tol: 0.0 }, Derived, "deterministic negative effect"),
                ev("mc.hr_t_s", Within { value: 0.0, tol: 0.0 }, Derived, "b1 > 0"),
                ev("mc.hr_s_y_t0", Within { value: 0.0, tol: 0.0 }, Derived, "a2 > 0"),
                ev("mc.hr_s_y_t1", Within { value: 0.0, tol: 0.0 }, Derived, "a2 > 0"),
                ev("mc.slope_t_over_se", Within { value: 0.0, tol: 3.0 }, Derived, "regression of Y on (1, T, S)"),
                ev(
                    "conditional_variance.analytic",
                    Within { value: 9.0, tol: 1e-12 },
                    Derived,
                    "(1 + b2² + a3²) / (1 + b2²)",
                ),
                ev("mc.residual_variance", Recorded, Derived, "empirical Var(Y | T, S)"),
            ],
        },
        ExampleFixture {
            name: "gaussian_principal",
            description: "continuous model satisfying the principal criterion with HR(T→Y) = Φ(-1/2)",
            world: FixtureWorld::Gaussian(principal_gauss),
            expected: vec![
                ev("hr_t_y.analytic", Within { value: phi_half, tol: 1e-12 }, Reported, "Φ(-a1 b1 / 2)"),
                ev("mc.hr_t_y", Within { value: phi_half, tol: 0.005 }, Derived, "Monte Carlo with 10^6 units"),
                ev("mc.hr_t_s", Within { value: 0.0, tol: 0.0 }, Derived, "b1 > 0"),
                ev("mc.hr_s_y_t0", Within { value: 0.0, tol: 0.0 }, Derived, "a1 > 0"),
                ev("mc.hr_s_y_t1", Within { value: 0.0, tol: 0.0 }, Derived, "a1 > 0"),
            ],
        },
    ]
}

pub fn fixture(name: &str) -> Result<ExampleFixture> {
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

fn binary_quantities(t: &PotentialTable<Rational>, out: &mut BTreeMap<&'static str, Computed>) {
    let zero = Rational::from_ratio(0, 1);
    let h = t.harm_profile();
    let obs = t.induced_observed();
    out.insert("hr_t_s", Computed::Exact(h.hr_t_s));
    out.insert("hr_s_y_t0", Computed::Exact(h.hr_s_y_t0));
    out.insert("hr_s_y_t1", Computed::Exact(h.hr_s_y_t1));
    out.insert("hr_t_y", Computed::Exact(h.hr_t_y));
    out.insert("ace_t_y", Computed::Exact(h.ace_t_y));
    out.insert("p_s1_t0", Computed::Exact(obs.ps(0, 1)));
    out.insert("p_s1_t1", Computed::Exact(obs.ps(1, 1)));
    let prentice = t.check_prentice(&zero);
    let names = ["prentice.p_y1_t0_s0", "prentice.p_y1_t1_s0", "prentice.p_y1_t0_s1", "prentice.p_y1_t1_s1"];
    for (name, v) in names.into_iter().zip(prentice.values) {
        if let Some(v) = v {
            out.insert(name, Computed::Exact(v));
        }
    }
    out.insert("prentice.holds", Computed::Bool(prentice.holds));
    let principal = t.check_principal(&zero);
    let names = ["principal.y0_s0", "principal.y1_s0", "principal.y0_s1", "principal.y1_s1"];
    for (name, v) in names.into_iter().zip(principal.values) {
        if let Some(v) = v {
            out.insert(name, Computed::Exact(v));
        }
    }
    out.insert("principal.holds", Computed::Bool(principal.holds));
    let wu = check_wu(&obs, &zero);
    for (name, v) in ["wu.f11", "wu.f10", "wu.f01", "wu.f00"].into_iter().zip(wu.values) {
        if let Some(v) = v {
            out.insert(name, Computed::Exact(v));
        }
    }
    out.insert("wu.holds", Computed::Bool(wu.holds));
    if let Ok(v) = t.detect_paradox(&zero, &zero) {
        out.insert("paradox(c1=0,c2=0)", Computed::Verdict(v));
    }
    if let Ok(v) = t.detect_paradox_c1_only(&zero) {
        out.insert("paradox_c1_only(c1=0)", Computed::Verdict(v));
    }
    if let Ok(v) = t.detect_paradox_c1_only(&r("0.3")) {
        out.insert("paradox_c1_only(c1=0.3)", Computed::Verdict(v));
    }
}

fn compute(world: &FixtureWorld) -> Result<BTreeMap<&'static str, Computed>> {
    let mut out = BTreeMap::new();
    match world {
        FixtureWorld::Binary(t) => binary_quantities(t, &mut out),
        FixtureWorld::Strong3(t) => {
            let p = t.profile();
            out.insert("hr_t_s", Computed::Exact(p.hr_t_s));
            out.insert("hr_s_y", Computed::Exact(p.hr_s_y));
            out.insert("hr_t_y", Computed::Exact(p.hr_t_y));
        }
        FixtureWorld::Mixture(m) => {
            let check = crate::potential::check_vanderweele(m, &Rational::from_ratio(0, 1));
            out.insert("vanderweele.holds", Computed::Bool(check.holds));
            out.insert("hr_t_y", Computed::Exact(m.marginal().harm_profile().hr_t_y));
        }
        FixtureWorld::Gaussian(p) => {
            if p.variant == GaussianModel::Prentice {
                out.insert("tcoef", Computed::Float(gaussian_prentice_tcoef(p)?));
                out.insert(
                    "conditional_variance.analytic",
                    Computed::Float(gaussian_prentice_conditional_variance(p)?),
                );
            }
            out.insert("hr_t_y.analytic", Computed::Float(gaussian_hr(p).hr_t_y));
            let mc = monte_carlo_hr(p, MC_UNITS, MC_SEED)?;
            out.insert("mc.hr_t_y", Computed::Float(mc.hr_t_y));
            out.insert("mc.hr_t_s", Computed::Float(mc.hr_t_s));
            out.insert("mc.hr_s_y_t0", Computed::Float(mc.hr_s_y_t0));
            out.insert("mc.hr_s_y_t1", Computed::Float(mc.hr_s_y_t1));
            out.insert("mc.slope_t_over_se", Computed::Float(mc.slope_t / mc.slope_t_se));
            out.insert("mc.residual_variance", Computed::Float(mc.residual_variance));
        }
    }
    Ok(out)
}

fn matches(expected: &Expected, computed: Option<&Computed>) -> bool {
    match (expected, computed) {
        (Expected::Recorded, _) => true,
        (Expected::Exact(e), Some(Computed::Exact(c))) => e == c,
        (Expected::Within { value, tol }, Some(Computed::Float(c))) => (c - value).abs() <= *tol,
        (Expected::Within { value, tol }, Some(Computed::Exact(c))) => (c.to_f64() - value).abs() <= *tol,
        (Expected::Holds(e), Some(Computed::Bool(c))) => e == c,
        (Expected::Verdict(e), Some(Computed::Verdict(c))) => e == c,
        _ => false,
    }
}

/// Recomputes every expected quantity of `fixture`.
pub fn replay(fixture: &ExampleFixture) -> Result<FixtureReport> {
    let computed = compute(&fixture.world)?;
    let checks: Vec<CheckResult> = fixture
        .expected
        .iter()
        .map(|e| {
            let c = computed.get(e.quantity);
            CheckResult {
                quantity: e.quantity.to_string(),
                expected: e.value.to_string(),
                computed: c.map(|c| c.to_string()).unwrap_or_else(|| "undefined".into()),
                origin: e.origin,
                anchor: e.anchor.to_string(),
                pass: matches(&e.value, c),
            }
        })
        .collect();
    Ok(FixtureReport {
        name: fixture.name.to_string(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

impl ExampleFixture {
    pub fn to_json(&self) -> serde_json::Value {
        let world = match &self.world {
            FixtureWorld::Binary(t) => serde_json::json!({ "binary": t.to_json() }),
            FixtureWorld::Strong3(t) => serde_json::json!({ "strong3": t.to_json() }),
            FixtureWorld::Mixture(m) => serde_json::json!({ "mixture": {
                "weight_w1": m.weight_w1.to_json(),
                "table_w0": m.table_w0.to_json(),
                "table_w1": m.table_w1.to_json(),
            }}),
            FixtureWorld::Gaussian(p) => serde_json::json!({ "gaussian": p }),
        };
        let expected: Vec<_> = self
            .expected
            .iter()
            .map(|e| {
                let value = match &e.value {
                    Expected::Exact(r) => serde_json::json!({ "exact": r.to_json() }),
                    Expected::Within { value, tol } => serde_json::json!({ "value": value, "tol": tol }),
                    Expected::Holds(b) => serde_json::json!({ "holds": b }),
                    Expected::Verdict(v) => serde_json::json!({ "verdict": v }),
                    Expected::Recorded => serde_json::json!("recorded"),
                };
                serde_json::json!({ "quantity": e.quantity, "expected": value, "origin": e.origin, "anchor": e.anchor })
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "description": self.description,
            "world": world,
            "expected": expected,
        })
    }
}
