//! Acceptance suite: one PASS/FAIL line per criterion, then a summary.
//!
//! Runs without the libtest harness so every line is printed even when a
//! criterion fails. The process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{c1_grid, c3_values, r, random_observed};
use num_traits::Zero;
use rayon::prelude::*;
use surrogate_paradox::bounds::{
    lower_curve, sharp_bounds, sharp_bounds_cn, upper_curve, upper_curve_cn, BoundReport, CurveKind,
    PiecewiseCurve,
};
use surrogate_paradox::fixtures::{fixture, prentice_table, principal_table, replay, strong3_table};
use surrogate_paradox::inference::{bootstrap_region, curve_region, BootstrapConfig, TrialCounts, TrialData};
use surrogate_paradox::lp::{add_causal_necessity, build_program, c2_invariance_map, solve_min_max, witness_table, LpSolution};
use surrogate_paradox::potential::{check_wu, random_strong_binary_world, ParadoxVerdict};
use surrogate_paradox::{ObservedDist, Rational};

const INSTANCES: u64 = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok.into() }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn within(elapsed: Duration, budget: Duration, failures: &mut Vec<String>) {
    if elapsed > budget {
        failures.push(format!("took {:.1}s, budget {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()));
    }
}

fn expect_eq<A: PartialEq + std::fmt::Display>(what: &str, got: A, want: A, failures: &mut Vec<String>) {
    if got != want {
        failures.push(format!("{what}: computed {got}, expected {want}"));
    }
}

// ---------------------------------------------------------------- golden worlds

fn golden_prentice() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let t = prentice_table();
    let h = t.harm_profile();
    expect_eq("HR(T→Y)", h.hr_t_y, r(47, 200), &mut f);
    expect_eq("ACE(T→Y)", h.ace_t_y, r(3, 100), &mut f);
    let zero = r(0, 1);
    let p = t.check_prentice(&zero);
    if p.values != [r(1, 2), r(1, 2), r(3, 4), r(3, 4)].map(Some).to_vec() || !p.holds {
        f.push(format!("Prentice conditionals {:?}", p.values));
    }
    if !check_wu(&t.induced_observed(), &zero).holds {
        f.push("Wu criterion fails".into());
    }
    match t.detect_paradox(&zero, &zero) {
        Ok(ParadoxVerdict::Manifests) => {}
        other => f.push(format!("verdict {other:?}")),
    }
    within(start.elapsed(), Duration::from_secs(1), &mut f);
    outcome(&f, "HR 0.235, ACE 0.03, conditionals (0.5, 0.5, 0.75, 0.75), Wu holds, Manifests")
}

fn golden_principal() -> Outcome {
    let mut f = Vec::new();
    let t = principal_table();
    let c = t.check_principal(&r(0, 1));
    let want = [r(1, 3), r(1, 3), r(3, 10), r(3, 10)];
    for (k, (got, want)) in c.values.iter().zip(want).enumerate() {
        match got {
            Some(v) if *v == want => {}
            other => f.push(format!("stratum conditional {}: computed {:?}, expected {want}", k + 1, other)),
        }
    }
    expect_eq("HR(T→Y)", t.harm_profile().hr_t_y, r(47, 200), &mut f);
    outcome(&f, "conditionals (1/3, 1/3, 3/10, 3/10), HR 0.235")
}

fn golden_strong3() -> Outcome {
    let mut f = Vec::new();
    let p = strong3_table().profile();
    expect_eq("HR(T→S)", p.hr_t_s, r(0, 1), &mut f);
    expect_eq("HR(S→Y)", p.hr_s_y, r(2, 3), &mut f);
    expect_eq("HR(T→Y)", p.hr_t_y, r(1, 1), &mut f);
    outcome(&f, "(0, 2/3, 1)")
}

fn strong_binary_impossibility() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let violations: usize = (0..10_000u64)
        .into_par_iter()
        .map(|seed| {
            let h = random_strong_binary_world::<Rational>(seed, 0.5).expect("valid").harm_profile();
            let hr_s_y = h.hr_s_y_t0.clone().max(h.hr_s_y_t1.clone());
            usize::from(h.hr_t_y > &h.hr_t_s + &hr_s_y)
        })
        .sum();
    if violations > 0 {
        f.push(format!("{violations} violations"));
    }
    within(start.elapsed(), Duration::from_secs(10), &mut f);
    outcome(&f, format!("0 violations in 10000 worlds ({:.2}s)", start.elapsed().as_secs_f64()))
}

// ---------------------------------------------------------------- LP sweep

/// `(feasible, min, max)` of one program.
type Optimum = (bool, Option<Rational>, Option<Rational>);

struct Cell {
    basic: BoundReport<Rational>,
    /// LP at c2 = 0, 1/2, 1.
    by_c2: [Optimum; 3],
    /// Whether the c2 map preserved arms, HR(T→S) and HR(T→Y) and zeroed HR(S→Y)
    /// on the c2 = 1 max-witness; `None` when infeasible.
    map_ok: Option<bool>,
    /// Closed form and LP at each c3 (c2 = 0).
    cn: Vec<(BoundReport<Rational>, Optimum)>,
}

struct Sweep {
    cells: Vec<Cell>,
    elapsed: Duration,
}

fn optimum(sol: (LpSolution<Rational>, LpSolution<Rational>)) -> (Optimum, Option<Vec<Rational>>) {
    let (lo, hi) = sol;
    let witness = hi.witness().map(<[Rational]>::to_vec);
    ((lo.value().is_some() && hi.value().is_some(), lo.value().cloned(), hi.value().cloned()), witness)
}

fn sweep_instance(obs: &ObservedDist<Rational>) -> Vec<Cell> {
    c1_grid()
        .into_iter()
        .map(|c1| {
            let basic = sharp_bounds(obs, &c1).expect("valid thresholds");
            let mut map_ok = None;
            let by_c2 = [r(0, 1), r(1, 2), r(1, 1)].map(|c2| {
                let (opt, witness) = optimum(solve_min_max(&build_program(obs, &c1, &c2).expect("valid program")));
                if c2 == r(1, 1) {
                    map_ok = witness.map(|w| {
                        let q = witness_table(&w).expect("witness is a table");
                        let m = c2_invariance_map(&q).expect("map yields a table");
                        let (a, b) = (q.harm_profile(), m.harm_profile());
                        q.induced_observed() == m.induced_observed()
                            && a.hr_t_y == b.hr_t_y
                            && a.hr_t_s == b.hr_t_s
                            && b.hr_s_y_t0.is_zero()
                            && b.hr_s_y_t1.is_zero()
                    });
                }
                opt
            });
            let cn = c3_values()
                .into_iter()
                .map(|c3| {
                    let closed = sharp_bounds_cn(obs, &c1, &c3).expect("valid thresholds");
                    let lp = add_causal_necessity(build_program(obs, &c1, &r(0, 1)).expect("valid"), &c3).expect("valid");
                    (closed, optimum(solve_min_max(&lp)).0)
                })
                .collect();
            Cell { basic, by_c2, map_ok, cn }
        })
        .collect()
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let cells = (0..INSTANCES)
            .into_par_iter()
            .flat_map_iter(|seed| sweep_instance(&random_observed(seed)))
            .collect();
        Sweep { cells, elapsed: start.elapsed() }
    })
}

fn agrees(closed: &BoundReport<Rational>, lp: &Optimum) -> bool {
    closed.compatible == lp.0 && (!lp.0 || (lp.1.as_ref() == Some(&closed.lower) && lp.2.as_ref() == Some(&closed.upper)))
}

fn check_sharpness(cells: &[Cell]) -> (Vec<String>, usize, usize) {
    let (mut basic_bad, mut cn_bad, mut feasible, mut total) = (0, 0, 0, 0);
    for c in cells {
        total += 1 + c.cn.len();
        feasible += usize::from(c.by_c2[0].0) + c.cn.iter().filter(|(_, o)| o.0).count();
        basic_bad += usize::from(!agrees(&c.basic, &c.by_c2[0]));
        cn_bad += c.cn.iter().filter(|(closed, lp)| !agrees(closed, lp)).count();
    }
    let mut f = Vec::new();
    if basic_bad > 0 {
        f.push(format!("{basic_bad} basic-bound discrepancies"));
    }
    if cn_bad > 0 {
        f.push(format!("{cn_bad} causal-necessity discrepancies"));
    }
    (f, feasible, total)
}

fn sharpness() -> Outcome {
    let s = sweep();
    let (mut f, feasible, total) = check_sharpness(&s.cells);
    within(s.elapsed, Duration::from_secs(600), &mut f);
    outcome(
        &f,
        format!(
            "{total} comparisons ({feasible} feasible, rest agreed infeasible), 0 discrepancies, {:.0}s",
            s.elapsed.as_secs_f64()
        ),
    )
}

fn check_c2(cells: &[Cell]) -> (Vec<String>, usize) {
    let mut f = Vec::new();
    let differing = cells.iter().filter(|c| c.by_c2[1] != c.by_c2[0] || c.by_c2[2] != c.by_c2[0]).count();
    if differing > 0 {
        f.push(format!("{differing} instances with c2-dependent optima"));
    }
    let mapped: Vec<bool> = cells.iter().filter_map(|c| c.map_ok).collect();
    let broken = mapped.iter().filter(|ok| !**ok).count();
    if broken > 0 {
        f.push(format!("map broke {broken} of {} witnesses", mapped.len()));
    }
    (f, mapped.len())
}

fn c2_independence() -> Outcome {
    let (f, witnesses) = check_c2(&sweep().cells);
    outcome(&f, format!("optima identical for c2 in {{0, 0.5, 1}}; map preserved all {witnesses} max-witnesses"))
}

fn check_cn_structure(cells: &[Cell]) -> Vec<String> {
    let (mut above, mut lower_moved, mut full_differs) = (0, 0, 0);
    for c in cells {
        for (closed, lp) in &c.cn {
            above += usize::from(closed.upper > c.basic.upper);
            if lp.0 && lp.1.as_ref() != Some(&c.basic.lower) {
                lower_moved += 1;
            }
            if closed.c3 == Some(r(1, 1)) && closed.upper != c.basic.upper {
                full_differs += 1;
            }
        }
    }
    let mut f = Vec::new();
    for (n, what) in [(above, "refined upper above basic upper"), (lower_moved, "constrained LP minimum differs from L"), (full_differs, "refined upper at c3 = 1 differs from U")] {
        if n > 0 {
            f.push(format!("{n} cases: {what}"));
        }
    }
    f
}

fn cn_structure() -> Outcome {
    let f = check_cn_structure(&sweep().cells);
    outcome(&f, "refined upper <= U, LP minimum unchanged, refined upper at c3 = 1 equals U")
}

// ---------------------------------------------------------------- curves

fn check_curves(obs: &ObservedDist<Rational>) -> Vec<String> {
    let mut f = Vec::new();
    let grid: Vec<Rational> = (0..=100).map(|k| r(k, 100)).collect();
    let flat_or = |c: &PiecewiseCurve<Rational>, s: i64| c.segments.iter().all(|seg| seg.slope.is_zero() || seg.slope == r(s, 1));
    let up = upper_curve(obs).expect("valid");
    let lo = lower_curve(obs).expect("valid");
    if !flat_or(&up, 1) {
        f.push("upper slope outside {0, 1}".into());
    }
    if !flat_or(&lo, -1) {
        f.push("lower slope outside {0, -1}".into());
    }
    let cn: Vec<_> = c3_values().into_iter().map(|c3| (upper_curve_cn(obs, &c3).expect("valid"), c3)).collect();
    for (curve, _) in &cn {
        if !flat_or(curve, 1) {
            f.push("refined upper slope outside {0, 1}".into());
        }
    }
    for c1 in &grid {
        let b = sharp_bounds(obs, c1).expect("valid");
        if up.eval(c1) != b.upper || lo.eval(c1) != b.lower {
            f.push(format!("curve differs from pointwise bound at c1 = {c1}"));
        }
        for (curve, c3) in &cn {
            if curve.eval(c1) != sharp_bounds_cn(obs, c1, c3).expect("valid").upper {
                f.push(format!("refined curve differs at c1 = {c1}, c3 = {c3}"));
            }
        }
    }
    f
}

fn piecewise_curves() -> Outcome {
    let f: Vec<String> = (0..100u64).flat_map(|seed| check_curves(&random_observed(seed))).collect();
    outcome(&f, "slopes in {0, 1} / {0, -1}; exact agreement at 101 points on 100 instances")
}

// ---------------------------------------------------------------- Monte Carlo and bootstrap

fn gaussian_fixtures() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    for name in ["gaussian_principal", "gaussian_prentice"] {
        let report = replay(&fixture(name).expect("registered")).expect("replays");
        for c in report.checks.iter().filter(|c| !c.pass) {
            f.push(format!("{name} {}: computed {}, expected {}", c.quantity, c.computed, c.expected));
        }
    }
    within(start.elapsed(), Duration::from_secs(30), &mut f);
    outcome(
        &f,
        format!("principal HR within 0.005 of Φ(-1/2); Prentice HR = 1, |slope| <= 3 SE ({:.1}s)", start.elapsed().as_secs_f64()),
    )
}

fn synthetic_counts() -> TrialCounts {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/synthetic_trial.csv");
    TrialData::read(&path).expect("bundled data").counts().expect("counts").clone()
}

fn check_bootstrap(counts: &TrialCounts, c3: Option<&f64>) -> Vec<String> {
    let mut f = Vec::new();
    let cfg = |level| BootstrapConfig { replicates: 500, seed: 2024, level };
    let a = bootstrap_region::<f64>(counts, &0.02, c3, &cfg(0.95)).expect("runs");
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(2)
        .build()
        .expect("pool")
        .install(|| bootstrap_region::<f64>(counts, &0.02, c3, &cfg(0.95)).expect("runs"));
    if serde_json::to_string(&a.to_json()).ok() != serde_json::to_string(&b.to_json()).ok() {
        f.push("fixed-seed regions differ".into());
    }
    let half = bootstrap_region::<f64>(counts, &0.02, c3, &cfg(0.5)).expect("runs");
    if !a.contains(&half) {
        f.push("95% region does not contain 50% region".into());
    }
    if !a.audit.as_ref().is_some_and(|x| x.agrees) {
        f.push("exact LP audit disagrees".into());
    }
    f
}

fn bootstrap_sanity() -> Outcome {
    let counts = synthetic_counts();
    let mut f = check_bootstrap(&counts, None);
    f.extend(check_bootstrap(&counts, Some(&0.05)));
    // 10^6 units per arm with the same proportions.
    let big = TrialCounts::new(counts.n.map(|a| a.map(|b| b.map(|x| x * 200)))).expect("valid");
    let cfg = BootstrapConfig { replicates: 200, seed: 1, level: 0.95 };
    for c3 in [None, Some(0.05)] {
        let reg = bootstrap_region::<f64>(&big, &0.02, c3.as_ref(), &cfg).expect("runs");
        let gap = (reg.point_lower - reg.lower_limit).max(reg.upper_limit - reg.point_upper);
        if gap > 0.005 {
            f.push(format!("endpoints {gap:.4} from point estimates at n = 10^6"));
        }
    }
    outcome(&f, "byte-identical under a fixed seed, 95% ⊇ 50%, endpoints within 0.005 at 10^6 per arm")
}

fn synthetic_pipeline() -> Outcome {
    let mut f = Vec::new();
    let counts = synthetic_counts();
    let exact: ObservedDist<Rational> = counts.estimate();
    let float: ObservedDist<f64> = counts.estimate();

    let b = sharp_bounds(&float, &0.0).expect("bounds");
    if !b.compatible {
        f.push("bundled data incompatible at c1 = 0".into());
    }
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 100.0).collect();
    for c3 in [0.0, 0.02, 0.05, 0.1] {
        let bands = curve_region(&counts, &grid, Some(&c3), &BootstrapConfig { replicates: 500, seed: 3, level: 0.95 })
            .expect("bands");
        if bands.to_csv(CurveKind::UpperCn).lines().count() != grid.len() + 1 {
            f.push(format!("band CSV at c3 = {c3} has wrong length"));
        }
        for p in &bands.points {
            if p.region.lower_limit > p.region.point_lower || p.region.upper_limit < p.region.point_upper {
                f.push(format!("region misses point estimate at c1 = {}", p.c1));
            }
        }
    }
    let cells = sweep_instance(&exact);
    f.extend(check_sharpness(&cells).0);
    f.extend(check_c2(&cells).0);
    f.extend(check_cn_structure(&cells));
    f.extend(check_curves(&exact));
    f.extend(check_bootstrap(&counts, Some(&0.02)));
    outcome(&f, format!("counts → bounds [{:.3}, {:.3}] → refined curves → bands; all property checks pass", b.lower, b.upper))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden Prentice table", golden_prentice),
        ("golden principal-surrogate table", golden_principal),
        ("golden three-level strong surrogate", golden_strong3),
        ("strong binary surrogate impossibility", strong_binary_impossibility),
        ("sharpness against the LP", sharpness),
        ("c2 independence", c2_independence),
        ("causal-necessity bound structure", cn_structure),
        ("piecewise bound curves", piecewise_curves),
        ("Gaussian fixtures", gaussian_fixtures),
        ("bootstrap determinism and sanity", bootstrap_sanity),
        ("end-to-end pipeline on synthetic trial", synthetic_pipeline),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>().map(String::as_str).or(e.downcast_ref::<&str>().copied()).unwrap_or("?")
            ),
        });
        failed += usize::from(!result.pass);
        println!("{} {name}: {}", if result.pass { "PASS" } else { "FAIL" }, result.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
