//! Command implementations behind the `surrogate-paradox` binary.
//!
//! Every `cmd_*` function returns the text to print together with an exit
//! status, so the binary only parses arguments and writes output. Output is a
//! pure function of the input bytes and the flags.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::bounds::{
    is_compatible, is_compatible_cn, lower_curve, nontriviality, paradox_criterion, paradox_criterion_cn,
    sharp_bounds, sharp_bounds_cn, upper_curve, upper_curve_cn, BoundReport, CurveKind, Thresholds, Verdict,
};
use crate::error::{Error, Result};
use crate::fixtures::{fixture, fixtures, replay, FixtureReport};
use crate::inference::{bootstrap_region, curve_region, simulate_counts, BootstrapConfig, TrialData};
use crate::lp::{oracle_bounds, LpStatus};
use crate::potential::{check_threshold, check_wu, random_strong3_world, random_strong_binary_world, random_world};
use crate::scalar::{convert, Mode, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    /// Human-readable report, the default for `examples`.
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected json|csv)")),
        }
    }
}

/// Process exit status. Scripts can tell verdicts apart from failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Success; for bound commands the paradox is excluded or undetermined.
    Ok = 0,
    /// Every world compatible with the data exhibits the paradox.
    Present = 1,
    /// Data incompatible with the premises, an LP mismatch or a failed fixture.
    Failed = 2,
    /// Bad flags or unreadable input.
    Usage = 64,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }

    fn of_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Excluded | Verdict::Indeterminate => ExitStatus::Ok,
            Verdict::Present => ExitStatus::Present,
            Verdict::Incompatible => ExitStatus::Failed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub exit: ExitStatus,
}

/// Flags shared by the analysis commands. Threshold strings are parsed in the
/// selected arithmetic, so `0.1` is exactly 1/10 in rational mode.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    /// Input file; `-` reads standard input.
    pub input: Option<PathBuf>,
    pub c1: String,
    pub c2: String,
    pub c3: Option<String>,
    /// `a:b:step`
    pub grid: Option<String>,
    /// `Some` when a bootstrap was requested.
    pub bootstrap: Option<BootstrapConfig>,
    pub mode: Option<Mode>,
    pub format: Option<Format>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            input: None,
            c1: "0".into(),
            c2: "0".into(),
            c3: None,
            grid: None,
            bootstrap: None,
            mode: None,
            format: None,
        }
    }
}

pub const DEFAULT_GRID: &str = "0:1:0.05";
const MAX_GRID_POINTS: usize = 100_001;

/// Expands `a:b:step` into `a, a + step, ...` up to and including `b` when
/// reachable. Values are exact; the grid is sorted and lies in `[0, 1]`.
pub fn parse_grid(spec: &str) -> Result<Vec<Rational>> {
    let ctx = "--grid";
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(Error::parse(ctx, format!("expected a:b:step, found `{spec}`")));
    };
    let num = |s: &str, what: &str| {
        Rational::parse_decimal(s.trim()).ok_or_else(|| Error::parse(ctx, format!("{what} `{s}` is not a number")))
    };
    let (a, b, step) = (num(a, "start")?, num(b, "end")?, num(step, "step")?);
    let (zero, one) = (Rational::from_ratio(0, 1), Rational::from_ratio(1, 1));
    if a < zero || b > one || a > b {
        return Err(Error::parse(ctx, "need 0 <= a <= b <= 1"));
    }
    if step <= zero {
        return Err(Error::parse(ctx, "step must be positive"));
    }
    let span = (&b - &a) / &step;
    let count = span.to_f64().floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(Error::parse(ctx, format!("grid has {count} points, limit is {MAX_GRID_POINTS}")));
    }
    let grid: Vec<Rational> = (0..count)
        .map(|k| &a + &step * Rational::from_integer(k as i64))
        .filter(|x| *x <= b)
        .collect();
    Ok(grid)
}

fn scalar<T: Scalar>(flag: &str, s: &str) -> Result<T> {
    T::parse_decimal(s.trim()).ok_or_else(|| Error::parse(format!("--{flag}"), format!("not a number: `{s}`")))
}

fn load(cfg: &AnalysisConfig) -> Result<TrialData> {
    match cfg.input.as_deref() {
        None => Err(Error::InvalidParameter("an input file is required (use `-` for stdin)".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            TrialData::parse(&text)
        }
        Some(p) => TrialData::read(p),
    }
}

fn grid<T: Scalar>(cfg: &AnalysisConfig) -> Result<Vec<T>> {
    Ok(parse_grid(cfg.grid.as_deref().unwrap_or(DEFAULT_GRID))?.iter().map(convert).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn opt<T: Scalar>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

macro_rules! dispatch {
    ($mode:expr, $f:ident($($arg:expr),*)) => {
        match $mode {
            Mode::Float => $f::<f64>($($arg),*),
            Mode::Rational => $f::<Rational>($($arg),*),
        }
    };
}

/// Sharp bounds at one `c1`, with the causal-necessity refinement when `c3` is set.
pub fn cmd_bounds(cfg: &AnalysisConfig) -> Result<CommandOutput> {
    let data = load(cfg)?;
    dispatch!(cfg.mode.unwrap_or(Mode::Float), bounds_impl(cfg, &data))
}

fn thresholds<T: Scalar>(cfg: &AnalysisConfig) -> Result<Thresholds<T>> {
    let c3 = cfg.c3.as_deref().map(|s| scalar("c3", s)).transpose()?;
    Thresholds::new(scalar("c1", &cfg.c1)?, scalar("c2", &cfg.c2)?, c3)
}

fn report<T: Scalar>(data: &TrialData, th: &Thresholds<T>) -> Result<BoundReport<T>> {
    let obs = data.observed::<T>();
    match &th.c3 {
        Some(c3) => sharp_bounds_cn(&obs, &th.c1, c3),
        None => sharp_bounds(&obs, &th.c1),
    }
}

fn bounds_impl<T: Scalar>(cfg: &AnalysisConfig, data: &TrialData) -> Result<CommandOutput> {
    let th = thresholds::<T>(cfg)?;
    let rep = report(data, &th)?;
    let stdout = match cfg.format.unwrap_or(Format::Json) {
        Format::Csv => format!(
            "c1,c3,lower,upper,lower_active,upper_active,compatible,verdict\n{},{},{},{},{},{},{},{}\n",
            rep.c1,
            opt(&rep.c3),
            rep.lower,
            rep.upper,
            rep.lower_active,
            rep.upper_active,
            rep.compatible,
            rep.verdict()
        ),
        _ => pretty(&rep.to_json()),
    };
    Ok(CommandOutput {
        stdout,
        exit: ExitStatus::of_verdict(rep.verdict()),
    })
}

/// Lower and upper bound curves over a `c1` grid, with bootstrap bands when requested.
pub fn cmd_curve(cfg: &AnalysisConfig) -> Result<CommandOutput> {
    let data = load(cfg)?;
    dispatch!(cfg.mode.unwrap_or(Mode::Float), curve_impl(cfg, &data))
}

fn curve_impl<T: Scalar>(cfg: &AnalysisConfig, data: &TrialData) -> Result<CommandOutput> {
    let grid = grid::<T>(cfg)?;
    let c3: Option<T> = cfg.c3.as_deref().map(|s| scalar("c3", s)).transpose()?;
    let obs = data.observed::<T>();
    let lower = lower_curve(&obs)?;
    let upper = match &c3 {
        Some(c3) => upper_curve_cn(&obs, c3)?,
        None => upper_curve(&obs)?,
    };
    let compatible: Vec<bool> = grid
        .iter()
        .map(|c1| match &c3 {
            Some(c3) => is_compatible_cn(&obs, c1, c3),
            None => is_compatible(&obs, c1),
        })
        .collect();
    let bands = match &cfg.bootstrap {
        Some(b) => {
            let counts = data
                .counts()
                .ok_or_else(|| Error::InvalidParameter("bootstrap bands need a counts file".into()))?;
            Some(curve_region(counts, &grid, c3.as_ref(), b)?)
        }
        None => None,
    };
    let stdout = match cfg.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("c1,lower,upper,compatible,lower_scenario,upper_scenario");
            if bands.is_some() {
                s.push_str(",lower_band_low,lower_band_high,upper_band_low,upper_band_high,region_low,region_high");
            }
            s.push('\n');
            for (k, c1) in grid.iter().enumerate() {
                write!(
                    s,
                    "{c1},{},{},{},{},{}",
                    lower.eval(c1),
                    upper.eval(c1),
                    compatible[k],
                    lower.scenario(),
                    upper.scenario()
                )
                .expect("write to String");
                if let Some(b) = &bands {
                    let p = &b.points[k];
                    write!(
                        s,
                        ",{},{},{},{},{},{}",
                        p.lower_band.0, p.lower_band.1, p.upper_band.0, p.upper_band.1, p.region.lower_limit, p.region.upper_limit
                    )
                    .expect("write to String");
                }
                s.push('\n');
            }
            s
        }
        _ => {
            let points: Vec<Value> = grid
                .iter()
                .zip(&compatible)
                .map(|(c1, ok)| json!({ "c1": c1.to_json(), "lower": lower.eval(c1).to_json(), "upper": upper.eval(c1).to_json(), "compatible": ok }))
                .collect();
            pretty(&json!({
                "lower_curve": lower.to_json(),
                "upper_curve": upper.to_json(),
                "points": points,
                "bands": bands.as_ref().map(|b| b.to_json()),
            }))
        }
    };
    let exit = if compatible.iter().all(|&c| c) {
        ExitStatus::Ok
    } else {
        ExitStatus::Failed
    };
    Ok(CommandOutput { stdout, exit })
}

/// Paradox verdicts plus the observable criteria on the data.
pub fn cmd_criteria(cfg: &AnalysisConfig) -> Result<CommandOutput> {
    let data = load(cfg)?;
    dispatch!(cfg.mode.unwrap_or(Mode::Float), criteria_impl(cfg, &data))
}

fn criteria_impl<T: Scalar>(cfg: &AnalysisConfig, data: &TrialData) -> Result<CommandOutput> {
    let th = thresholds::<T>(cfg)?;
    let obs = data.observed::<T>();
    let basic = paradox_criterion(&obs, &th.c1)?;
    let cn = th.c3.as_ref().map(|c3| paradox_criterion_cn(&obs, &th.c1, c3)).transpose()?;
    let wu = check_wu(&obs, &T::default_tol());
    let nt = nontriviality(&obs);
    let stdout = match cfg.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("criterion,value\n");
            writeln!(s, "paradox,{basic}").expect("write to String");
            if let Some(v) = cn {
                writeln!(s, "paradox_causal_necessity,{v}").expect("write to String");
            }
            writeln!(s, "wu,{}", wu.holds).expect("write to String");
            writeln!(s, "nontrivial_upper,{}", nt.upper()).expect("write to String");
            writeln!(s, "nontrivial_lower,{}", nt.lower()).expect("write to String");
            s
        }
        _ => pretty(&json!({
            "c1": th.c1.to_json(),
            "c3": th.c3.as_ref().map(Scalar::to_json),
            "paradox": basic,
            "paradox_causal_necessity": cn,
            "wu": {
                "holds": wu.holds,
                "f": wu.values.iter().map(|v| v.as_ref().map(Scalar::to_json)).collect::<Vec<_>>(),
                "f_order": ["f(1,1)", "f(1,0)", "f(0,1)", "f(0,0)"],
                "vacuous": wu.vacuous,
            },
            "nontriviality": nt,
        })),
    };
    Ok(CommandOutput {
        stdout,
        exit: ExitStatus::of_verdict(cn.unwrap_or(basic)),
    })
}

/// Compares the closed-form bounds with LP optima at every grid point.
pub fn cmd_verify(cfg: &AnalysisConfig) -> Result<CommandOutput> {
    let data = load(cfg)?;
    dispatch!(cfg.mode.unwrap_or(Mode::Rational), verify_impl(cfg, &data))
}

fn verify_impl<T: Scalar>(cfg: &AnalysisConfig, data: &TrialData) -> Result<CommandOutput> {
    let points: Vec<T> = match &cfg.grid {
        Some(_) => grid(cfg)?,
        None => vec![scalar("c1", &cfg.c1)?],
    };
    let c2: T = scalar("c2", &cfg.c2)?;
    check_threshold("c2", &c2)?;
    let c3: Option<T> = cfg.c3.as_deref().map(|s| scalar("c3", s)).transpose()?;
    let obs = data.observed::<T>();
    let tol = if T::EXACT { T::zero() } else { T::from_ratio(1, 1_000_000_000) };

    let mut rows = Vec::new();
    let mut max_disc = T::zero();
    let mut mismatches = 0usize;
    for c1 in &points {
        let mut variants = vec![(None, sharp_bounds(&obs, c1)?)];
        if let Some(c3) = &c3 {
            variants.push((Some(c3), sharp_bounds_cn(&obs, c1, c3)?));
        }
        for (c3, closed) in variants {
            let lp = oracle_bounds(&obs, c1, &c2, c3)?;
            let feasible = lp.status == LpStatus::Optimal;
            let disc = match (&lp.min, &lp.max) {
                (Some(lo), Some(hi)) if closed.compatible => {
                    let a = (closed.lower.clone() - lo.clone()).abs();
                    let b = (closed.upper.clone() - hi.clone()).abs();
                    Some(if a > b { a } else { b })
                }
                _ => None,
            };
            if let Some(d) = &disc {
                if *d > max_disc {
                    max_disc = d.clone();
                }
            }
            let agrees = feasible == closed.compatible && disc.as_ref().is_none_or(|d| *d <= tol);
            mismatches += usize::from(!agrees);
            rows.push((c1.clone(), closed, lp, disc, agrees));
        }
    }
    let stdout = match cfg.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("c1,bound,closed_lower,closed_upper,lp_min,lp_max,lp_status,discrepancy,agrees\n");
            for (c1, closed, lp, disc, agrees) in &rows {
                writeln!(
                    s,
                    "{c1},{},{},{},{},{},{:?},{},{agrees}",
                    mode_name(closed),
                    closed.lower,
                    closed.upper,
                    opt(&lp.min),
                    opt(&lp.max),
                    lp.status,
                    opt(disc)
                )
                .expect("write to String");
            }
            s
        }
        _ => pretty(&json!({
            "arithmetic": if T::EXACT { "rational" } else { "float" },
            "c2": c2.to_json(),
            "c3": c3.as_ref().map(Scalar::to_json),
            "max_discrepancy": max_disc.to_json(),
            "mismatches": mismatches,
            "points": rows.iter().map(|(c1, closed, lp, disc, agrees)| json!({
                "c1": c1.to_json(),
                "bound": mode_name(closed),
                "closed_lower": closed.lower.to_json(),
                "closed_upper": closed.upper.to_json(),
                "compatible": closed.compatible,
                "lp_status": lp.status,
                "lp_min": lp.min.as_ref().map(Scalar::to_json),
                "lp_max": lp.max.as_ref().map(Scalar::to_json),
                "discrepancy": disc.as_ref().map(Scalar::to_json),
                "agrees": agrees,
                "note": (lp.status == LpStatus::Infeasible).then_some("data incompatible with the premises"),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(CommandOutput {
        stdout,
        exit: if mismatches == 0 { ExitStatus::Ok } else { ExitStatus::Failed },
    })
}

fn mode_name<T>(r: &BoundReport<T>) -> &'static str {
    match r.mode {
        crate::bounds::BoundMode::Basic => "basic",
        crate::bounds::BoundMode::CausalNecessity => "causal_necessity",
    }
}

/// Bootstrap region at one `c1`, or curve bands when a grid is given.
pub fn cmd_bootstrap(cfg: &AnalysisConfig) -> Result<CommandOutput> {
    let data = load(cfg)?;
    dispatch!(cfg.mode.unwrap_or(Mode::Float), bootstrap_impl(cfg, &data))
}

fn bootstrap_impl<T: Scalar>(cfg: &AnalysisConfig, data: &TrialData) -> Result<CommandOutput> {
    let counts = data
        .counts()
        .ok_or_else(|| Error::InvalidParameter("bootstrap needs a counts file (header t,y,s,count)".into()))?;
    let boot = cfg.bootstrap.unwrap_or_default();
    let c3: Option<T> = cfg.c3.as_deref().map(|s| scalar("c3", s)).transpose()?;
    let format = cfg.format.unwrap_or(Format::Json);
    if cfg.grid.is_some() {
        let bands = curve_region(counts, &grid::<T>(cfg)?, c3.as_ref(), &boot)?;
        let agrees = bands.audit.as_ref().is_none_or(|a| a.agrees);
        let kind = if c3.is_some() { CurveKind::UpperCn } else { CurveKind::Upper };
        let stdout = match format {
            Format::Csv => bands.to_csv(kind),
            _ => pretty(&bands.to_json()),
        };
        let exit = if agrees { ExitStatus::Ok } else { ExitStatus::Failed };
        return Ok(CommandOutput { stdout, exit });
    }
    let c1: T = scalar("c1", &cfg.c1)?;
    let region = bootstrap_region(counts, &c1, c3.as_ref(), &boot)?;
    let stdout = match format {
        Format::Csv => format!(
            "c1,point_lower,point_upper,lower_limit,upper_limit\n{},{},{},{},{}\n",
            region.c1, region.point_lower, region.point_upper, region.lower_limit, region.upper_limit
        ),
        _ => pretty(&region.to_json()),
    };
    let agrees = region.audit.as_ref().is_none_or(|a| a.agrees);
    Ok(CommandOutput {
        stdout,
        exit: if agrees { ExitStatus::Ok } else { ExitStatus::Failed },
    })
}

/// Replays one named fixture, or all of them.
pub fn cmd_examples(name: Option<&str>, format: Option<Format>) -> Result<CommandOutput> {
    let selected = match name {
        Some(n) => vec![fixture(n)?],
        None => fixtures(),
    };
    let reports: Vec<FixtureReport> = selected.iter().map(replay).collect::<Result<_>>()?;
    let stdout = match format.unwrap_or(Format::Text) {
        Format::Json => pretty(&serde_json::to_value(&reports).expect("reports serialise")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["fixture", "quantity", "expected", "computed", "origin", "pass"])?;
            for r in &reports {
                for c in &r.checks {
                    let origin = serde_json::to_value(c.origin).expect("origin serialises");
                    w.write_record([
                        r.name.as_str(),
                        &c.quantity,
                        &c.expected,
                        &c.computed,
                        origin.as_str().unwrap_or_default(),
                        if c.pass { "true" } else { "false" },
                    ])?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?).expect("CSV output is UTF-8")
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name).expect("write to String");
                for c in &r.checks {
                    writeln!(
                        s,
                        "  {} {:<28} expected {:<28} computed {}",
                        if c.pass { "ok  " } else { "FAIL" },
                        c.quantity,
                        c.expected,
                        c.computed
                    )
                    .expect("write to String");
                }
            }
            s
        }
    };
    let exit = if reports.iter().all(|r| r.pass) {
        ExitStatus::Ok
    } else {
        ExitStatus::Failed
    };
    Ok(CommandOutput { stdout, exit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorldKind {
    /// Unrestricted binary table.
    Binary,
    /// Binary table with no direct effect of treatment on the outcome.
    Strong,
    /// Three-level strong-surrogate table.
    Strong3,
}

impl std::str::FromStr for WorldKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "binary" => Ok(WorldKind::Binary),
            "strong" => Ok(WorldKind::Strong),
            "strong3" => Ok(WorldKind::Strong3),
            other => Err(format!("unknown world kind `{other}` (expected binary|strong|strong3)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateConfig {
    pub kind: WorldKind,
    pub seed: u64,
    pub concentration: f64,
    /// When set, also draws a trial with this many units per arm.
    pub units: Option<u64>,
    pub format: Option<Format>,
}

/// Random world with its harm rates; optionally a simulated trial from it.
pub fn cmd_simulate(cfg: &SimulateConfig) -> Result<CommandOutput> {
    let format = cfg.format.unwrap_or(Format::Json);
    let (world, harm, observed) = match cfg.kind {
        WorldKind::Strong3 => {
            if cfg.units.is_some() {
                return Err(Error::InvalidParameter("--units needs a binary world".into()));
            }
            let w = random_strong3_world::<Rational>(cfg.seed, cfg.concentration)?;
            let p = w.profile();
            let harm = json!({
                "hr_t_s": p.hr_t_s.to_json(),
                "hr_s_y": p.hr_s_y.to_json(),
                "hr_t_y": p.hr_t_y.to_json(),
            });
            (w.to_json(), harm, None)
        }
        kind => {
            let w = if kind == WorldKind::Strong {
                random_strong_binary_world::<Rational>(cfg.seed, cfg.concentration)?
            } else {
                random_world::<Rational>(cfg.seed, cfg.concentration)?
            };
            let h = w.harm_profile();
            let harm = json!({
                "hr_t_s": h.hr_t_s.to_json(),
                "hr_s_y_t0": h.hr_s_y_t0.to_json(),
                "hr_s_y_t1": h.hr_s_y_t1.to_json(),
                "hr_t_y": h.hr_t_y.to_json(),
                "ace_t_y": h.ace_t_y.to_json(),
            });
            (w.to_json(), harm, Some(w.induced_observed()))
        }
    };
    if let (Some(units), Some(obs)) = (cfg.units, &observed) {
        let counts = simulate_counts(&obs.map(convert::<Rational, f64>), units, cfg.seed)?;
        let stdout = match format {
            Format::Csv => counts.to_csv(),
            _ => pretty(&counts.to_json()),
        };
        return Ok(CommandOutput {
            stdout,
            exit: ExitStatus::Ok,
        });
    }
    let stdout = match format {
        Format::Csv => match &observed {
            Some(obs) => {
                let mut s = String::from("t,y,s,p\n");
                for t in 0..2 {
                    for y in 0..2 {
                        for sv in 0..2 {
                            writeln!(s, "{t},{y},{sv},{}", obs.p(t, y, sv)).expect("write to String");
                        }
                    }
                }
                s
            }
            None => return Err(Error::InvalidParameter("CSV output needs a binary world".into())),
        },
        _ => pretty(&json!({
            "seed": cfg.seed,
            "concentration": cfg.concentration,
            "world": world,
            "harm": harm,
            "observed": observed.as_ref().map(|o| o.to_json()),
        })),
    };
    Ok(CommandOutput {
        stdout,
        exit: ExitStatus::Ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:1:0.25").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[4], Rational::from_ratio(1, 1));
        assert_eq!(parse_grid("0.1:0.3:0.1").unwrap().len(), 3);
        assert_eq!(parse_grid("0:0.5:0.3").unwrap().len(), 2);
        assert_eq!(parse_grid("0.2:0.2:1").unwrap().len(), 1);
        for bad in ["0:1", "0:2:0.1", "0.5:0.1:0.1", "0:1:0", "0:1:-1", "a:1:0.1", "0:1:1e-9"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [ExitStatus::Ok, ExitStatus::Present, ExitStatus::Failed, ExitStatus::Usage].map(ExitStatus::code);
        assert_eq!(codes, [0, 1, 2, 64]);
    }
}
