//! Piecewise-linear bound curves in c1 with exact breakpoints, exported as CSV.

use surrogate_paradox::bounds::{lower_curve, upper_curve, upper_curve_cn};
use surrogate_paradox::cli::parse_grid;
use surrogate_paradox::{ObservedDist, Rational};

fn main() -> surrogate_paradox::Result<()> {
    let r = |n, d| Rational::new(n, d);
    let obs = ObservedDist::from_arms(
        [r(40, 100), r(18, 100), r(18, 100), r(24, 100)],
        [r(38, 100), r(16, 100), r(14, 100), r(32, 100)],
    )?;
    let upper = upper_curve(&obs)?;
    let lower = lower_curve(&obs)?;
    println!("upper: scenario {}, breakpoints {:?}", upper.scenario(), upper.interior_breakpoints());
    println!("lower: scenario {}, breakpoints {:?}", lower.scenario(), lower.interior_breakpoints());
    for c3 in [r(0, 1), r(1, 50), r(1, 20), r(1, 10)] {
        let refined = upper_curve_cn(&obs, &c3)?;
        let segs: Vec<String> = refined
            .segments
            .iter()
            .map(|s| format!("{} + {}·c1", s.intercept, s.slope))
            .collect();
        println!("refined upper at c3 = {c3}: {}", segs.join(" | "));
    }
    let grid = parse_grid("0:0.2:0.05")?;
    print!("{}", upper.to_csv(&grid));
    Ok(())
}
