//! End to end on the bundled synthetic trial: counts, bounds, refined
//! curves at several c3, and bootstrap bands.

use std::path::Path;

use surrogate_paradox::bounds::{sharp_bounds, upper_curve_cn};
use surrogate_paradox::cli::parse_grid;
use surrogate_paradox::inference::{curve_region, BootstrapConfig, TrialData};
use surrogate_paradox::scalar::convert;

fn main() -> surrogate_paradox::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/synthetic_trial.csv");
    let data = TrialData::read(&path)?;
    let counts = data.counts().expect("bundled file holds counts");
    let obs = data.observed::<f64>();

    let b = sharp_bounds(&obs, &0.0)?;
    println!("c1 = 0: HR(T→Y) in [{:.4}, {:.4}]", b.lower, b.upper);

    let grid: Vec<f64> = parse_grid("0:0.1:0.02")?.iter().map(convert).collect();
    for c3 in [0.0, 0.02, 0.05, 0.1] {
        let curve = upper_curve_cn(&obs, &c3)?;
        let values: Vec<String> = grid.iter().map(|c1| format!("{:.3}", curve.eval(c1))).collect();
        println!("c3 = {c3:<4}: {}", values.join(" "));
    }

    let cfg = BootstrapConfig { replicates: 500, seed: 1, level: 0.95 };
    let bands = curve_region(counts, &grid, Some(&0.02), &cfg)?;
    print!("{}", bands.to_csv(surrogate_paradox::bounds::CurveKind::UpperCn));
    Ok(())
}
