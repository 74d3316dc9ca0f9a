//! Closed-form sharp bounds on HR(T→Y) from observed arms, in both arithmetics.

use surrogate_paradox::bounds::{nontriviality, saturation_c3, sharp_bounds, sharp_bounds_cn};
use surrogate_paradox::{ObservedDist, Rational, Scalar};

fn main() -> surrogate_paradox::Result<()> {
    // P(Y=y, S=s | T=t) listed as [P00, P01, P10, P11] per arm.
    let arms = (["0.40", "0.18", "0.18", "0.24"], ["0.38", "0.16", "0.14", "0.32"]);
    let parse = |a: [&str; 4]| a.map(|s| Rational::parse_decimal(s).expect("decimal literal"));
    let exact = ObservedDist::from_arms(parse(arms.0), parse(arms.1))?;

    for c1 in ["0", "0.05", "0.1"] {
        let c1 = Rational::parse_decimal(c1).expect("decimal literal");
        let basic = sharp_bounds(&exact, &c1)?;
        let refined = sharp_bounds_cn(&exact, &c1, &Rational::new(1, 50))?;
        println!(
            "c1 = {c1}: [{}, {}] verdict {}; with c3 = 1/50 upper {} (term {})",
            basic.lower,
            basic.upper,
            basic.verdict(),
            refined.upper,
            refined.upper_active
        );
        println!("  c3 beyond which the refinement has no effect: {}", saturation_c3(&exact, &c1));
    }

    let float: ObservedDist<f64> = exact.map(|x| x.to_f64());
    let report = sharp_bounds(&float, &0.05)?;
    println!("float mode at c1 = 0.05: [{}, {}]", report.lower, report.upper);
    println!("nontriviality: {:?}", nontriviality(&exact));
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serialisable"));
    Ok(())
}
