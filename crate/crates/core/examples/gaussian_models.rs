//! Continuous structural models: analytic harm rates against Monte Carlo.

use surrogate_paradox::fixtures::{gaussian_hr, gaussian_prentice_tcoef, monte_carlo_hr, GaussianParams};

fn main() -> surrogate_paradox::Result<()> {
    let prentice = GaussianParams::prentice(-2.0, 1.0, -4.0, 1.0, 1.0);
    println!("Prentice-type model: coefficient of T in E(Y|T,S) = {}", gaussian_prentice_tcoef(&prentice)?);
    println!("  analytic HR(T→Y) = {}", gaussian_hr(&prentice).hr_t_y);
    let mc = monte_carlo_hr(&prentice, 1_000_000, 2024)?;
    println!(
        "  simulated HR(T→Y) = {}, slope on T = {:.4} (SE {:.4}), Var(Y|T,S) ≈ {:.3}",
        mc.hr_t_y, mc.slope_t, mc.slope_t_se, mc.residual_variance
    );

    for a1 in [0.5, 1.0, 2.0] {
        let p = GaussianParams::principal(a1, 1.0, 1.0, 1.0);
        let mc = monte_carlo_hr(&p, 200_000, 7)?;
        println!("principal model a1 = {a1}: analytic {:.5}, simulated {:.5}", gaussian_hr(&p).hr_t_y, mc.hr_t_y);
    }
    Ok(())
}
