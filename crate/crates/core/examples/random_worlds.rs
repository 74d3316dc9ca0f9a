//! Seeded random worlds. A strong binary surrogate never has HR(T→Y) above
//! HR(T→S) + HR(S→Y). Three-level strong surrogates can exceed it (see the
//! `strong3` fixture), but random draws rarely land there.

use surrogate_paradox::potential::{random_strong3_world, random_strong_binary_world, random_world};
use surrogate_paradox::Rational;

fn main() -> surrogate_paradox::Result<()> {
    let mut violations = 0;
    for seed in 0..2000 {
        let h = random_strong_binary_world::<Rational>(seed, 0.5)?.harm_profile();
        // With no direct effect HR(S→Y|T=0) = HR(S→Y|T=1).
        if h.hr_t_y > &h.hr_t_s + &h.hr_s_y_t0 {
            violations += 1;
        }
    }
    println!("strong binary worlds: {violations} violations in 2000");

    let mut worst = None::<(u64, f64)>;
    for seed in 0..2000 {
        let p = random_strong3_world::<f64>(seed, 0.1)?.profile();
        let excess = p.hr_t_y - p.hr_t_s - p.hr_s_y;
        if worst.is_none_or(|(_, w)| excess > w) {
            worst = Some((seed, excess));
        }
    }
    println!("three-level strong worlds: largest HR(T→Y) - HR(T→S) - HR(S→Y) = {:?}", worst);

    let t = random_world::<Rational>(3, 1.0)?;
    println!("unrestricted world, seed 3: {:?}", t.harm_profile());
    Ok(())
}
