//! Harm rates and surrogate criteria on the Prentice counterexample table.
//!
//! Run with `cargo run --example golden_worlds`.

use surrogate_paradox::fixtures::{prentice_table, principal_table};
use surrogate_paradox::potential::check_wu;
use surrogate_paradox::Rational;

fn main() {
    let zero = Rational::from_integer(0);
    for (name, table) in [("prentice", prentice_table()), ("principal", principal_table())] {
        let h = table.harm_profile();
        println!("{name} table");
        println!("  HR(T→S) = {}  HR(S→Y|T=0) = {}  HR(S→Y|T=1) = {}", h.hr_t_s, h.hr_s_y_t0, h.hr_s_y_t1);
        println!("  HR(T→Y) = {}  ACE(T→Y) = {}", h.hr_t_y, h.ace_t_y);
        println!("  Prentice criterion holds: {}", table.check_prentice(&zero).holds);
        println!("  principal-surrogate criterion holds: {}", table.check_principal(&zero).holds);
        println!("  Wu criterion holds: {}", check_wu(&table.induced_observed(), &zero).holds);
        println!("  paradox at c1 = c2 = 0: {:?}", table.detect_paradox(&zero, &zero).expect("valid thresholds"));
    }
}
