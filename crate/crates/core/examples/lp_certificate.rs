//! The exact LP oracle: optima with witnesses, the c2 reparameterisation,
//! and a Farkas certificate for data that no world can produce.

use surrogate_paradox::bounds::sharp_bounds;
use surrogate_paradox::lp::{build_program, c2_invariance_map, solve_max, solve_min_max, witness_table, LpSolution};
use surrogate_paradox::potential::random_world_quantized;
use surrogate_paradox::{ObservedDist, Rational};

fn main() -> surrogate_paradox::Result<()> {
    let world = random_world_quantized::<Rational>(11, 1.0, 200)?;
    let obs = world.induced_observed();
    // These arms need c1 >= 33/199; below that the program is infeasible.
    let c1 = Rational::new(1, 5);
    let lp = build_program(&obs, &c1, &Rational::from_integer(1))?;
    println!("{} rows, {} columns, rank {}", lp.num_rows(), lp.num_vars, lp.rank());

    let closed = sharp_bounds(&obs, &c1)?;
    let (lo, hi) = solve_min_max(&lp);
    println!("closed form [{}, {}]", closed.lower, closed.upper);
    println!("LP          [{}, {}]", lo.value().expect("feasible"), hi.value().expect("feasible"));

    if let Some(w) = hi.witness() {
        let table = witness_table(w)?;
        let moved = c2_invariance_map(&table)?;
        let (a, b) = (table.harm_profile(), moved.harm_profile());
        println!("max witness: HR(T→Y) {} HR(S→Y|T=0) {} HR(S→Y|T=1) {}", a.hr_t_y, a.hr_s_y_t0, a.hr_s_y_t1);
        println!("after c2 map: HR(T→Y) {} HR(S→Y|T=0) {} HR(S→Y|T=1) {}", b.hr_t_y, b.hr_s_y_t0, b.hr_s_y_t1);
        println!("observed arms preserved: {}", table.induced_observed() == moved.induced_observed());
    }

    // Treatment lowers the surrogate in 60% of the population: impossible at c1 = 0.
    let r = |n, d| Rational::new(n, d);
    let bad = ObservedDist::from_arms([r(0, 1), r(1, 2), r(0, 1), r(1, 2)], [r(3, 10), r(1, 5), r(3, 10), r(1, 5)])?;
    match solve_max(&build_program(&bad, &r(0, 1), &r(0, 1))?) {
        LpSolution::Infeasible(cert) => {
            println!("infeasible; phase-one optimum {}", cert.phase_one_value);
            println!("Farkas multipliers {:?}", cert.farkas);
        }
        other => println!("unexpected: {:?}", other.status()),
    }
    Ok(())
}
