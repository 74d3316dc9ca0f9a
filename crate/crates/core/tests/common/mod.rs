#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surrogate_paradox::potential::random_world_quantized;
use surrogate_paradox::{ObservedDist, Rational};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Even seeds: two independent arms of random integer counts, which are often
/// incompatible with small `c1`. Odd seeds: arms induced by a random world on
/// a grid of 1/200, which are compatible whenever `c1` covers its `HR(T→S)`.
pub fn random_observed(seed: u64) -> ObservedDist<Rational> {
    if seed % 2 == 1 {
        return random_world_quantized::<Rational>(seed, 1.0, 200)
            .expect("valid world")
            .induced_observed();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arm = || {
        let mut c: Vec<i64> = (0..4)
            .map(|_| if rng.gen_bool(0.2) { 0 } else { rng.gen_range(0..=40) })
            .collect();
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        let n: i64 = c.iter().sum();
        std::array::from_fn(|k| r(c[k], n))
    };
    let control = arm();
    ObservedDist::from_arms(control, arm()).expect("valid arms")
}

/// `0, 1/20, ..., 1`
pub fn c1_grid() -> Vec<Rational> {
    (0..=20).map(|k| r(k, 20)).collect()
}

pub fn c3_values() -> Vec<Rational> {
    vec![r(0, 1), r(1, 50), r(1, 20), r(1, 10), r(1, 1)]
}
