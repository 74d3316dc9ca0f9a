mod common;

use common::r;
use proptest::prelude::*;
use surrogate_paradox::fixtures::{prentice_table, principal_table, strong3_table};
use surrogate_paradox::potential::{
    check_vanderweele, check_wu, observed_cell, outcomes, random_strong_binary_world, random_world, surrogates,
    MixtureWorld, ParadoxVerdict, PotentialTable, StrongTable3,
};
use surrogate_paradox::{Error, Rational, Scalar};

#[test]
fn prentice_table_harm_profile() {
    let h = prentice_table().harm_profile();
    assert_eq!(h.hr_t_y, r(47, 200));
    assert_eq!((h.hr_t_s.clone(), h.hr_s_y_t0.clone(), h.hr_s_y_t1.clone()), (r(0, 1), r(0, 1), r(0, 1)));
    // The table forces ACE = 0.25 * (0.8 - 0.4).
    assert_eq!(h.ace_t_y, r(1, 10));
}

#[test]
fn prentice_conditionals_and_wu() {
    let t = prentice_table();
    let zero = r(0, 1);
    let p = t.check_prentice(&zero);
    assert!(p.holds);
    assert_eq!(p.values, [r(1, 2), r(1, 2), r(3, 4), r(3, 4)].map(Some).to_vec());
    let wu = check_wu(&t.induced_observed(), &zero);
    assert!(wu.holds);
    assert_eq!(wu.values, [r(3, 4), r(3, 4), r(1, 2), r(1, 2)].map(Some).to_vec());
}

#[test]
fn principal_table_strata() {
    let t = principal_table();
    let c = t.check_principal(&r(0, 1));
    assert!(c.holds);
    assert_eq!(c.values[..2], [Some(r(1, 3)), Some(r(1, 3))]);
    assert_eq!(c.values[2], c.values[3]);
    assert_eq!(t.harm_profile().hr_t_y, r(47, 200));
}

#[test]
fn strong3_example() {
    let p = strong3_table().profile();
    assert_eq!((p.hr_t_s, p.hr_s_y, p.hr_t_y), (r(0, 1), r(2, 3), r(1, 1)));
}

#[test]
fn vanderweele_on_stratified_prentice_table() {
    let m = MixtureWorld::new(r(1, 2), prentice_table(), prentice_table()).unwrap();
    assert!(check_vanderweele(&m, &r(0, 1)).holds);
    assert_eq!(m.marginal(), prentice_table());
}

#[test]
fn paradox_verdicts() {
    let zero = r(0, 1);
    assert_eq!(prentice_table().detect_paradox(&zero, &zero).unwrap(), ParadoxVerdict::Manifests);
    let point = PotentialTable::<Rational>::point_mass(0, 0).unwrap();
    assert_eq!(point.detect_paradox(&r(1, 4), &r(1, 4)).unwrap(), ParadoxVerdict::Absent);
    // Everyone harmed on the surrogate violates the premise at c1 = 0.
    let harmed = PotentialTable::<Rational>::point_mass(0, 2).unwrap();
    assert_eq!(harmed.detect_paradox(&zero, &zero).unwrap(), ParadoxVerdict::PremiseViolated);
    assert!(matches!(point.detect_paradox(&r(3, 4), &r(1, 2)), Err(Error::Threshold { .. })));
    assert!(matches!(point.detect_paradox(&r(-1, 4), &zero), Err(Error::Threshold { .. })));
}

#[test]
fn invalid_tables_are_rejected() {
    let mut cells: [[Rational; 4]; 16] = std::array::from_fn(|_| std::array::from_fn(|_| r(1, 64)));
    cells[0][0] = r(2, 64);
    assert!(matches!(PotentialTable::new(cells.clone()), Err(Error::InvalidTable(_))));
    cells[0][0] = r(-1, 64);
    assert!(PotentialTable::new(cells).is_err());
    assert!(StrongTable3::from_cells(&[(0, 0, r(1, 2))]).is_err());
}

#[test]
fn json_round_trips() {
    let t = prentice_table();
    assert_eq!(PotentialTable::<Rational>::from_json(&t.to_json()).unwrap(), t);
    let s = strong3_table();
    assert_eq!(StrongTable3::<Rational>::from_json(&s.to_json()).unwrap(), s);
}

#[test]
fn encodings() {
    // i = 8 Y00 + 4 Y01 + 2 Y10 + Y11, j = 2 S0 + S1
    assert_eq!(outcomes(13), [1, 1, 0, 1]);
    assert_eq!(surrogates(2), [1, 0]);
    // Control arm reveals (S0, Y_{0 S0}); treated arm reveals (S1, Y_{1 S1}).
    assert_eq!(observed_cell(13, 2, 0), (1, 1));
    assert_eq!(observed_cell(13, 2, 1), (0, 0));
}

fn brute_force_hr_t_y(t: &PotentialTable<f64>) -> f64 {
    let mut total = 0.0;
    for i in 0..16 {
        for j in 0..4 {
            let (s0, s1) = (surrogates(j)[0], surrogates(j)[1]);
            let y = outcomes(i);
            if y[s0] == 1 && y[2 + s1] == 0 {
                total += t.cell(i, j);
            }
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_binary_surrogate_cannot_hide_harm(seed in any::<u64>(), conc in 0.05f64..5.0) {
        let h = random_strong_binary_world::<Rational>(seed, conc).unwrap().harm_profile();
        prop_assert_eq!(&h.hr_s_y_t0, &h.hr_s_y_t1);
        prop_assert!(h.hr_t_y <= &h.hr_t_s + &h.hr_s_y_t0);
    }

    #[test]
    fn harm_matches_brute_force(seed in any::<u64>()) {
        let t = random_world::<f64>(seed, 0.5).unwrap();
        prop_assert!((t.harm_profile().hr_t_y - brute_force_hr_t_y(&t)).abs() < 1e-12);
    }

    #[test]
    fn induced_arms_are_distributions(seed in any::<u64>()) {
        let obs = random_world::<Rational>(seed, 1.0).unwrap().induced_observed();
        prop_assert!(obs.validate().is_ok());
        let one = r(1, 1);
        for t in 0..2 {
            prop_assert_eq!(&obs.ps(t, 0) + &obs.ps(t, 1), one.clone());
        }
    }

    #[test]
    fn float_and_rational_agree(seed in any::<u64>()) {
        let exact = random_world::<Rational>(seed, 1.0).unwrap();
        let float = exact.map(|x| x.to_f64()).unwrap();
        let (a, b) = (exact.harm_profile(), float.harm_profile());
        prop_assert!((a.hr_t_y.to_f64() - b.hr_t_y).abs() < 1e-12);
        prop_assert!((a.ace_t_y.to_f64() - b.ace_t_y).abs() < 1e-12);
        prop_assert!((a.hr_t_s.to_f64_lossy() - b.hr_t_s).abs() < 1e-12);
    }
}
