mod common;

use common::{r, random_observed};
use proptest::prelude::*;
use surrogate_paradox::bounds::{
    is_compatible, lower_curve, paradox_criterion, paradox_criterion_cn, saturation_c3, sharp_bounds,
    sharp_bounds_cn, upper_curve, upper_curve_cn, BoundReport, PiecewiseCurve, Verdict,
};
use surrogate_paradox::{ObservedDist, Rational};

fn arms(c: [i64; 4], t: [i64; 4]) -> ObservedDist<Rational> {
    let n = |a: [i64; 4]| {
        let total: i64 = a.iter().sum();
        a.map(|x| r(x, total))
    };
    ObservedDist::from_arms(n(c), n(t)).unwrap()
}

#[test]
fn verdicts_on_hand_built_arms() {
    // No treated failures with S = 0 or 1 beyond what control explains.
    let excluded = arms([1, 2, 3, 4], [0, 0, 3, 7]);
    assert_eq!(paradox_criterion(&excluded, &r(0, 1)).unwrap(), Verdict::Excluded);
    // Everyone has (S0, S1) = (0, 1); control always succeeds, treatment mostly fails.
    let present = arms([1, 0, 9, 0], [0, 8, 0, 2]);
    assert_eq!(paradox_criterion(&present, &r(0, 1)).unwrap(), Verdict::Present);
    // Treatment lowers the surrogate for 60% of units: incompatible with c1 = 0.
    let bad = arms([0, 5, 0, 5], [3, 2, 3, 2]);
    assert_eq!(paradox_criterion(&bad, &r(0, 1)).unwrap(), Verdict::Incompatible);
    assert_eq!(paradox_criterion_cn(&bad, &r(0, 1), &r(1, 1)).unwrap(), Verdict::Incompatible);
}

#[test]
fn threshold_validation() {
    let obs = arms([1, 1, 1, 1], [1, 1, 1, 1]);
    assert!(sharp_bounds(&obs, &r(11, 10)).is_err());
    assert!(sharp_bounds_cn(&obs, &r(1, 2), &r(-1, 10)).is_err());
}

#[test]
fn report_and_curve_json_round_trip() {
    let obs = random_observed(7);
    let rep = sharp_bounds_cn(&obs, &r(1, 5), &r(1, 20)).unwrap();
    assert_eq!(BoundReport::<Rational>::from_json(&rep.to_json()).unwrap(), rep);
    let curve = upper_curve_cn(&obs, &r(1, 20)).unwrap();
    assert_eq!(PiecewiseCurve::<Rational>::from_json(&curve.to_json()).unwrap(), curve);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bound_ordering(seed in any::<u64>(), k in 0i64..=20, c3 in 0i64..=20) {
        let obs = random_observed(seed);
        let (c1, c3) = (r(k, 20), r(c3, 20));
        let basic = sharp_bounds(&obs, &c1).unwrap();
        let refined = sharp_bounds_cn(&obs, &c1, &c3).unwrap();
        prop_assert!(refined.upper <= basic.upper);
        prop_assert_eq!(&refined.lower, &basic.lower);
        if basic.compatible {
            prop_assert!(basic.lower <= basic.upper);
        }
        let full = sharp_bounds_cn(&obs, &c1, &r(1, 1)).unwrap();
        prop_assert_eq!(&full.upper, &basic.upper);
        prop_assert_eq!(is_compatible(&obs, &c1), basic.compatible);
    }

    #[test]
    fn bounds_are_monotone_in_thresholds(seed in any::<u64>(), k in 0i64..20) {
        let obs = random_observed(seed);
        let (a, b) = (sharp_bounds(&obs, &r(k, 20)).unwrap(), sharp_bounds(&obs, &r(k + 1, 20)).unwrap());
        prop_assert!(a.upper <= b.upper);
        prop_assert!(a.lower >= b.lower);
        let c1 = r(k, 20);
        let (x, y) = (
            sharp_bounds_cn(&obs, &c1, &r(k, 40)).unwrap(),
            sharp_bounds_cn(&obs, &c1, &r(k + 1, 40)).unwrap(),
        );
        prop_assert!(x.upper <= y.upper);
    }

    #[test]
    fn saturation_is_where_refinement_stops(seed in any::<u64>(), k in 0i64..=20) {
        let obs = random_observed(seed);
        let c1 = r(k, 20);
        let sat = saturation_c3(&obs, &c1);
        let basic = sharp_bounds(&obs, &c1).unwrap().upper;
        let at = sharp_bounds_cn(&obs, &c1, &sat.clone().min(r(1, 1))).unwrap().upper;
        prop_assert_eq!(at, basic);
    }

    #[test]
    fn curves_match_pointwise_bounds(seed in any::<u64>(), c3 in 0i64..=10) {
        let obs = random_observed(seed);
        let c3 = r(c3, 10);
        let (up, lo, cn) = (upper_curve(&obs).unwrap(), lower_curve(&obs).unwrap(), upper_curve_cn(&obs, &c3).unwrap());
        prop_assert!(up.is_continuous() && lo.is_continuous() && cn.is_continuous());
        for k in 0..=20 {
            let c1 = r(k, 20);
            prop_assert_eq!(up.eval(&c1), sharp_bounds(&obs, &c1).unwrap().upper);
            prop_assert_eq!(lo.eval(&c1), sharp_bounds(&obs, &c1).unwrap().lower);
            prop_assert_eq!(cn.eval(&c1), sharp_bounds_cn(&obs, &c1, &c3).unwrap().upper);
        }
        prop_assert!(up.segments.iter().all(|s| s.slope == r(0, 1) || s.slope == r(1, 1)));
        prop_assert!(lo.segments.iter().all(|s| s.slope == r(0, 1) || s.slope == r(-1, 1)));
        prop_assert!(up.scenario() == 1 || up.scenario() == 2);
    }

    #[test]
    fn float_mode_tracks_rational_mode(seed in any::<u64>(), k in 0i64..=20) {
        let obs = random_observed(seed);
        let float = obs.map(|x| x.to_f64());
        let c1 = r(k, 20);
        let (a, b) = (sharp_bounds_cn(&obs, &c1, &r(1, 20)).unwrap(), sharp_bounds_cn(&float, &c1.to_f64(), &0.05).unwrap());
        prop_assert!((a.upper.to_f64() - b.upper).abs() < 1e-12);
        prop_assert!((a.lower.to_f64() - b.lower).abs() < 1e-12);
    }
}
