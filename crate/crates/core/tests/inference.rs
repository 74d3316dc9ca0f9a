use proptest::prelude::*;
use surrogate_paradox::bounds::{sharp_bounds, CurveKind};
use surrogate_paradox::inference::{
    bootstrap_region, curve_region, quantile, replicate, simulate_counts, BootstrapConfig, TrialCounts, TrialData,
    UncertaintyRegion,
};
use surrogate_paradox::{Error, ObservedDist, Rational};

fn counts() -> TrialCounts {
    TrialCounts::from_arms([200, 90, 90, 120], [190, 80, 70, 160]).unwrap()
}

fn cfg(level: f64) -> BootstrapConfig {
    BootstrapConfig { replicates: 400, seed: 17, level }
}

#[test]
fn estimate_is_exact_mle() {
    let obs: ObservedDist<Rational> = counts().estimate();
    assert_eq!(obs.p(0, 0, 1), Rational::new(90, 500));
    assert_eq!(obs.p(1, 1, 1), Rational::new(160, 500));
}

#[test]
fn csv_and_json_round_trip() {
    let c = counts();
    assert_eq!(TrialData::parse(&c.to_csv()).unwrap(), TrialData::Counts(c.clone()));
    assert_eq!(TrialData::parse(&c.to_json().to_string()).unwrap(), TrialData::Counts(c.clone()));
    let probs = "t,y,s,p\n0,0,0,0.25\n0,0,1,0.25\n0,1,0,0.25\n0,1,1,0.25\n1,0,0,0.5\n1,1,1,0.5\n";
    let TrialData::Probabilities(p) = TrialData::parse(probs).unwrap() else { panic!("expected probabilities") };
    assert_eq!(p.p(1, 0, 1), Rational::from_integer(0));
}

#[test]
fn malformed_input_names_row_and_field() {
    let cases = [
        ("t,y,s,count\n0,0,0,5\n0,2,0,5\n", "line 3", "`y`"),
        ("t,y,s,count\n0,0,0,5\n1,0,0,x\n", "line 3", "`count`"),
        ("t,y,s,p\n0,0,0,0.5\n0,0,0,0.5\n", "line 3", "duplicate"),
        ("t,y,s,n\n0,0,0,1\n", "header", "t,y,s,count"),
    ];
    for (text, at, what) in cases {
        let msg = TrialData::parse(text).unwrap_err().to_string();
        assert!(msg.contains(at) && msg.contains(what), "{msg}");
    }
    let unnormalised = "t,y,s,p\n0,0,0,0.5\n0,1,1,0.6\n1,0,0,1\n";
    assert!(matches!(TrialData::parse(unnormalised), Err(Error::InvalidObserved(_))));
    assert!(matches!(TrialData::parse("t,y,s,count\n0,0,0,3\n"), Err(Error::InvalidCounts(_))));
}

#[test]
fn bootstrap_is_reproducible_and_thread_independent() {
    let a = bootstrap_region::<f64>(&counts(), &0.02, Some(&0.05), &cfg(0.9)).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| bootstrap_region::<f64>(&counts(), &0.02, Some(&0.05), &cfg(0.9)).unwrap());
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert_eq!(UncertaintyRegion::<f64>::from_json(&a.to_json()).unwrap(), a);
    assert!(a.audit.as_ref().is_some_and(|x| x.agrees));
    let other = bootstrap_region::<f64>(&counts(), &0.02, Some(&0.05), &BootstrapConfig { seed: 18, ..cfg(0.9) }).unwrap();
    assert_ne!(a.to_json(), other.to_json());
}

#[test]
fn regions_nest_and_contain_points() {
    let wide = bootstrap_region::<f64>(&counts(), &0.0, None, &cfg(0.95)).unwrap();
    let narrow = bootstrap_region::<f64>(&counts(), &0.0, None, &cfg(0.5)).unwrap();
    assert!(wide.contains(&narrow));
    assert!(wide.lower_limit <= wide.point_lower && wide.point_upper <= wide.upper_limit);
}

#[test]
fn replicates_keep_arm_sizes() {
    let c = counts();
    for b in 0..50 {
        let rep = replicate(&c, 3, b);
        assert_eq!((rep.arm_total(0), rep.arm_total(1)), (c.arm_total(0), c.arm_total(1)));
    }
    assert_eq!(replicate(&c, 3, 7), replicate(&c, 3, 7));
}

#[test]
fn curve_bands_csv() {
    let grid = [0.0, 0.05, 0.1];
    let bands = curve_region(&counts(), &grid, None, &cfg(0.95)).unwrap();
    let csv = bands.to_csv(CurveKind::Upper);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "c1,point,band_low,band_high");
    assert_eq!(lines.len(), 4);
    let obs = counts().estimate::<f64>();
    for (p, c1) in bands.points.iter().zip(grid) {
        assert_eq!(p.region.point_upper, sharp_bounds(&obs, &c1).unwrap().upper);
    }
}

#[test]
fn configuration_is_validated() {
    assert!(bootstrap_region::<f64>(&counts(), &0.0, None, &BootstrapConfig { replicates: 10, ..cfg(0.9) }).is_err());
    assert!(bootstrap_region::<f64>(&counts(), &0.0, None, &cfg(1.0)).is_err());
    assert!(curve_region::<f64>(&counts(), &[], None, &cfg(0.9)).is_err());
}

#[test]
fn simulated_trials_follow_the_distribution() {
    let obs = counts().estimate::<f64>();
    let sim = simulate_counts(&obs, 1_000_000, 5).unwrap();
    let est = sim.estimate::<f64>();
    for t in 0..2 {
        for y in 0..2 {
            for s in 0..2 {
                assert!((est.p(t, y, s) - obs.p(t, y, s)).abs() < 0.003);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quantile_is_an_order_statistic(mut v in prop::collection::vec(-1.0f64..1.0, 1..200), p in 0.0f64..1.0) {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let q = quantile(&v, p);
        let below = v.iter().filter(|&&x| x < q).count() as f64;
        prop_assert!(v.contains(&q));
        prop_assert!(below <= (v.len() as f64 * p).ceil());
    }

    #[test]
    fn counts_csv_round_trip(n in prop::array::uniform8(0u64..1000)) {
        let c = TrialCounts::from_arms([n[0] + 1, n[1], n[2], n[3]], [n[4], n[5], n[6] + 1, n[7]]).unwrap();
        prop_assert_eq!(TrialData::parse(&c.to_csv()).unwrap(), TrialData::Counts(c));
    }
}
