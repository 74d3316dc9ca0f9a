use surrogate_paradox::fixtures::{fixture, fixtures, replay};

#[test]
fn registry_lists_every_example() {
    let names: Vec<_> = fixtures().iter().map(|f| f.name).collect();
    for n in [
        "prentice_binary",
        "principal_binary",
        "strong3",
        "wu_binary",
        "vanderweele_mixture",
        "gaussian_prentice",
        "gaussian_principal",
    ] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn consistent_fixtures_replay_cleanly() {
    for name in ["strong3", "wu_binary", "vanderweele_mixture", "gaussian_prentice", "gaussian_principal"] {
        let report = replay(&fixture(name).unwrap()).unwrap();
        assert!(report.pass, "{name}: {:?}", report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
}

/// Two reported values cannot be produced by the tables they describe. The
/// replay keeps the reported value as the expectation, so exactly those
/// checks fail and every other check passes.
#[test]
fn inconsistent_reported_values_are_isolated() {
    for (name, failing) in [
        ("prentice_binary", vec!["ace_t_y"]),
        ("principal_binary", vec!["principal.y0_s1", "principal.y1_s1"]),
    ] {
        let report = replay(&fixture(name).unwrap()).unwrap();
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.quantity.as_str()).collect();
        assert_eq!(failed, failing, "{name}");
        let ace = report.checks.iter().find(|c| c.quantity == "ace_t_y");
        if let Some(ace) = ace {
            assert_eq!(ace.computed, "0.1");
        }
    }
}

#[test]
fn fixtures_export_as_json() {
    for f in fixtures() {
        let v = f.to_json();
        assert_eq!(v["name"], f.name);
        assert_eq!(v["expected"].as_array().unwrap().len(), f.expected.len());
    }
    let v = fixture("prentice_binary").unwrap().to_json();
    assert_eq!(v["world"]["binary"]["cells"][0][0], "1/100");
}
