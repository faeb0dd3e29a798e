use super::*;

fn cfg(fams: &str, grid: &str, suites: &str) -> SuiteConfig {
    let (suites, explicit) = parse_suites(suites).unwrap();
    SuiteConfig {
        families: parse_families(fams).unwrap(),
        grid: parse_grid(grid).unwrap(),
        suites,
        explicit,
        seed: 7,
        ..SuiteConfig::default()
    }
}

#[test]
fn grid_parsing() {
    let g = parse_grid("n=2,q=2,m=2,d=2; n=3,q=2,m=2,d=1").unwrap();
    assert_eq!(g[1], GridPoint { n: 3, q: 2, m: 2, d: 1 });
    assert!(parse_grid("n=2,q=6,m=1,d=1").is_err());
    assert!(parse_grid("n=2,q=2,m=1").is_err());
    assert!(parse_grid("n=0,q=2,m=1,d=1").is_err());
    assert!(parse_grid("n=2,q=2,m=1,d=1,z=3").is_err());
    assert!(parse_grid("").is_err());
    assert_eq!(default_grid().len(), 24);
}

#[test]
fn unipotent_small_all_pass() {
    let r = run_suite(&cfg("U", "n=2,q=2,m=1,d=1", "all")).unwrap();
    let failing: Vec<_> = r.records.iter().filter(|r| r.verdict != Verdict::Pass).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert!(r.all_passed());
    assert!(r.records.iter().any(|r| r.suite == Suite::Hypersurface));
    assert!(!r.records.iter().any(|r| r.suite == Suite::Coefficients));
}

#[test]
fn trivial_group_invariance_is_vacuous() {
    let r = run_suite(&cfg("GL", "n=1,q=2,m=1,d=1", "invariance")).unwrap();
    assert!(r.all_passed());
    assert!(r.records.iter().all(|r| r.detail.contains("0 generators") && r.detail.contains("all 1 elements")));
}

#[test]
fn explicit_inapplicable_suite_is_config_error() {
    let c = cfg("GL", "n=3,q=2,m=1,d=1", "hypersurface");
    assert!(matches!(run_suite(&c), Err(Error::Config(_))));
    assert!(parse_suites("nonsense").is_err());
    assert!(parse_families("GL,XX").is_err());
}

#[test]
fn reports_are_deterministic() {
    let c = cfg("GL,SL,U", "n=2,q=3,m=1,d=2;n=3,q=2,m=2,d=1", "all");
    let a = run_suite(&c).unwrap().to_json().unwrap();
    let b = run_suite(&c).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("timing_ms"));
    let back: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(back.to_json().unwrap(), a);
}

#[test]
fn conventions_block_present() {
    let r = run_suite(&cfg("U", "n=1,q=2,m=1,d=1", "counts")).unwrap();
    for k in ["action", "dickson_sign", "t_twist", "v_pairing", "det_sign", "r_variant"] {
        assert!(r.conventions.contains_key(k), "{k}");
    }
    let t = r.to_text();
    assert!(t.contains("PASS") && t.contains("t_twist"));
}

#[test]
fn records_sorted_canonically() {
    let r = run_suite(&cfg("U,GL", "n=2,q=2,m=1,d=1;n=1,q=3,m=1,d=1", "counts,invariance")).unwrap();
    let keys: Vec<_> = r.records.iter().map(|r| r.key()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn cap_falls_back_to_generators() {
    let mut c = cfg("SL", "n=2,q=3,m=1,d=1", "invariance");
    c.enum_cap = 10;
    let r = run_suite(&c).unwrap();
    assert!(r.all_passed());
    assert!(r.records[0].detail.contains("exceeds enumeration cap 10"));
}

#[test]
fn independence_small_cases() {
    let r = run_suite(&cfg("GL", "n=1,q=2,m=2,d=2;n=1,q=3,m=2,d=2", "independence")).unwrap();
    assert!(r.records.iter().all(|r| r.verdict == Verdict::Pass), "{:#?}", r.records);
    let r = run_suite(&cfg("U", "n=2,q=2,m=1,d=1", "independence")).unwrap();
    assert_eq!(r.records[0].verdict, Verdict::Pass);
}
