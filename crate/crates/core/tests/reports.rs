use symavoid::verify::{
    census, check_main_theorem, check_min_symmetric_size, check_symmetrically_avoided, replay, CheckConfig,
    CheckReport, Verdict, COUNTEREXAMPLE,
};
use symavoid::PermSet;

fn cfg() -> CheckConfig {
    CheckConfig::default()
}

#[test]
fn failing_reports_replay_after_a_json_roundtrip() {
    let reports = [
        check_min_symmetric_size(4, 2, &cfg()).unwrap(),
        check_symmetrically_avoided(&PermSet::parse("1 3 2", None).unwrap(), 1, 5, &cfg()).unwrap(),
    ];
    for r in reports {
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.witnesses.iter().any(|w| w.role == COUNTEREXAMPLE));
        let back = CheckReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(replay(&back).unwrap(), "{}", r.check_name);
    }
}

#[test]
fn partial_runs_cover_a_deterministic_prefix() {
    let partial = CheckConfig { node_budget: 50_000, partial_allowed: true, ..cfg() };
    let a = check_main_theorem(5, 3, &partial).unwrap();
    let b = check_main_theorem(5, 3, &partial).unwrap();
    assert_eq!(a.without_stats(), b.without_stats());
    assert_eq!(a.stats.candidates, b.stats.candidates);
    assert!(a.partial && a.verdict == Verdict::OutOfBudget);
    assert!(a.stats.candidates <= 50_000 && a.stats.candidates > 0);
}

#[test]
fn windowed_verdicts_are_marked_as_evidence() {
    let r = check_symmetrically_avoided(&PermSet::parse("1 2 3", None).unwrap(), 1, 7, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert!(r.evidence_only);
    let c = census(5, 3, 5, 5, &cfg()).unwrap();
    assert_eq!(c.verdict, Verdict::Holds, "{}", c.to_text());
    assert!(c.witnesses.is_empty());
}
