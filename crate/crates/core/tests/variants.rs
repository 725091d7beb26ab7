use num_bigint::BigUint;
use recurselab_core::eval::{evaluate, Outcome, Schema, Strategy};
use recurselab_core::takeuchi3::Triple;
use recurselab_core::variants::{
    boolean_b_simple, gabriel_cost, gabriel_growth_bound, gabriel_simple, k_partial_demo, kc_function,
    open_problem3_explore, parity_h, recurrence_substitution_check, ve_completion, vh_classify_boolean, HDefault,
    HSpec, VeTag, PROBE_POINTS,
};

#[test]
fn gabriel_closed_form_matches_expansion() {
    for t in Triple::cube(-2..=8) {
        let out = evaluate(&Schema::Gabriel, &t.into(), Strategy::FullExpansion, 10_000_000).unwrap();
        assert_eq!(out.result, Outcome::Value(gabriel_simple(t)), "{t}");
    }
}

#[test]
fn boolean_closed_form_matches_expansion() {
    for t in Triple::cube(-4..=8) {
        let out = evaluate(&Schema::BooleanB, &t.into(), Strategy::FullExpansion, 10_000_000).unwrap();
        let v = boolean_b_simple(t);
        assert!(v == 0 || v == 1);
        assert_eq!(out.result, Outcome::Value(v), "{t}");
    }
}

#[test]
fn classifier_matches_cycle_detection_for_all_probe_assignments() {
    for bits in 0u32..64 {
        let mut h = HSpec::new(HDefault::Zero);
        for (i, p) in PROBE_POINTS.iter().enumerate() {
            h.insert(*p, i64::from(bits >> i & 1 == 1));
        }
        let verdict = vh_classify_boolean(&h).unwrap();
        let schema = Schema::VH(h);
        let diverges = [Triple::new(1, 0, 0), Triple::new(1, 0, 1)].iter().any(|t| {
            let out = evaluate(&schema, &(*t).into(), Strategy::FullExpansion, 100_000).unwrap();
            matches!(out.result, Outcome::CycleDetected(_))
        });
        assert_eq!(verdict.is_total(), !diverges, "bits {bits:06b}: {verdict}");
    }
}

#[test]
fn completions_satisfy_the_recurrence() {
    let e = parity_h();
    for tag in VeTag::ALL {
        let r = recurrence_substitution_check(|t| ve_completion(tag, t), &e, Triple::cube(-6..=6));
        assert!(r.is_ok(), "{tag}: {}", r.unwrap_err());
    }
}

#[test]
fn kc_family_and_argmin() {
    let id = HSpec::new(HDefault::IdX);
    for c in -3..=5 {
        assert!(recurrence_substitution_check(|t| kc_function(c, t), &id, Triple::cube(-4..=6)).is_ok());
    }
    for t in Triple::cube(-4..=6).filter(|t| t.x > t.y) {
        assert_eq!(kc_function(t.y, t), t.y);
        assert_ne!(kc_function(t.y - 1, t), t.y);
    }
    for x in -3..=6 {
        let out = k_partial_demo(Triple::new(x + 1, x, x), 100_000).unwrap();
        assert!(out.result.diverged(), "x = {x}");
    }
}

#[test]
fn zero_base_minimal_expansions() {
    let out = evaluate(
        &Schema::VH(HSpec::new(HDefault::Zero)),
        &Triple::new(18, 12, 6).into(),
        Strategy::FullExpansion,
        1 << 32,
    )
    .unwrap();
    assert_eq!(out.result, Outcome::Value(0));
}

#[test]
fn gabriel_growth_spot_check() {
    for n in 1..=10 {
        let out = gabriel_cost(n, 1 << 36).unwrap();
        assert!(out.result.value().is_some());
        assert!(out.cost.else_expansions <= gabriel_growth_bound(n as u32), "n = {n}");
    }
    assert!(gabriel_growth_bound(3) < BigUint::from(198u32));
}

#[test]
fn explorer_reports_no_inconsistency_at_small_scale() {
    let report = open_problem3_explore(2, 3, 64);
    assert_eq!(report.count("inconsistent"), 0);
    let refs: Vec<_> = report
        .entries
        .iter()
        .filter(|e| e.label.starts_with("reference"))
        .collect();
    assert_eq!(refs.len(), 2);
    assert!(refs.iter().all(|e| e.verdict.kind() == "consistent"));
}
