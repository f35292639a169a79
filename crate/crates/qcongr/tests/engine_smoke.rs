//! Small hand-checked instances exercising the whole verification stack:
//! builders, both strategies, the parametric specialization check, and the
//! negative controls.

use qcongr::claims::{
    builtin_with, perturb_power, verify, verify_parametric_a, with_modulus_power, Outcome,
    Strategy,
};

fn outcome(name: &str, params: &[(&str, i64)], strategy: Strategy) -> Outcome {
    let claim = builtin_with(name, params).unwrap();
    verify(&claim, strategy, 0).unwrap().outcome
}

fn both_pass(name: &str, params: &[(&str, i64)]) {
    for strategy in [Strategy::Clearing, Strategy::PointEval] {
        assert_eq!(
            outcome(name, params, strategy),
            Outcome::Pass,
            "{name} {params:?} via {strategy}"
        );
    }
}

#[test]
fn th_2_small_instances() {
    both_pass("th-2", &[("d", 2), ("n", 5)]);
    both_pass("th-2", &[("d", 2), ("n", 9)]);
}

#[test]
fn th_2_denominator_zero_divisor_is_typed() {
    // For d = 3, n = 7 the factor 1 - q^35 of (q^5;q^6)_6 is a zero divisor
    // modulo Phi_7: both strategies must refuse with NONINVERTIBLE and name
    // the factor, never silently PASS or FAIL.
    let claim = builtin_with("th-2", &[("d", 3), ("n", 7)]).unwrap();
    for strategy in [Strategy::Clearing, Strategy::PointEval] {
        let report = verify(&claim, strategy, 0).unwrap();
        assert_eq!(report.outcome, Outcome::NonInvertible, "{strategy}");
        assert!(report.residue.unwrap().contains("q^35"));
    }
}

#[test]
fn th_2_hypothesis_gate() {
    assert_eq!(
        outcome("th-2", &[("d", 2), ("n", 7)], Strategy::Clearing),
        Outcome::HypothesisFail
    );
}

#[test]
fn th_1_small_instance() {
    both_pass("th-1", &[("d", 3), ("n", 5)]);
}

#[test]
fn th_2_0_and_1_small() {
    both_pass("th-2-0", &[("n", 5)]);
    both_pass("th-2-1", &[("n", 5)]);
}

#[test]
fn th_2_2_small_instances() {
    // d=2, n=3 is the hand-checked case: the sum equals -(1+q+q^2) q
    // modulo Phi_3^2.
    both_pass("th-2-2", &[("d", 2), ("n", 3)]);
    both_pass("th-2-2", &[("d", 3), ("n", 5)]);
}

#[test]
fn th_2_3_small_instances() {
    both_pass("th-2-3", &[("d", 1), ("n", 3)]);
    both_pass("th-2-3", &[("d", 2), ("n", 5)]);
}

#[test]
fn th_2_4_small_instances() {
    both_pass("th-2-4", &[("d", 2), ("n", 3)]);
    both_pass("th-2-4", &[("d", 3), ("n", 5)]);
}

#[test]
fn th_2_5_small_instances() {
    both_pass("th-2-5", &[("d", 1), ("n", 3)]);
    both_pass("th-2-5", &[("d", 2), ("n", 5)]);
}

#[test]
fn th_3_small_instances() {
    both_pass("th-3", &[("d", 2), ("s", 1), ("n", 5)]);
    both_pass("th-3", &[("d", 2), ("s", -1), ("n", 3)]);
    both_pass("th-3", &[("d", 3), ("s", -1), ("n", 5)]);
}

#[test]
fn th_5_small_instances() {
    both_pass("th-5", &[("d", 1), ("n", 3)]);
    both_pass("th-5", &[("d", 2), ("n", 5)]);
}

#[test]
fn ss_0_small_instances() {
    both_pass("ss-0", &[("d", 1), ("n", 3)]);
    both_pass("ss-0", &[("d", 2), ("n", 3)]);
}

#[test]
fn in_2_printed_form_has_an_empirical_status() {
    // The printed congruence is scanned as a finding; both strategies must
    // agree on whatever its status is.
    for n in [5i64, 7, 9, 11] {
        let a = outcome("in-2", &[("n", n)], Strategy::Clearing);
        let b = outcome("in-2", &[("n", n)], Strategy::PointEval);
        assert_eq!(a, b, "strategy disagreement at n={n}");
        assert!(matches!(a, Outcome::Pass | Outcome::Fail), "n={n}: {a:?}");
    }
}

#[test]
fn perturbed_th_2_fails_both_strategies() {
    let claim = perturb_power(&builtin_with("th-2", &[("d", 2), ("n", 5)]).unwrap(), 1);
    for strategy in [Strategy::Clearing, Strategy::PointEval] {
        let report = verify(&claim, strategy, 0).unwrap();
        assert_eq!(report.outcome, Outcome::Fail, "{strategy}");
        assert!(report.residue.is_some());
    }
}

#[test]
fn th_2_weakened_modulus_still_passes() {
    let claim = with_modulus_power(&builtin_with("th-2", &[("d", 2), ("n", 5)]).unwrap(), 1);
    for strategy in [Strategy::Clearing, Strategy::PointEval] {
        assert_eq!(verify(&claim, strategy, 0).unwrap().outcome, Outcome::Pass);
    }
}

#[test]
fn parametric_small_instances() {
    let claim = builtin_with("s-3", &[("d", 3), ("s", 1), ("n", 7)]).unwrap();
    assert_eq!(verify_parametric_a(&claim).unwrap().outcome, Outcome::Pass);

    let claim = builtin_with("s-3-1", &[("n", 5)]).unwrap();
    assert_eq!(verify_parametric_a(&claim).unwrap().outcome, Outcome::Pass);

    let claim = builtin_with("s-5", &[("d", 2), ("s", 1), ("n", 5)]).unwrap();
    assert_eq!(verify_parametric_a(&claim).unwrap().outcome, Outcome::Pass);
}

#[test]
fn parametric_degenerate_is_typed() {
    // d=2, s=-1 collapses (q^{d+2s}; q^{2d}) = (q^0; q^4): a typed
    // degeneracy outcome, never PASS.
    let claim = builtin_with("s-3", &[("d", 2), ("s", -1), ("n", 3)]).unwrap();
    let report = verify_parametric_a(&claim).unwrap();
    assert_eq!(report.outcome, Outcome::NonInvertible);
    assert!(report.residue.unwrap().contains("degenerate"));
}

#[test]
fn verify_routes_parametric_claims() {
    let claim = builtin_with("s-3-1", &[("n", 5)]).unwrap();
    let report = verify(&claim, Strategy::Auto, 0).unwrap();
    assert_eq!(report.outcome, Outcome::Pass);
    assert_eq!(report.strategy, Strategy::ParametricA);
}
