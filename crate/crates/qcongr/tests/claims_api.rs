//! Shape and API tests for the claim catalog and scans.

use qcongr::claims::scan::{scan, tuples, ScanRange};
use qcongr::claims::types::{ClaimBody, ModulusSpec, Rhs};
use qcongr::claims::{builtin_with, verify, Outcome, Strategy};
use qcongr::dsl::{lower, parse, ClaimSource};
use qcongr::multipoly::Var;

#[test]
fn th2_instance_structure() {
    let claim = builtin_with("th-2", &[("d", 2), ("n", 5)]).unwrap();
    assert_eq!(claim.modulus, ModulusSpec::PhiPower { n: 5, power: 2 });
    assert_eq!(claim.vars, vec![Var::X]);
    match &claim.body {
        Ok(ClaimBody::Standard { lhs, rhs: Rhs::Series(rhs) }) => {
            assert_eq!(lhs.top, 4);
            assert_eq!(rhs.top, 4);
            assert_eq!(lhs.numerator.len(), 3);
            assert_eq!(lhs.denominator.len(), 2);
            assert_eq!(lhs.power.per_k, 2);
            assert_eq!(rhs.power.per_k, 4);
        }
        other => panic!("unexpected body {other:?}"),
    }
}

#[test]
fn th22_top_index() {
    let claim = builtin_with("th-2-2", &[("d", 2), ("n", 3)]).unwrap();
    match &claim.body {
        Ok(ClaimBody::Standard { lhs, rhs: Rhs::Closed(cf) }) => {
            assert_eq!(lhs.top, 2); // (n+1)/d
            assert_eq!(cf.qint, 1);
            assert_eq!(cf.q_exp, 1); // (9 - 6 + 1) / 4
            assert_eq!(cf.sign_exp, 3); // (n+d+1)/d
        }
        other => panic!("unexpected body {other:?}"),
    }
}

#[test]
fn th3_modulus_is_first_power() {
    let claim = builtin_with("th-3", &[("d", 3), ("s", -1), ("n", 5)]).unwrap();
    assert_eq!(claim.modulus, ModulusSpec::PhiPower { n: 5, power: 1 });
}

#[test]
fn scan_enumerates_admissible_tuples() {
    // d in {2,3}, n <= 25: admissible n are {5,9,13,17,21,25} for d=2 and
    // {7,13,19,25} for d=3; everything else reports HYPOTHESIS_FAIL.
    let range = ScanRange::with_d(2..=3, 1..=25);
    let reports = scan("th-2", &range, Strategy::Clearing, 0).unwrap();
    let admissible: Vec<(i64, i64)> = reports
        .iter()
        .filter(|r| r.outcome != Outcome::HypothesisFail)
        .map(|r| (r.params["d"], r.params["n"]))
        .collect();
    let expect_d2: Vec<(i64, i64)> = [1, 5, 9, 13, 17, 21, 25].iter().map(|&n| (2, n)).collect();
    let expect_d3: Vec<(i64, i64)> = [1, 7, 13, 19, 25].iter().map(|&n| (3, n)).collect();
    let expected: Vec<(i64, i64)> = expect_d2.into_iter().chain(expect_d3).collect();
    assert_eq!(admissible, expected);
    // Deterministic ordering over the full tuple list.
    let t = tuples("th-2", &range).unwrap();
    assert_eq!(t.len(), 50);
    assert!(t.windows(2).all(|w| w[0] <= w[1] || w[0]["d"] < w[1]["d"]));
    // The d=2 instances all PASS.
    for r in &reports {
        if r.params["d"] == 2 && r.outcome != Outcome::HypothesisFail {
            assert_eq!(r.outcome, Outcome::Pass, "d=2 n={}", r.params["n"]);
        }
    }
}

#[test]
fn scan_over_empty_range_is_empty() {
    let range = ScanRange::with_d(2..=3, 10..=5);
    let reports = scan("th-2", &range, Strategy::Clearing, 0).unwrap();
    assert!(reports.is_empty());
}

#[test]
fn clearing_refuses_artificially_degenerate_denominator() {
    // (q^0; q^4)_k contains the factor 1 - q^0 = 0; the guard must refuse
    // under every strategy rather than decide.
    let text = "claim degen params n:\n\
        sum k=0..2 of poch(q; q^2)_k / poch(q^0; q^4)_k * q^k\n\
        ~= 0\n\
        mod Phi(n)^1";
    let ast = parse(&ClaimSource::inline(text)).unwrap();
    let claim = lower(&ast, &[("n".to_string(), 5)].into_iter().collect()).unwrap();
    for strategy in [Strategy::Clearing, Strategy::PointEval, Strategy::Auto] {
        let report = verify(&claim, strategy, 0).unwrap();
        assert_eq!(report.outcome, Outcome::NonInvertible, "{strategy}");
        assert!(
            report.residue.as_deref().unwrap_or("").contains("identically zero"),
            "{strategy}: {:?}",
            report.residue
        );
    }
}

#[test]
fn unknown_claim_is_an_error() {
    assert!(builtin_with("th-99", &[("n", 5)]).is_err());
}
