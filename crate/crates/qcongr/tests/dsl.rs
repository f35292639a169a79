//! Parser, pretty-printer and lowering tests, including cross-engine
//! equality of text claims against the built-in catalog.

use std::collections::BTreeMap;
use std::path::Path;

use qcongr::claims::{builtin, verify, Outcome, Strategy};
use qcongr::dsl::{lower, parse, parse_claims, pretty_print, ClaimSource, LowerError};

fn bind(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn shipped(name: &str) -> ClaimSource {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("claims")
        .join(format!("{name}.qcl"));
    ClaimSource::from_file(&path).expect("claim file readable")
}

#[test]
fn spec_example_parses_with_integrality_bound() {
    let src = ClaimSource::inline(
        "claim th23 params d,n: sum k=0..(n-1)/(2d) of poch(q; q^(2d))_k / poch(q^(2d); q^(2d))_k * q^(2*d*k) ~= 0 mod Phi(n)^1",
    );
    let ast = parse(&src).unwrap();
    assert_eq!(ast.name, "th23");
    assert_eq!(ast.params, vec!["d".to_string(), "n".to_string()]);
    // Lower at admissible parameters: identical reports to the builtin.
    let claim = lower(&ast, &bind(&[("d", 1), ("n", 3)])).unwrap();
    let report = verify(&claim, Strategy::Clearing, 0).unwrap();
    assert_eq!(report.outcome, Outcome::Pass);
    // The upper bound carries an integrality assertion.
    let err = lower(&ast, &bind(&[("d", 3), ("n", 4)])).unwrap_err();
    match err {
        LowerError::Integrality { expr, binding } => {
            assert!(expr.contains("(n-1)/(2*d)"), "expr: {expr}");
            assert!(binding.contains("n=4") && binding.contains("d=3"));
        }
        other => panic!("expected integrality violation, got {other}"),
    }
}

#[test]
fn malformed_input_is_a_diagnostic() {
    let src = ClaimSource::inline("claim bad : sum of");
    let err = parse(&src).unwrap_err();
    assert_eq!(err.origin, "<inline>");
    assert!(err.pos.line == 1 && err.pos.col > 1);
    assert!(!err.expected.is_empty());
}

#[test]
fn parser_never_panics_on_junk() {
    for text in [
        "",
        "claim",
        "claim x params",
        "claim x params d: sum",
        "claim x params d: sum k=0..n of poch(q q)_k ~= 0 mod Phi(n)^1",
        "claim x params d: sum k=0..n of poch(q; q^d)_k ~= 0 mod Phi(n)",
        "claim x params d: q^ ~= 0 mod Phi(n)^1",
        "????",
        "claim x params d: sum k=0..2^ of 1 ~= 0 mod p^0",
        "\u{2261}",
    ] {
        let _ = parse(&ClaimSource::inline(text));
    }
}

#[test]
fn unbound_parameter_is_named() {
    let src = shipped("th-2");
    let ast = parse(&src).unwrap();
    match lower(&ast, &bind(&[("d", 2)])) {
        Err(LowerError::Unbound { name }) => assert_eq!(name, "n"),
        other => panic!("expected unbound error, got {other:?}"),
    }
}

#[test]
fn round_trip_all_shipped_claims() {
    for name in [
        "in-2-q1", "in-2-q3", "th-2", "th-1", "th-2-0", "th-2-1", "th-2-2", "th-2-3", "th-2-4",
        "th-2-5", "th-3", "th-5", "s-3", "s-3-1", "s-5", "ss-0",
    ] {
        let src = shipped(name);
        let ast = parse(&src).unwrap();
        let printed = pretty_print(&ast);
        let reparsed = parse(&ClaimSource::inline(&printed))
            .unwrap_or_else(|e| panic!("{name}: reparse failed: {e}\n{printed}"));
        assert_eq!(ast, reparsed, "{name} round trip");
    }
}

#[test]
fn unicode_congruence_sign_accepted() {
    let src = ClaimSource::inline(
        "claim u params d, n: sum k=0..(n-1)/(2*d) of poch(q; q^(2*d))_k / poch(q^(2*d); q^(2*d))_k * q^(2*d*k) \u{2261} 0 mod Phi(n)^1",
    );
    parse(&src).unwrap();
}

/// Lowered text claims must behave exactly like the built-ins of the same
/// formula: identical reports (timing zeroed) on matching parameters.
#[test]
fn cross_engine_equality_small() {
    let cases: &[(&str, &[(&str, i64)])] = &[
        ("th-2", &[("d", 2), ("n", 5)]),
        ("th-2", &[("d", 2), ("n", 9)]),
        ("th-1", &[("d", 3), ("n", 5)]),
        ("th-2-0", &[("n", 5)]),
        ("th-2-1", &[("n", 5)]),
        ("th-2-2", &[("d", 2), ("n", 3)]),
        ("th-2-2", &[("d", 3), ("n", 5)]),
        ("th-2-3", &[("d", 1), ("n", 3)]),
        ("th-2-4", &[("d", 2), ("n", 3)]),
        ("th-2-5", &[("d", 2), ("n", 5)]),
        ("th-3", &[("d", 2), ("s", 1), ("n", 5)]),
        ("th-3", &[("d", 3), ("s", -1), ("n", 5)]),
        ("th-5", &[("d", 1), ("n", 3)]),
        ("th-5", &[("d", 2), ("n", 5)]),
        ("ss-0", &[("d", 1), ("n", 3)]),
        ("s-3", &[("d", 3), ("s", 1), ("n", 7)]),
        ("s-3-1", &[("n", 5)]),
        ("s-5", &[("d", 2), ("s", 1), ("n", 5)]),
    ];
    for (name, params) in cases {
        let ast = parse(&shipped(name)).unwrap();
        let text_claim = lower(&ast, &bind(params)).unwrap();
        let built = builtin(name, &bind(params)).unwrap();
        for strategy in [Strategy::Clearing, Strategy::PointEval] {
            let a = verify(&text_claim, strategy, 0).unwrap().without_timing();
            let b = verify(&built, strategy, 0).unwrap().without_timing();
            assert_eq!(a, b, "{name} {params:?} via {strategy}");
            assert_eq!(a.to_json(), b.to_json(), "{name} {params:?} bytes");
        }
    }
}

/// The printed-form finding claims: text versions match the builtin's
/// branch behavior (outcome parity; names differ by construction).
#[test]
fn in_2_text_claims_match_builtin_branches() {
    for (file, n) in [("in-2-q1", 5i64), ("in-2-q1", 9), ("in-2-q3", 7), ("in-2-q3", 11)] {
        let ast = parse(&shipped(file)).unwrap();
        let text_claim = lower(&ast, &bind(&[("n", n)])).unwrap();
        let built = builtin("in-2", &bind(&[("n", n)])).unwrap();
        for strategy in [Strategy::Clearing, Strategy::PointEval] {
            let a = verify(&text_claim, strategy, 0).unwrap();
            let b = verify(&built, strategy, 0).unwrap();
            assert_eq!(a.outcome, b.outcome, "{file} n={n} via {strategy}");
            assert_eq!(a.residue, b.residue, "{file} n={n} via {strategy}");
        }
    }
}

#[test]
fn multi_claim_file_parses() {
    let text = format!(
        "{}\n{}",
        std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("claims/th-2.qcl")
        )
        .unwrap(),
        std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("claims/th-3.qcl")
        )
        .unwrap()
    );
    let claims = parse_claims(&ClaimSource::inline(text)).unwrap();
    assert_eq!(claims.len(), 2);
    assert_eq!(claims[0].name, "th-2");
    assert_eq!(claims[1].name, "th-3");
}
