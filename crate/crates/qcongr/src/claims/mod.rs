//! Declarative claim objects for the numbered congruences, the verification
//! engine front end with its two independent strategies, parameter scans,
//! and report generation.

pub mod builtin;
pub mod identity;
pub mod param_series;
pub mod parametric;
pub mod scan;
pub mod types;

pub use builtin::{builtin, builtin_with, perturb_power, with_modulus_power, BUILTIN_NAMES};
pub use identity::verify_identity;
pub use parametric::verify_parametric_a;
pub use scan::{scan, ScanRange};
pub use types::{
    ClaimBody, ClaimError, ClosedForm, CongruenceClaim, ModulusSpec, Outcome, ParamPoints, Rhs,
    Strategy, VerificationReport,
};

use std::time::Instant;

use crate::engine::clearing::EngineVerdict;
use crate::engine::{lower_claim, verify_clearing, verify_pointeval};
use crate::multipoly::Var;
use crate::qseries::summand;
use crate::quotient::ModulusRing;

/// Verify one claim with the requested strategy.
///
/// - `Clearing` brings both sides over the merged denominator symbolically
///   and reduces the cross-multiplied difference; it refuses (outcome
///   NONINVERTIBLE) when a denominator fails the regularity guard.
/// - `PointEval` checks the same congruence on an integer grid exceeding
///   the per-variable degree bounds.
/// - `Auto` runs Clearing and falls back to PointEval if Clearing refuses.
///
/// Parametric-a claims are routed to their specialization check regardless
/// of the requested strategy.
pub fn verify(
    claim: &CongruenceClaim,
    strategy: Strategy,
    seed: u64,
) -> Result<VerificationReport, ClaimError> {
    match claim.modulus {
        ModulusSpec::ParametricA { .. } => return verify_parametric_a(claim),
        ModulusSpec::PrimePower { .. } => {
            return Err(ClaimError::UnsupportedModulus(format!(
                "{} (use the p-adic suite)",
                claim.modulus
            )))
        }
        ModulusSpec::PhiPower { .. } => {}
    }
    let start = Instant::now();
    if let Err(reason) = &claim.body {
        return Ok(VerificationReport::new(
            claim,
            strategy,
            Outcome::HypothesisFail,
            Some(reason.clone()),
            start.elapsed().as_millis() as u64,
        ));
    }
    let lowered = lower_claim(claim).map_err(|e| ClaimError::UnsupportedModulus(e.to_string()))?;
    let (verdict, used) = match strategy {
        Strategy::Clearing => (verify_clearing(&lowered), Strategy::Clearing),
        Strategy::PointEval => (verify_pointeval(&lowered, seed), Strategy::PointEval),
        Strategy::Auto => {
            let first = verify_clearing(&lowered);
            if matches!(first, EngineVerdict::Refused { .. }) {
                (verify_pointeval(&lowered, seed), Strategy::Auto)
            } else {
                (first, Strategy::Auto)
            }
        }
        other => {
            return Err(ClaimError::UnsupportedModulus(format!(
                "strategy {other} does not apply to quotient-ring claims"
            )))
        }
    };
    let (outcome, residue) = match verdict {
        EngineVerdict::Pass => (Outcome::Pass, None),
        EngineVerdict::Fail { residue } => (Outcome::Fail, Some(residue)),
        EngineVerdict::Refused { problem } => (Outcome::NonInvertible, Some(problem.to_string())),
    };
    Ok(VerificationReport::new(
        claim,
        used,
        outcome,
        residue,
        start.elapsed().as_millis() as u64,
    ))
}

/// Term-by-term specialization check: substituting x in the two-base
/// congruence reproduces the specialized claims, summand by summand, as
/// fractions over Phi_n^2 — the x -> q^2 substitution against the first
/// specialized claim and x -> -q^2 against the second, with the shared
/// right side checked at x^2 -> q^4.
pub fn check_specialization_chain(n: i64) -> Result<(), String> {
    use crate::claims::types::Rhs;

    let th2 = builtin_with("th-2", &[("d", 2), ("n", n)]).map_err(|e| e.to_string())?;
    let th20 = builtin_with("th-2-0", &[("n", n)]).map_err(|e| e.to_string())?;
    let th21 = builtin_with("th-2-1", &[("n", n)]).map_err(|e| e.to_string())?;
    let ring = ModulusRing::cyclotomic_power(n as u32, 2);

    let body = |c: &CongruenceClaim| -> Result<(crate::qseries::SeriesSpec, crate::qseries::SeriesSpec), String> {
        match &c.body {
            Ok(ClaimBody::Standard { lhs, rhs }) => {
                let rhs = match rhs {
                    Rhs::Series(s) => s.clone(),
                    _ => return Err("expected a series right side".to_string()),
                };
                Ok((lhs.clone(), rhs))
            }
            _ => Err(format!("claim {} has no standard body", c.name)),
        }
    };
    let (th2_lhs, th2_rhs) = body(&th2)?;
    let (th20_lhs, th20_rhs) = body(&th20)?;
    let (th21_lhs, th21_rhs) = body(&th21)?;

    let q2 = ring.q_power(2);
    let neg_q2 = q2.neg();

    for k in 0..=(n - 1) as u32 {
        // x -> q^2 in the general left side vs the first specialization.
        let general = summand(&th2_lhs, k, &ring).map_err(|e| e.to_string())?;
        let lhs_at_q2 = crate::multipoly::MFraction::new(
            general.numerator.evaluate(&[(Var::X, q2.clone())]),
            general.denominator.evaluate(&[(Var::X, q2.clone())]),
        );
        let special = summand(&th20_lhs, k, &ring).map_err(|e| e.to_string())?;
        if !lhs_at_q2.cross_eq(&special) {
            return Err(format!("x=q^2 mismatch at n={n}, k={k}"));
        }
        // x -> -q^2 vs the second specialization.
        let lhs_at_neg = crate::multipoly::MFraction::new(
            general.numerator.evaluate(&[(Var::X, neg_q2.clone())]),
            general.denominator.evaluate(&[(Var::X, neg_q2.clone())]),
        );
        let special = summand(&th21_lhs, k, &ring).map_err(|e| e.to_string())?;
        if !lhs_at_neg.cross_eq(&special) {
            return Err(format!("x=-q^2 mismatch at n={n}, k={k}"));
        }
        // The shared right side carries x^2, so x -> q^2 and x -> -q^2 both
        // send it to the specialized series (at x^2 = q^4).
        let general = summand(&th2_rhs, k, &ring).map_err(|e| e.to_string())?;
        for value in [q2.clone(), neg_q2.clone()] {
            let rhs_at = crate::multipoly::MFraction::new(
                general.numerator.evaluate(&[(Var::X, value.clone())]),
                general.denominator.evaluate(&[(Var::X, value.clone())]),
            );
            for (label, spec) in [("th-2-0", &th20_rhs), ("th-2-1", &th21_rhs)] {
                let special = summand(spec, k, &ring).map_err(|e| e.to_string())?;
                if !rhs_at.cross_eq(&special) {
                    return Err(format!("x^2=q^4 mismatch against {label} at n={n}, k={k}"));
                }
            }
        }
    }
    Ok(())
}
