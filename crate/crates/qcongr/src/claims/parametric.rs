//! Verification of the parametric-a congruences by the specialization
//! argument: modulo `(1-aq^n)(a-q^n)` a claim holds iff both sides are
//! EXACTLY equal (no quotient ring involved) at `a = q^n` and `a = q^{-n}`,
//! the two specialization points being distinct coprime linear factors; the
//! one-sided modulus `(1-aq^n)` needs only `a = q^{-n}`.
//!
//! After substitution each side is a finite sum of terms
//! `numeric-and-x pochhammers / numeric pochhammers * q^{power}`, handled
//! with exact Laurent arithmetic: dense in x, Laurent polynomials in q.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::claims::types::{
    ClaimBody, ClaimError, CongruenceClaim, ModulusSpec, Outcome, ParamPoints, Strategy,
    VerificationReport,
};
use crate::multipoly::Var;
use crate::polycore::LaurentPoly;
use crate::qseries::SeriesSpec;
use crate::rational::Rational;

/// Dense polynomial in x with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
struct XLaurent {
    coeffs: Vec<LaurentPoly>,
}

impl XLaurent {
    fn zero() -> XLaurent {
        XLaurent { coeffs: Vec::new() }
    }

    fn one() -> XLaurent {
        XLaurent {
            coeffs: vec![LaurentPoly::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn add_assign(&mut self, other: &XLaurent) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), LaurentPoly::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i] = self.coeffs[i].add(c);
        }
        self.normalize();
    }

    fn sub_assign(&mut self, other: &XLaurent) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), LaurentPoly::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i] = self.coeffs[i].sub(c);
        }
        self.normalize();
    }

    /// `self *= 1 - coeff * q^{e} * x^{xpow}`.
    fn apply_factor(&mut self, coeff: &Rational, e: i64, xpow: usize) {
        if coeff.is_zero() {
            return;
        }
        let scaled: Vec<LaurentPoly> = self
            .coeffs
            .iter()
            .map(|c| c.shift_by(e).scale(coeff))
            .collect();
        if xpow > 0 {
            self.coeffs
                .resize(self.coeffs.len() + xpow, LaurentPoly::zero());
        }
        for (i, s) in scaled.iter().enumerate() {
            self.coeffs[i + xpow] = self.coeffs[i + xpow].sub(s);
        }
        self.normalize();
    }

    fn shift_q(&mut self, e: i64) {
        for c in self.coeffs.iter_mut() {
            *c = c.shift_by(e);
        }
    }

    fn describe(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})*x^{i}"));
            }
        }
        parts.join(" + ")
    }
}

/// Numeric denominator factor `1 - coeff * q^{exp}`, keyed for merging.
type DenKey = (Rational, i64);

#[derive(Debug, Clone, PartialEq)]
enum ParametricProblem {
    /// A denominator factor is the exact zero polynomial (coeff 1, exp 0):
    /// the claim's series degenerates for these parameters.
    Degenerate { factor: String },
    /// A pochhammer argument still carries a variable the Laurent evaluator
    /// cannot host (only x is supported).
    UnsupportedVariable,
}

/// Exact value of a substituted side as `numerator / prod(den factors)`,
/// accumulating the sum with the running recurrence and stopping once the
/// numerator prefix vanishes identically (adding zero terms cannot change
/// the value of the fraction).
fn eval_side(series: &SeriesSpec) -> Result<(XLaurent, BTreeMap<DenKey, u32>), ParametricProblem> {
    let mut den: BTreeMap<DenKey, u32> = BTreeMap::new();
    let mut running = XLaurent::zero();
    let mut prefix = XLaurent::one();
    prefix.shift_q(series.power.constant);
    for k in 0..=series.top {
        if k > 0 {
            let j = k - 1;
            let mut prefix_dead = false;
            for spec in &series.numerator {
                let e = spec.atom.q_exp + spec.step as i64 * j as i64;
                let xpow = spec.atom.vars.degree_of(Var::X) as usize;
                if spec.atom.vars.total_degree() != spec.atom.vars.degree_of(Var::X) as u32 {
                    return Err(ParametricProblem::UnsupportedVariable);
                }
                if xpow == 0 && spec.atom.coeff.is_one() && e == 0 {
                    // Factor 1 - q^0 = 0: the sum terminates here.
                    prefix_dead = true;
                }
            }
            if prefix_dead {
                break;
            }
            for spec in &series.numerator {
                let e = spec.atom.q_exp + spec.step as i64 * j as i64;
                let xpow = spec.atom.vars.degree_of(Var::X) as usize;
                prefix.apply_factor(&spec.atom.coeff, e, xpow);
            }
            prefix.shift_q(series.power.per_k);
            for spec in &series.denominator {
                if !spec.atom.vars.is_unit() {
                    return Err(ParametricProblem::UnsupportedVariable);
                }
                let e = spec.atom.q_exp + spec.step as i64 * j as i64;
                if spec.atom.coeff.is_one() && e == 0 {
                    return Err(ParametricProblem::Degenerate {
                        factor: spec.factor_desc(j),
                    });
                }
                running.apply_factor(&spec.atom.coeff, e, 0);
                *den.entry((spec.atom.coeff.clone(), e)).or_insert(0) += 1;
            }
        }
        running.add_assign(&prefix);
    }
    Ok((running, den))
}

/// Exact equality of `s1 / d1` and `s2 / d2` via the merged denominator:
/// apply the missing factors of each side and compare Laurent coefficients.
fn fractions_equal(
    s1: &XLaurent,
    d1: &BTreeMap<DenKey, u32>,
    s2: &XLaurent,
    d2: &BTreeMap<DenKey, u32>,
) -> (bool, XLaurent) {
    let mut left = s1.clone();
    let mut right = s2.clone();
    let mut keys: Vec<&DenKey> = d1.keys().chain(d2.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let c1 = d1.get(key).copied().unwrap_or(0);
        let c2 = d2.get(key).copied().unwrap_or(0);
        let max = c1.max(c2);
        for _ in c1..max {
            left.apply_factor(&key.0, key.1, 0);
        }
        for _ in c2..max {
            right.apply_factor(&key.0, key.1, 0);
        }
    }
    left.sub_assign(&right);
    let equal = left.is_zero();
    (equal, left)
}

/// Verify a parametric-a claim by exact equality at its specialization
/// points. PASS iff every point gives exact equality of both sides.
pub fn verify_parametric_a(claim: &CongruenceClaim) -> Result<VerificationReport, ClaimError> {
    let start = Instant::now();
    let (n, points) = match claim.modulus {
        ModulusSpec::ParametricA { n, points } => (n, points),
        ref other => return Err(ClaimError::UnsupportedModulus(other.to_string())),
    };
    let done = |outcome: Outcome, residue: Option<String>| {
        Ok(VerificationReport::new(
            claim,
            Strategy::ParametricA,
            outcome,
            residue,
            start.elapsed().as_millis() as u64,
        ))
    };
    let (lhs, rhs) = match &claim.body {
        Err(reason) => return done(Outcome::HypothesisFail, Some(reason.clone())),
        Ok(ClaimBody::Parametric { lhs, rhs }) => (lhs, rhs),
        Ok(ClaimBody::Standard { .. }) => {
            return Err(ClaimError::UnsupportedModulus(
                "standard claim passed to the parametric verifier".to_string(),
            ))
        }
    };
    // The two specialization points q^n and q^{-n} are distinct for n >= 1,
    // mirroring the coprimality of 1-aq^n and a-q^n.
    let ts: &[i64] = match points {
        ParamPoints::Both => &[n as i64, -(n as i64)],
        ParamPoints::InverseOnly => &[-(n as i64)],
    };
    for &t in ts {
        let lhs_spec = lhs.substitute_a(t);
        let rhs_spec = rhs.substitute_a(t);
        let left = match eval_side(&lhs_spec) {
            Ok(v) => v,
            Err(problem) => return parametric_problem_report(claim, problem, start, t),
        };
        let right = match eval_side(&rhs_spec) {
            Ok(v) => v,
            Err(problem) => return parametric_problem_report(claim, problem, start, t),
        };
        let (equal, diff) = fractions_equal(&left.0, &left.1, &right.0, &right.1);
        if !equal {
            return done(
                Outcome::Fail,
                Some(format!("at a=q^{t}: {}", diff.describe())),
            );
        }
    }
    done(Outcome::Pass, None)
}

fn parametric_problem_report(
    claim: &CongruenceClaim,
    problem: ParametricProblem,
    start: Instant,
    t: i64,
) -> Result<VerificationReport, ClaimError> {
    let msg = match problem {
        ParametricProblem::Degenerate { factor } => format!(
            "at a=q^{t}: denominator factor {factor} is identically zero (degenerate parameters)"
        ),
        ParametricProblem::UnsupportedVariable => {
            return Err(ClaimError::UnsupportedModulus(
                "parametric evaluation supports only the variable x".to_string(),
            ))
        }
    };
    Ok(VerificationReport::new(
        claim,
        Strategy::ParametricA,
        Outcome::NonInvertible,
        Some(msg),
        start.elapsed().as_millis() as u64,
    ))
}
