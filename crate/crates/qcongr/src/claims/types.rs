//! Claim objects, verification outcomes, and report records.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::multipoly::Var;
use crate::qseries::SeriesSpec;
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ClaimError {
    #[error("unknown claim name: {0}")]
    UnknownClaim(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("integrality violation: {expr} with {binding} is not an integer")]
    Integrality { expr: String, binding: String },
    #[error("claim modulus is not supported by this operation: {0}")]
    UnsupportedModulus(String),
    #[error("parameter {name} out of range: {reason}")]
    BadParameter { name: String, reason: String },
}

/// Which specializations of the auxiliary parameter `a` a parametric claim
/// requires to hold exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamPoints {
    /// modulo (1-aq^n)(a-q^n): check a = q^n and a = q^{-n}.
    Both,
    /// modulo (1-aq^n): check a = q^{-n}.
    InverseOnly,
}

/// The modulus of a congruence claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusSpec {
    PhiPower { n: u32, power: u32 },
    ParametricA { n: u32, points: ParamPoints },
    PrimePower { p: u64, e: u32 },
}

impl fmt::Display for ModulusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusSpec::PhiPower { n, power } => write!(f, "Phi_{n}(q)^{power}"),
            ModulusSpec::ParametricA { n, points } => match points {
                ParamPoints::Both => write!(f, "(1-a*q^{n})(a-q^{n})"),
                ParamPoints::InverseOnly => write!(f, "(1-a*q^{n})"),
            },
            ModulusSpec::PrimePower { p, e } => write!(f, "{p}^{e}"),
        }
    }
}

/// An atom with signed variable exponents, as needed by closed forms like
/// ((qx)^{-1}; q^d)_N. Series atoms use nonnegative exponents only.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedAtom {
    pub coeff: Rational,
    pub q_exp: i64,
    pub var_exps: [i32; 4],
}

impl SignedAtom {
    pub fn numeric(coeff: Rational, q_exp: i64) -> SignedAtom {
        SignedAtom {
            coeff,
            q_exp,
            var_exps: [0; 4],
        }
    }

    pub fn with_var(coeff: Rational, q_exp: i64, v: Var, e: i32) -> SignedAtom {
        let mut var_exps = [0; 4];
        var_exps[v as usize] = e;
        SignedAtom {
            coeff,
            q_exp,
            var_exps,
        }
    }
}

/// Fixed-length q-shifted factorial inside a closed form:
/// `(atom; q^step)_len`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoch {
    pub atom: SignedAtom,
    pub step: u32,
    pub len: u32,
}

/// Product closed form:
/// `(-1)^{sign_exp} * scalar * q^{q_exp} * [n]_q^{qint} * prod num / prod den`.
/// All exponent expressions are resolved to integers at claim-build time;
/// the builders check the divisibility conditions and fail loudly otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub sign_exp: i64,
    pub scalar: Rational,
    pub q_exp: i64,
    pub qint: u32,
    pub num_pochs: Vec<FixedPoch>,
    pub den_pochs: Vec<FixedPoch>,
}

impl ClosedForm {
    pub fn zero_free() -> ClosedForm {
        ClosedForm {
            sign_exp: 0,
            scalar: Rational::from_integer(1.into()),
            q_exp: 0,
            qint: 0,
            num_pochs: Vec::new(),
            den_pochs: Vec::new(),
        }
    }
}

/// Right-hand side of a claim.
#[derive(Clone, Debug)]
pub enum Rhs {
    Series(SeriesSpec),
    Closed(ClosedForm),
    Zero,
}

/// The two sides of a claim; absent when the hypothesis predicate failed,
/// in which case verification reports HYPOTHESIS_FAIL instead of running.
#[derive(Clone, Debug)]
pub enum ClaimBody {
    Standard {
        lhs: SeriesSpec,
        rhs: Rhs,
    },
    /// Sides carrying the auxiliary parameter `a`, verified by exact
    /// equality at the specialization points of the modulus.
    Parametric {
        lhs: crate::claims::param_series::ParamSeries,
        rhs: crate::claims::param_series::ParamSeries,
    },
}

impl ClaimBody {
    pub fn standard(lhs: SeriesSpec, rhs: Rhs) -> ClaimBody {
        ClaimBody::Standard { lhs, rhs }
    }

    pub fn parametric(
        lhs: crate::claims::param_series::ParamSeries,
        rhs: crate::claims::param_series::ParamSeries,
    ) -> ClaimBody {
        ClaimBody::Parametric { lhs, rhs }
    }
}

/// A declarative q-congruence claim.
#[derive(Clone, Debug)]
pub struct CongruenceClaim {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub modulus: ModulusSpec,
    pub vars: Vec<Var>,
    pub body: Result<ClaimBody, String>,
}

impl CongruenceClaim {
    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "HYPOTHESIS_FAIL")]
    HypothesisFail,
    #[serde(rename = "NONINVERTIBLE")]
    NonInvertible,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => write!(f, "PASS"),
            Outcome::Fail => write!(f, "FAIL"),
            Outcome::HypothesisFail => write!(f, "HYPOTHESIS_FAIL"),
            Outcome::NonInvertible => write!(f, "NONINVERTIBLE"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    #[serde(rename = "clearing")]
    Clearing,
    #[serde(rename = "point-eval")]
    PointEval,
    #[serde(rename = "auto")]
    Auto,
    #[serde(rename = "parametric-a")]
    ParametricA,
    #[serde(rename = "identity")]
    Identity,
    #[serde(rename = "p-adic")]
    PAdic,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Clearing => write!(f, "clearing"),
            Strategy::PointEval => write!(f, "point-eval"),
            Strategy::Auto => write!(f, "auto"),
            Strategy::ParametricA => write!(f, "parametric-a"),
            Strategy::Identity => write!(f, "identity"),
            Strategy::PAdic => write!(f, "p-adic"),
        }
    }
}

/// Outcome record for one verification run. `residue` is the serialized
/// reduced residue of LHS - RHS on FAIL, or a diagnostic for the other
/// non-PASS outcomes; PASS means the residue is exactly zero.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub params: BTreeMap<String, i64>,
    pub strategy: Strategy,
    pub outcome: Outcome,
    pub residue: Option<String>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn new(
        claim: &CongruenceClaim,
        strategy: Strategy,
        outcome: Outcome,
        residue: Option<String>,
        millis: u64,
    ) -> VerificationReport {
        VerificationReport {
            claim: claim.name.clone(),
            params: claim.params.clone(),
            strategy,
            outcome,
            residue,
            millis,
        }
    }

    /// Copy with zeroed timing, for byte-stable comparisons and output.
    pub fn without_timing(&self) -> VerificationReport {
        let mut r = self.clone();
        r.millis = 0;
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// CSV projection: params flattened as `k=v` pairs joined by spaces.
    pub fn to_csv_row(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let residue = self.residue.as_deref().unwrap_or("");
        format!(
            "{},{},{},{},{},{}",
            self.claim,
            params,
            self.strategy,
            self.outcome,
            csv_escape(residue),
            self.millis
        )
    }

    pub fn csv_header() -> &'static str {
        "claim,params,strategy,outcome,residue,millis"
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_field_order_and_names() {
        let mut params = BTreeMap::new();
        params.insert("d".to_string(), 2);
        params.insert("n".to_string(), 5);
        let report = VerificationReport {
            claim: "th-2".to_string(),
            params,
            strategy: Strategy::Clearing,
            outcome: Outcome::Pass,
            residue: None,
            millis: 3,
        };
        assert_eq!(
            report.to_json(),
            r#"{"claim":"th-2","params":{"d":2,"n":5},"strategy":"clearing","outcome":"PASS","residue":null,"millis":3}"#
        );
        assert_eq!(
            report.without_timing().to_csv_row(),
            "th-2,d=2 n=5,clearing,PASS,,0"
        );
    }
}
