//! Lowering of claims into the engine's factored form.
//!
//! Both verification strategies consume the same lowered data: each side is
//! a truncated sum (or a closed product) whose numerator prefixes and
//! denominator families are products of two-term factors
//! `lead * a_mono - coeff * q^{q_exp} * mono`. Denominators are never
//! expanded; the strategies apply factors one binomial at a time.
//!
//! Closed-form atoms with negative variable exponents (e.g. `(x^{-1};q^d)_N`)
//! are cleared here: `1 - c q^e x^{-1}` becomes `(x - c q^e) / x`, with the
//! cleared monomial tracked per side and reconciled in the final
//! cross-multiplied comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::claims::types::{
    ClaimBody, ClosedForm, CongruenceClaim, FixedPoch, ModulusSpec, Rhs, SignedAtom,
};
use crate::engine::workring::WorkRing;
use crate::multipoly::{Monomial, Var};
use crate::qseries::{AffineExp, PochSpec, SeriesSpec};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("engine requires a cyclotomic-power modulus, got {0}")]
    NotPhiPower(String),
    #[error("claim has no body: {0}")]
    NoBody(String),
}

/// `lead * a_mono - coeff * q^{q_exp} * mono`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EngineFactor {
    pub lead: BigInt,
    pub a_mono: Monomial,
    pub coeff: BigInt,
    pub q_exp: i64,
    pub mono: Monomial,
}

impl EngineFactor {
    pub fn is_numeric(&self) -> bool {
        self.a_mono.is_unit() && self.mono.is_unit()
    }

    pub fn var_degree(&self, v: Var) -> u32 {
        self.a_mono.degree_of(v).max(self.mono.degree_of(v)) as u32
    }
}

impl fmt::Display for EngineFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = if self.a_mono.is_unit() {
            self.lead.to_string()
        } else if self.lead.is_one() {
            self.a_mono.to_string()
        } else {
            format!("{}*{}", self.lead, self.a_mono)
        };
        if self.coeff.is_zero() {
            return write!(f, "({a})");
        }
        let mut b = String::new();
        if !self.coeff.is_one() || (self.q_exp == 0 && self.mono.is_unit()) {
            b.push_str(&self.coeff.to_string());
        }
        if self.q_exp != 0 {
            if !b.is_empty() {
                b.push('*');
            }
            b.push_str(&format!("q^{}", self.q_exp));
        }
        if !self.mono.is_unit() {
            if !b.is_empty() {
                b.push('*');
            }
            b.push_str(&self.mono.to_string());
        }
        write!(f, "({a} - {b})")
    }
}

/// A family of factors indexed by j: `lead - coeff * q^{q_exp + step*j} * mono`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochFam {
    pub lead: BigInt,
    pub coeff: BigInt,
    pub q_exp: i64,
    pub step: u32,
    pub mono: Monomial,
}

impl PochFam {
    pub fn factor_at(&self, j: u32) -> EngineFactor {
        EngineFactor {
            lead: self.lead.clone(),
            a_mono: Monomial::unit(),
            coeff: self.coeff.clone(),
            q_exp: self.q_exp + self.step as i64 * j as i64,
            mono: self.mono,
        }
    }

    fn var_degree(&self, v: Var) -> u32 {
        self.mono.degree_of(v) as u32
    }
}

/// One side of a lowered claim.
#[derive(Clone, Debug)]
pub enum LoweredSide {
    Series {
        num: Vec<PochFam>,
        den: Vec<PochFam>,
        power: AffineExp,
        top: u32,
    },
    /// `scalar * q^{q_exp} * [n]_q^{qint} * prod(num) / (prod(den) * den_clear)`,
    /// with `num_clear` dividing the numerator.
    Product {
        scalar: Rational,
        q_exp: i64,
        qint: u32,
        num: Vec<EngineFactor>,
        den: Vec<EngineFactor>,
        num_clear: Monomial,
        den_clear: Monomial,
    },
    Zero,
}

#[derive(Clone, Debug)]
pub struct LoweredClaim {
    pub work: WorkRing,
    pub n: u32,
    pub power: u32,
    pub lhs: LoweredSide,
    pub rhs: LoweredSide,
    pub vars: Vec<Var>,
}

fn rational_parts(c: &Rational) -> (BigInt, BigInt) {
    (c.numer().clone(), c.denom().clone())
}

/// Lower a running-length pochhammer. A non-integer atom coefficient p/r
/// contributes the factor `(r - p q^e mono)` to this list and a constant
/// compensating family `(r)` to the opposite list.
fn lower_poch(spec: &PochSpec, own: &mut Vec<PochFam>, opposite: &mut Vec<PochFam>) {
    let (p, r) = rational_parts(&spec.atom.coeff);
    own.push(PochFam {
        lead: r.clone(),
        coeff: p,
        q_exp: spec.atom.q_exp,
        step: spec.step,
        mono: spec.atom.vars,
    });
    if !r.is_one() {
        opposite.push(PochFam {
            lead: r,
            coeff: BigInt::zero(),
            q_exp: 0,
            step: 1,
            mono: Monomial::unit(),
        });
    }
}

fn lower_series(series: &SeriesSpec) -> LoweredSide {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for spec in &series.numerator {
        lower_poch(spec, &mut num, &mut den);
    }
    for spec in &series.denominator {
        lower_poch(spec, &mut den, &mut num);
    }
    LoweredSide::Series {
        num,
        den,
        power: series.power,
        top: series.top,
    }
}

/// Split a signed atom into `(positive part, negative part)` monomials.
fn split_signed(var_exps: &[i32; 4]) -> (Monomial, Monomial) {
    let mut pos = [0u16; 4];
    let mut neg = [0u16; 4];
    for i in 0..4 {
        if var_exps[i] >= 0 {
            pos[i] = var_exps[i] as u16;
        } else {
            neg[i] = (-var_exps[i]) as u16;
        }
    }
    (Monomial { exps: pos }, Monomial { exps: neg })
}

/// Expand a fixed-length pochhammer of a (possibly negative-exponent) atom
/// into cleared factors plus the cleared monomial `neg^len`.
fn lower_fixed_poch(
    poch: &FixedPoch,
    factors: &mut Vec<EngineFactor>,
    clear: &mut Monomial,
    scalar: &mut Rational,
) {
    let SignedAtom {
        coeff,
        q_exp,
        var_exps,
    } = &poch.atom;
    let (pos, neg) = split_signed(var_exps);
    let (p, r) = rational_parts(coeff);
    for j in 0..poch.len {
        let e = q_exp + poch.step as i64 * j as i64;
        // (1 - (p/r) q^e pos/neg) = (r*neg - p q^e pos) / (r*neg)
        factors.push(EngineFactor {
            lead: r.clone(),
            a_mono: neg,
            coeff: p.clone(),
            q_exp: e,
            mono: pos,
        });
        *clear = clear.mul(&neg);
        if !r.is_one() {
            *scalar *= Rational::new(BigInt::one(), r.clone());
        }
    }
}

fn lower_closed(cf: &ClosedForm) -> LoweredSide {
    let mut scalar = cf.scalar.clone();
    if cf.sign_exp.rem_euclid(2) == 1 {
        scalar = -scalar;
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut num_clear = Monomial::unit();
    let mut den_clear = Monomial::unit();
    let mut num_scalar_adj = Rational::one();
    let mut den_scalar_adj = Rational::one();
    for poch in &cf.num_pochs {
        lower_fixed_poch(poch, &mut num, &mut num_clear, &mut num_scalar_adj);
    }
    for poch in &cf.den_pochs {
        lower_fixed_poch(poch, &mut den, &mut den_clear, &mut den_scalar_adj);
    }
    // scalar * num_adj / den_adj
    let scalar = scalar * num_scalar_adj / den_scalar_adj;
    LoweredSide::Product {
        scalar,
        q_exp: cf.q_exp,
        qint: cf.qint,
        num,
        den,
        num_clear,
        den_clear,
    }
}

pub fn lower_claim(claim: &CongruenceClaim) -> Result<LoweredClaim, EngineError> {
    let (n, power) = match claim.modulus {
        ModulusSpec::PhiPower { n, power } => (n, power),
        ref other => return Err(EngineError::NotPhiPower(other.to_string())),
    };
    let body = claim
        .body
        .as_ref()
        .map_err(|reason| EngineError::NoBody(reason.clone()))?;
    let (lhs_spec, rhs_spec) = match body {
        ClaimBody::Standard { lhs, rhs } => (lhs, rhs),
        ClaimBody::Parametric { .. } => {
            return Err(EngineError::NotPhiPower(
                "parametric claims are verified by specialization".to_string(),
            ))
        }
    };
    let lhs = lower_series(lhs_spec);
    let rhs = match rhs_spec {
        Rhs::Series(s) => lower_series(s),
        Rhs::Closed(cf) => lower_closed(cf),
        Rhs::Zero => LoweredSide::Zero,
    };
    Ok(LoweredClaim {
        work: WorkRing::new(n, power),
        n,
        power,
        lhs,
        rhs,
        vars: claim.vars.clone(),
    })
}

pub type FactorMultiset = BTreeMap<EngineFactor, u32>;

fn multiset_insert(ms: &mut FactorMultiset, f: EngineFactor, count: u32) {
    if count > 0 {
        *ms.entry(f).or_insert(0) += count;
    }
}

/// All denominator factors of a side, with multiplicity.
pub fn side_denominator(side: &LoweredSide) -> FactorMultiset {
    let mut ms = FactorMultiset::new();
    match side {
        LoweredSide::Series { den, top, .. } => {
            for fam in den {
                for j in 0..*top {
                    multiset_insert(&mut ms, fam.factor_at(j), 1);
                }
            }
        }
        LoweredSide::Product { den, .. } => {
            for f in den {
                multiset_insert(&mut ms, f.clone(), 1);
            }
        }
        LoweredSide::Zero => {}
    }
    ms
}

/// Keywise max of the two denominators: the merged common denominator.
pub fn merged_denominator(a: &FactorMultiset, b: &FactorMultiset) -> FactorMultiset {
    let mut out = a.clone();
    for (f, &c) in b {
        let e = out.entry(f.clone()).or_insert(0);
        *e = (*e).max(c);
    }
    out
}

/// `lcm / d` as a factor list (with multiplicity expanded).
pub fn cofactor(lcm: &FactorMultiset, d: &FactorMultiset) -> Vec<EngineFactor> {
    let mut out = Vec::new();
    for (f, &c) in lcm {
        let have = d.get(f).copied().unwrap_or(0);
        for _ in have..c {
            out.push(f.clone());
        }
    }
    out
}

/// Cleared monomial divisors `(numerator, denominator)` of a side.
pub fn side_clear_monomials(side: &LoweredSide) -> (Monomial, Monomial) {
    match side {
        LoweredSide::Product {
            num_clear,
            den_clear,
            ..
        } => (*num_clear, *den_clear),
        _ => (Monomial::unit(), Monomial::unit()),
    }
}

/// Per-variable degree bound of the side's merged numerator
/// `N = sum_k prefix_k * (D / D_k)` (series) or the closed product.
pub fn side_numerator_degree(side: &LoweredSide, v: Var) -> u32 {
    match side {
        LoweredSide::Series {
            num,
            den,
            top,
            ..
        } => {
            let num_per_k: u32 = num.iter().map(|f| f.var_degree(v)).sum();
            let den_per_k: u32 = den.iter().map(|f| f.var_degree(v)).sum();
            // deg at k: num_per_k * k + den_per_k * (top - k); affine in k.
            let at0 = den_per_k * *top;
            let attop = num_per_k * *top;
            at0.max(attop)
        }
        LoweredSide::Product { num, .. } => num.iter().map(|f| f.var_degree(v)).sum(),
        LoweredSide::Zero => 0,
    }
}

pub fn factors_degree(factors: &[EngineFactor], v: Var) -> u32 {
    factors.iter().map(|f| f.var_degree(v)).sum()
}

/// Why clearing must refuse to decide a claim.
#[derive(Clone, Debug, PartialEq)]
pub enum DenominatorProblem {
    /// A denominator factor is identically zero in the ring.
    Degenerate { factor: String },
    /// A numeric denominator factor is a nonzero zero-divisor.
    NonUnit { factor: String },
}

impl fmt::Display for DenominatorProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenominatorProblem::Degenerate { factor } => {
                write!(f, "denominator factor {factor} is identically zero in the ring")
            }
            DenominatorProblem::NonUnit { factor } => {
                write!(f, "denominator factor {factor} is a zero divisor in the ring")
            }
        }
    }
}

/// Regularity guard for a denominator multiset. A factor with two distinct
/// monomials has a nonzero rational constant among its coefficients, hence a
/// unit coefficient, hence is regular (McCoy). Numeric factors must be units.
pub fn check_denominator_regular(
    work: &WorkRing,
    den: &FactorMultiset,
) -> Result<(), DenominatorProblem> {
    for f in den.keys() {
        if f.is_numeric() {
            let value_zero = {
                // lead - coeff q^e identically zero mod Phi^m?
                let mut w = work.mul_q_power(&work.one(), f.q_exp);
                w.scale(&f.coeff);
                let mut lead = work.zero();
                lead.add_assign(&{
                    let mut o = work.one();
                    o.scale(&f.lead);
                    o
                });
                lead.sub_assign(&w);
                work.is_zero_canonical(&lead)
            };
            if value_zero {
                return Err(DenominatorProblem::Degenerate {
                    factor: f.to_string(),
                });
            }
            if !work.numeric_factor_is_unit(&f.lead, &f.coeff, f.q_exp) {
                return Err(DenominatorProblem::NonUnit {
                    factor: f.to_string(),
                });
            }
        } else if f.lead.is_zero() && f.coeff.is_zero() {
            return Err(DenominatorProblem::Degenerate {
                factor: f.to_string(),
            });
        }
        // Factors with a variable part carry a nonzero constant (or pure
        // monomial) coefficient, which is a unit: regular by McCoy.
    }
    Ok(())
}

/// Integer multipliers clearing the two rational scalars:
/// `s_l * A == s_r * B  <=>  (p_l r_r) A == (p_r r_l) B`.
pub fn scalar_multipliers(s_l: &Rational, s_r: &Rational) -> (BigInt, BigInt) {
    let (pl, rl) = rational_parts(s_l);
    let (pr, rr) = rational_parts(s_r);
    (pl * rr, pr * rl)
}

pub fn side_scalar(side: &LoweredSide) -> Rational {
    match side {
        LoweredSide::Product { scalar, .. } => scalar.clone(),
        _ => Rational::one(),
    }
}
