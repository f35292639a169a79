//! Denominator-clearing verification: both sides are brought over the
//! merged common denominator symbolically and the cross-multiplied
//! difference is reduced; PASS means every coefficient reduces to zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::engine::lower::{
    check_denominator_regular, cofactor, merged_denominator, scalar_multipliers, side_clear_monomials,
    side_denominator, side_scalar, DenominatorProblem, EngineFactor, LoweredClaim, LoweredSide,
};
use crate::engine::workring::{WorkElem, WorkRing};
use crate::multipoly::{MPoly, Monomial};
use crate::quotient::ModulusRing;

/// Result of one engine strategy run.
#[derive(Clone, Debug, PartialEq)]
pub enum EngineVerdict {
    Pass,
    Fail { residue: String },
    Refused { problem: DenominatorProblem },
}

/// Sparse polynomial in the claim variables with working-ring coefficients.
#[derive(Clone, Debug)]
pub struct SymPoly {
    pub terms: BTreeMap<Monomial, WorkElem>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(work: &WorkRing) -> SymPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::unit(), work.one());
        SymPoly { terms }
    }

    fn add_into(terms: &mut BTreeMap<Monomial, WorkElem>, mono: Monomial, w: WorkElem) {
        if w.is_plain_zero() {
            return;
        }
        match terms.get_mut(&mono) {
            Some(existing) => {
                existing.add_assign(&w);
                if existing.is_plain_zero() {
                    terms.remove(&mono);
                }
            }
            None => {
                terms.insert(mono, w);
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymPoly) {
        for (mono, w) in &other.terms {
            Self::add_into(&mut self.terms, *mono, w.clone());
        }
    }

    /// self := lead * a_mono * self - coeff * q^{q_exp} * mono * self
    pub fn apply_factor(&mut self, work: &WorkRing, f: &EngineFactor) {
        let mut out = BTreeMap::new();
        for (mono, w) in &self.terms {
            if !f.lead.is_zero() {
                let mut a = w.clone();
                a.scale(&f.lead);
                Self::add_into(&mut out, mono.mul(&f.a_mono), a);
            }
            if !f.coeff.is_zero() {
                let mut b = work.mul_q_power(w, f.q_exp);
                b.scale(&-f.coeff.clone());
                Self::add_into(&mut out, mono.mul(&f.mono), b);
            }
        }
        self.terms = out;
    }

    pub fn apply_q_power(&mut self, work: &WorkRing, e: i64) {
        if e == 0 {
            return;
        }
        for w in self.terms.values_mut() {
            *w = work.mul_q_power(w, e);
        }
    }

    pub fn scale(&mut self, c: &BigInt) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for w in self.terms.values_mut() {
            w.scale(c);
        }
    }

    pub fn mul_monomial(&mut self, mono: &Monomial) {
        if mono.is_unit() {
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (m, w) in old {
            self.terms.insert(m.mul(mono), w);
        }
    }

    /// Full multiplication of every coefficient by a ring element
    /// (used for the `[n]_q` closed-form factor).
    pub fn mul_elem(&mut self, work: &WorkRing, e: &WorkElem) {
        for w in self.terms.values_mut() {
            *w = work.mul(w, e);
        }
    }

    pub fn sub_assign(&mut self, other: &SymPoly) {
        for (mono, w) in &other.terms {
            let mut neg = w.clone();
            neg.scale(&BigInt::from(-1));
            Self::add_into(&mut self.terms, *mono, neg);
        }
    }

    /// Canonically reduced nonzero terms, in graded-lex order.
    pub fn canonical_nonzero(&self, work: &WorkRing) -> Vec<(Monomial, crate::polycore::Poly)> {
        let mut out = Vec::new();
        for (mono, w) in &self.terms {
            let p = work.canonical_poly(w);
            if !p.is_zero() {
                out.push((*mono, p));
            }
        }
        out
    }
}

/// Evaluate a series side's merged numerator over `D_top` symbolically:
/// `S_k = S_{k-1} * (new denominator factors) + prefix_k`, with the per-term
/// q-power absorbed into the prefix.
pub fn series_numerator_symbolic(work: &WorkRing, side: &LoweredSide) -> SymPoly {
    let (num, den, power, top) = match side {
        LoweredSide::Series {
            num,
            den,
            power,
            top,
        } => (num, den, power, top),
        _ => panic!("series side expected"),
    };
    let mut running = SymPoly::zero();
    let mut prefix = SymPoly::one(work);
    prefix.apply_q_power(work, power.constant);
    for k in 0..=*top {
        if k > 0 {
            let j = k - 1;
            for fam in num {
                prefix.apply_factor(work, &fam.factor_at(j));
            }
            prefix.apply_q_power(work, power.per_k);
            for fam in den {
                running.apply_factor(work, &fam.factor_at(j));
            }
        }
        running.add_assign(&prefix);
    }
    running
}

/// Evaluate a closed product side's numerator (scalar handled separately).
pub fn product_numerator_symbolic(work: &WorkRing, side: &LoweredSide) -> SymPoly {
    let (q_exp, qint, num) = match side {
        LoweredSide::Product {
            q_exp, qint, num, ..
        } => (q_exp, qint, num),
        _ => panic!("product side expected"),
    };
    let mut acc = SymPoly::one(work);
    acc.apply_q_power(work, *q_exp);
    if *qint > 0 {
        let qn = work.q_integer(work.n as u32);
        for _ in 0..*qint {
            acc.mul_elem(work, &qn);
        }
    }
    for f in num {
        acc.apply_factor(work, f);
    }
    acc
}

pub fn side_numerator_symbolic(work: &WorkRing, side: &LoweredSide) -> SymPoly {
    match side {
        LoweredSide::Series { .. } => series_numerator_symbolic(work, side),
        LoweredSide::Product { .. } => product_numerator_symbolic(work, side),
        LoweredSide::Zero => SymPoly::zero(),
    }
}

/// Serialized residue: the canonical form of the cleared difference as a
/// polynomial over the public quotient ring.
pub fn residue_string(lc: &LoweredClaim, p: &SymPoly) -> String {
    let ring = ModulusRing::cyclotomic_power(lc.n, lc.power);
    let mut mp = MPoly::zero(&ring);
    for (mono, poly) in p.canonical_nonzero(&lc.work) {
        mp = mp.add(&MPoly::from_term(&ring, mono, ring.reduce_poly(&poly)));
    }
    mp.to_string()
}

/// The clearing strategy. Asserts denominator regularity (refusing with a
/// typed problem otherwise), then checks
/// `s_L N_L C_L mono_L' - s_R N_R C_R mono_R' = 0` over the quotient ring,
/// where `C_i = lcm / D_i` and the cleared monomials are reconciled.
pub fn verify_clearing(lc: &LoweredClaim) -> EngineVerdict {
    let work = &lc.work;
    let den_l = side_denominator(&lc.lhs);
    let den_r = side_denominator(&lc.rhs);
    for den in [&den_l, &den_r] {
        if let Err(problem) = check_denominator_regular(work, den) {
            return EngineVerdict::Refused { problem };
        }
    }
    let lcm = merged_denominator(&den_l, &den_r);
    let cof_l = cofactor(&lcm, &den_l);
    let cof_r = cofactor(&lcm, &den_r);
    let (nc_l, dc_l) = side_clear_monomials(&lc.lhs);
    let (nc_r, dc_r) = side_clear_monomials(&lc.rhs);
    let (mul_l, mul_r) = scalar_multipliers(&side_scalar(&lc.lhs), &side_scalar(&lc.rhs));

    let mut left = side_numerator_symbolic(work, &lc.lhs);
    for f in &cof_l {
        left.apply_factor(work, f);
    }
    left.mul_monomial(&dc_l.mul(&nc_r));
    left.scale(&mul_l);

    let mut right = side_numerator_symbolic(work, &lc.rhs);
    for f in &cof_r {
        right.apply_factor(work, f);
    }
    right.mul_monomial(&dc_r.mul(&nc_l));
    right.scale(&mul_r);

    left.sub_assign(&right);
    let nonzero = left.canonical_nonzero(work);
    if nonzero.is_empty() {
        EngineVerdict::Pass
    } else {
        EngineVerdict::Fail {
            residue: residue_string(lc, &left),
        }
    }
}
