//! Sparse multivariate polynomials over a quotient ring, in the fixed,
//! closed variable set {x, y, a, m}. Terms are kept in graded-lexicographic
//! order so serialization and golden comparisons are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::quotient::{ModulusRing, RingElem};

/// The four symbolic parameters used by the congruence claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    A = 2,
    M = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::A, Var::M];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::A => "a",
            Var::M => "m",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "a" => Some(Var::A),
            "m" => Some(Var::M),
            _ => None,
        }
    }
}

/// Exponent vector over {x, y, a, m}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub exps: [u16; 4],
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var, e: u16) -> Monomial {
        let mut exps = [0u16; 4];
        exps[v as usize] = e;
        Monomial { exps }
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_of(&self, v: Var) -> u16 {
        self.exps[v as usize]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; 4];
        for i in 0..4 {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        Monomial { exps }
    }
}

/// Graded-lexicographic: compare total degree first, then exponents in
/// x, y, a, m order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.degree_of(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}^{}", v.name(), e)?;
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with `RingElem` coefficients.
/// Invariant: no zero coefficient is stored; the empty map is zero.
#[derive(Clone, Debug)]
pub struct MPoly {
    ring: ModulusRing,
    terms: BTreeMap<Monomial, RingElem>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.assert_same_ring(other);
        self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl MPoly {
    fn assert_same_ring(&self, other: &MPoly) {
        assert!(
            self.ring == other.ring,
            "multivariate polynomials from different rings never interoperate"
        );
    }

    pub fn zero(ring: &ModulusRing) -> MPoly {
        MPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &ModulusRing) -> MPoly {
        MPoly::from_term(ring, Monomial::unit(), ring.one())
    }

    pub fn constant(ring: &ModulusRing, c: RingElem) -> MPoly {
        MPoly::from_term(ring, Monomial::unit(), c)
    }

    pub fn variable(ring: &ModulusRing, v: Var) -> MPoly {
        MPoly::from_term(ring, Monomial::var(v, 1), ring.one())
    }

    pub fn from_term(ring: &ModulusRing, mono: Monomial, coeff: RingElem) -> MPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &ModulusRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RingElem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> RingElem {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree_of(&self, v: Var) -> u16 {
        self.terms
            .keys()
            .map(|m| m.degree_of(v))
            .max()
            .unwrap_or(0)
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, RingElem>, mono: Monomial, coeff: RingElem) {
        if coeff.is_zero() {
            return;
        }
        match terms.remove(&mono) {
            None => {
                terms.insert(mono, coeff);
            }
            Some(existing) => {
                let sum = existing.add(&coeff);
                if !sum.is_zero() {
                    terms.insert(mono, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_same_ring(other);
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            Self::insert_add(&mut terms, *mono, coeff.clone());
        }
        MPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_same_ring(other);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                Self::insert_add(&mut terms, m1.mul(m2), c1.mul(c2));
            }
        }
        MPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_coeff(&self, c: &RingElem) -> MPoly {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            Self::insert_add(&mut terms, *m, a.mul(c));
        }
        MPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// True iff some coefficient is a unit in the owner ring. By the McCoy
    /// argument this makes the polynomial a non-zero-divisor, which is the
    /// soundness condition for denominator clearing.
    pub fn is_regular(&self) -> bool {
        self.terms.values().any(|c| c.is_unit())
    }

    /// Substitutes ring elements for a subset of the variables; unassigned
    /// variables remain symbolic.
    pub fn evaluate(&self, assignment: &[(Var, RingElem)]) -> MPoly {
        let mut result = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut exps = mono.exps;
            for (v, value) in assignment {
                let e = exps[*v as usize];
                if e > 0 {
                    c = c.mul(&value.pow(e as u64));
                    exps[*v as usize] = 0;
                }
            }
            Self::insert_add(&mut result, Monomial { exps }, c);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: result,
        }
    }
}

/// Deterministic text form: terms in graded-lex order, coefficients in
/// brackets, exponents explicit.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_unit() {
                write!(f, "[{}]", coeff)?;
            } else {
                write!(f, "[{}]*{}", coeff, mono)?;
            }
        }
        Ok(())
    }
}

/// A formal quotient of two `MPoly`s. No reduction is attempted: the
/// verification engine clears denominators or evaluates instead, since gcd
/// over a non-domain coefficient ring is ill-posed.
#[derive(Clone, Debug)]
pub struct MFraction {
    pub numerator: MPoly,
    pub denominator: MPoly,
}

impl MFraction {
    pub fn new(numerator: MPoly, denominator: MPoly) -> MFraction {
        assert!(
            !denominator.is_zero(),
            "fraction denominator must be nonzero"
        );
        MFraction {
            numerator,
            denominator,
        }
    }

    pub fn from_poly(p: MPoly) -> MFraction {
        let one = MPoly::one(p.ring());
        MFraction {
            numerator: p,
            denominator: one,
        }
    }

    pub fn mul(&self, other: &MFraction) -> MFraction {
        MFraction::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
    }

    /// Cross-multiplied equality: `a/b = c/d` iff `a*d = c*b`. Exact, and
    /// meaningful when both denominators are regular.
    pub fn cross_eq(&self, other: &MFraction) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }
}

impl fmt::Display for MFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}
