//! Dense univariate (Laurent) polynomial arithmetic over the rationals,
//! plus cyclotomic polynomials and q-integers.
//!
//! `Poly` stores coefficients densely, index `i` holding the coefficient of
//! `q^i`, and is kept canonical: no trailing zero coefficient, and the zero
//! polynomial is the empty coefficient list (its degree is `None`, the
//! "minus infinity" marker). `LaurentPoly` is `q^shift * body` with the body
//! carrying a nonzero constant term unless it is zero.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::rational::{rat_int, rational_to_string, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("ext_gcd requires at least one nonzero input")]
    ExtGcdBothZero,
}

/// Dense univariate polynomial over `Rational` in the variable `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// `c * q^e` for `e >= 0`.
    pub fn monomial(c: Rational, e: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        Poly { coeffs }
    }

    /// Builds from a coefficient list (index = exponent), normalizing.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.leading_coeff(), Some(c) if c.is_one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        // Iterate collected nonzeros so sparse operands (e.g. high-degree
        // binomial factors) cost proportionally to their support.
        let nz_other: Vec<(usize, &Rational)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .collect();
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in &nz_other {
                coeffs[i + j] += a * *b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `q^e`.
    pub fn shift_up(&self, e: usize) -> Poly {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); e];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Exact quotient and remainder: `self = g * quot + rem`, `deg rem < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dg = g.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dg {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = {
            let lc = g.leading_coeff().unwrap();
            Rational::one() / lc.clone()
        };
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - 1 - dg;
        let mut quot = vec![Rational::zero(); dq + 1];
        for i in (0..=dq).rev() {
            let c = rem[i + dg].clone() * &lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (j, gc) in g.coeffs.iter().enumerate() {
                if !gc.is_zero() {
                    rem[i + j] -= &c * gc;
                }
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact division; panics if the remainder is nonzero. Used where
    /// divisibility is a structural fact (cyclotomic construction).
    fn div_exact(&self, g: &Poly) -> Poly {
        let (quot, rem) = self.divrem(g).expect("division by zero");
        assert!(rem.is_zero(), "div_exact: nonzero remainder");
        quot
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = Rational::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mag_one = mag.is_one();
            match (i, mag_one) {
                (0, _) => write!(f, "{}", rational_to_string(&mag))?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", rational_to_string(&mag))?,
                (_, true) => write!(f, "q^{}", i)?,
                (_, false) => write!(f, "{}*q^{}", rational_to_string(&mag), i)?,
            }
        }
        Ok(())
    }
}

/// Extended gcd: returns `(g, u, v)` with `g` monic and `u*f + v*g0 = g`.
pub fn poly_ext_gcd(f: &Poly, g0: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
    if f.is_zero() && g0.is_zero() {
        return Err(PolyError::ExtGcdBothZero);
    }
    // Invariants: r0 = u0*f + v0*g0, r1 = u1*f + v1*g0.
    let mut r0 = f.clone();
    let mut r1 = g0.clone();
    let mut u0 = Poly::one();
    let mut v0 = Poly::zero();
    let mut u1 = Poly::zero();
    let mut v1 = Poly::one();
    while !r1.is_zero() {
        let (quot, rem) = r0.divrem(&r1)?;
        let nu = u0.sub(&quot.mul(&u1));
        let nv = v0.sub(&quot.mul(&v1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        v0 = v1;
        u1 = nu;
        v1 = nv;
    }
    // Normalize to a monic gcd.
    let lc = r0.leading_coeff().cloned().unwrap();
    let inv = Rational::one() / lc;
    Ok((r0.scale(&inv), u0.scale(&inv), v0.scale(&inv)))
}

pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() && g.is_zero() {
        return Poly::zero();
    }
    let (gcd, _, _) = poly_ext_gcd(f, g).unwrap();
    gcd
}

/// `q^n - 1`.
pub fn q_pow_minus_one(n: u32) -> Poly {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = rat_int(-1);
    coeffs[n as usize] = rat_int(1);
    Poly::from_coeffs(coeffs)
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: u32) -> Poly {
    assert!(n >= 1, "q_integer requires n >= 1");
    Poly::from_coeffs(vec![rat_int(1); n as usize])
}

static CYCLOTOMIC_MEMO: Lazy<Mutex<HashMap<u32, Poly>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial, by exact division:
/// `Phi_n = (q^n - 1) / prod_{d | n, d < n} Phi_d`, memoized per process.
/// The division is self-checking: a nonzero remainder would panic.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1, "cyclotomic requires n >= 1");
    if let Some(p) = CYCLOTOMIC_MEMO.lock().unwrap().get(&n) {
        return p.clone();
    }
    let value = if n == 1 {
        Poly::from_i64_coeffs(&[-1, 1])
    } else {
        let mut divisor = Poly::one();
        for d in 1..n {
            if n % d == 0 {
                divisor = divisor.mul(&cyclotomic(d));
            }
        }
        q_pow_minus_one(n).div_exact(&divisor)
    };
    CYCLOTOMIC_MEMO
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(value)
        .clone()
}

/// Euler's totient, the degree of `Phi_n`.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `q^shift * body`; `body` has a nonzero constant term unless zero,
/// and zero is represented with `shift == 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    body: Poly,
    shift: i64,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            body: Poly::zero(),
            shift: 0,
        }
    }

    pub fn one() -> Self {
        LaurentPoly {
            body: Poly::one(),
            shift: 0,
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        LaurentPoly::new(p, 0)
    }

    /// Canonicalizes `q^shift * body` by moving factors of q into the shift.
    pub fn new(body: Poly, shift: i64) -> Self {
        if body.is_zero() {
            return LaurentPoly::zero();
        }
        let low = body
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero poly has a nonzero coefficient");
        if low == 0 {
            return LaurentPoly { body, shift };
        }
        let coeffs = body.coeffs()[low..].to_vec();
        LaurentPoly {
            body: Poly::from_coeffs(coeffs),
            shift: shift + low as i64,
        }
    }

    /// `c * q^e` with any sign of `e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            body: Poly::constant(c),
            shift: e,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Lowest and highest exponents of q present, `None` when zero.
    pub fn support(&self) -> Option<(i64, i64)> {
        self.body
            .degree()
            .map(|d| (self.shift, self.shift + d as i64))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            body: self.body.mul(&other.body),
            shift: self.shift + other.shift,
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let shift = self.shift.min(other.shift);
        let a = self.body.shift_up((self.shift - shift) as usize);
        let b = other.body.shift_up((other.shift - shift) as usize);
        LaurentPoly::new(a.add(&b), shift)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            body: self.body.neg(),
            shift: self.shift,
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            body: self.body.scale(c),
            shift: self.shift,
        }
    }

    /// Multiply by `q^e`.
    pub fn shift_by(&self, e: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            body: self.body.clone(),
            shift: self.shift + e,
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.shift == 0 {
            write!(f, "{}", self.body)
        } else {
            write!(f, "q^({}) * ({})", self.shift, self.body)
        }
    }
}
