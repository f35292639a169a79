//! Arbitrary-precision rational numbers used as the coefficient field.
//!
//! Backed by `num_rational::BigRational`, which keeps every value reduced to
//! lowest terms with a positive denominator (zero is `0/1`). Helpers here
//! cover the constructors the rest of the crate needs.

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Render as `p` or `p/q`, with a leading minus for negatives.
pub fn rational_to_string(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Deterministic p-adic style height used to bound random test inputs.
pub fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().abs())
}
