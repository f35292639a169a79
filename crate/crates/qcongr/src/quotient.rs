//! The quotient ring `Q[q]/M(q)` for a monic modulus `M`, typically a power
//! of a cyclotomic polynomial. Supports reduction (including Laurent inputs
//! with negative shifts, realized through inversion of q), unit testing via
//! gcd with the modulus, and inversion by the extended Euclidean algorithm.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::polycore::{cyclotomic, poly_ext_gcd, LaurentPoly, Poly};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum RingError {
    #[error("element is not invertible; gcd with modulus is {gcd}")]
    NonInvertible { gcd: Poly },
    #[error("negative q-shift cannot be reduced: q is not a unit modulo the modulus")]
    NonInvertibleShift,
    #[error("modulus must be monic of degree >= 1")]
    BadModulus,
}

/// How the modulus was built; `CyclotomicPower` keeps the engine able to
/// exploit the cyclic structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusDescriptor {
    CyclotomicPower { n: u32, power: u32 },
    ExplicitPoly,
}

#[derive(Debug)]
struct RingInner {
    descriptor: ModulusDescriptor,
    modulus: Poly,
}

/// Shared handle to a quotient ring `Q[q]/M(q)`.
#[derive(Clone, Debug)]
pub struct ModulusRing {
    inner: Arc<RingInner>,
}

impl PartialEq for ModulusRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }
}
impl Eq for ModulusRing {}

impl fmt::Display for ModulusRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inner.descriptor {
            ModulusDescriptor::CyclotomicPower { n, power } => write!(f, "Q[q]/Phi_{n}(q)^{power}"),
            ModulusDescriptor::ExplicitPoly => write!(f, "Q[q]/({})", self.inner.modulus),
        }
    }
}

impl ModulusRing {
    /// `Q[q]/Phi_n(q)^power`.
    pub fn cyclotomic_power(n: u32, power: u32) -> ModulusRing {
        assert!(n >= 1 && power >= 1);
        let phi = cyclotomic(n);
        let mut modulus = phi.clone();
        for _ in 1..power {
            modulus = modulus.mul(&phi);
        }
        ModulusRing {
            inner: Arc::new(RingInner {
                descriptor: ModulusDescriptor::CyclotomicPower { n, power },
                modulus,
            }),
        }
    }

    /// Quotient by an arbitrary monic modulus, e.g. `q^n - 1` for cross-checks.
    pub fn explicit(modulus: Poly) -> Result<ModulusRing, RingError> {
        if modulus.degree().map_or(true, |d| d < 1) || !modulus.is_monic() {
            return Err(RingError::BadModulus);
        }
        Ok(ModulusRing {
            inner: Arc::new(RingInner {
                descriptor: ModulusDescriptor::ExplicitPoly,
                modulus,
            }),
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.inner.modulus
    }

    pub fn descriptor(&self) -> &ModulusDescriptor {
        &self.inner.descriptor
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            ring: self.clone(),
            residue: Poly::zero(),
        }
    }

    pub fn one(&self) -> RingElem {
        self.reduce_poly(&Poly::one())
    }

    /// Canonical residue of a polynomial.
    pub fn reduce_poly(&self, f: &Poly) -> RingElem {
        let (_, residue) = f.divrem(&self.inner.modulus).expect("modulus is nonzero");
        RingElem {
            ring: self.clone(),
            residue,
        }
    }

    /// Canonical residue of a Laurent polynomial. A negative shift is
    /// realized as multiplication by `invert(q)^{|shift|}`, so q must be a
    /// unit in the ring.
    pub fn reduce_laurent(&self, f: &LaurentPoly) -> Result<RingElem, RingError> {
        if f.is_zero() {
            return Ok(self.zero());
        }
        let body = self.reduce_poly(f.body());
        let shift = f.shift();
        if shift >= 0 {
            let qk = self.q_power(shift as u64);
            Ok(body.mul(&qk))
        } else {
            let q = self.reduce_poly(&Poly::monomial(Rational::one(), 1));
            let qinv = q.invert().map_err(|_| RingError::NonInvertibleShift)?;
            Ok(body.mul(&qinv.pow((-shift) as u64)))
        }
    }

    /// `q^e` as a ring element, `e >= 0`.
    pub fn q_power(&self, e: u64) -> RingElem {
        self.reduce_poly(&Poly::monomial(Rational::one(), 1))
            .pow(e)
    }
}

/// A canonical residue in a `ModulusRing`.
#[derive(Clone, Debug)]
pub struct RingElem {
    ring: ModulusRing,
    residue: Poly,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.assert_same_ring(other);
        self.residue == other.residue
    }
}
impl Eq for RingElem {}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl RingElem {
    fn assert_same_ring(&self, other: &RingElem) {
        assert!(
            self.ring == other.ring,
            "ring elements from different rings never interoperate ({} vs {})",
            self.ring,
            other.ring
        );
    }

    pub fn ring(&self) -> &ModulusRing {
        &self.ring
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.assert_same_ring(other);
        RingElem {
            ring: self.ring.clone(),
            residue: self.residue.add(&other.residue),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.assert_same_ring(other);
        RingElem {
            ring: self.ring.clone(),
            residue: self.residue.sub(&other.residue),
        }
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            residue: self.residue.neg(),
        }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.assert_same_ring(other);
        self.ring.reduce_poly(&self.residue.mul(&other.residue))
    }

    pub fn scale(&self, c: &Rational) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            residue: self.residue.scale(c),
        }
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True iff gcd(residue, modulus) = 1.
    pub fn is_unit(&self) -> bool {
        if self.residue.is_zero() {
            return false;
        }
        let (gcd, _, _) =
            poly_ext_gcd(&self.residue, self.ring.modulus()).expect("modulus nonzero");
        gcd.is_one()
    }

    /// Inverse via the extended Euclidean algorithm against the modulus.
    /// A failure names the offending gcd: it signals that a coprimality
    /// hypothesis fails for the given parameters, not an internal fault.
    pub fn invert(&self) -> Result<RingElem, RingError> {
        if self.residue.is_zero() {
            return Err(RingError::NonInvertible {
                gcd: self.ring.modulus().clone(),
            });
        }
        let (gcd, u, _) =
            poly_ext_gcd(&self.residue, self.ring.modulus()).expect("modulus nonzero");
        if !gcd.is_one() {
            return Err(RingError::NonInvertible { gcd });
        }
        Ok(self.ring.reduce_poly(&u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{q_pow_minus_one, Poly};
    use crate::rational::rat_int;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn q_cubed_is_one_mod_phi3() {
        let ring = ModulusRing::cyclotomic_power(3, 1);
        let e = ring.reduce_poly(&p(&[0, 0, 0, 1]));
        assert!(e.is_one());
    }

    #[test]
    fn q_fifth_not_one_mod_phi5_squared() {
        let ring = ModulusRing::cyclotomic_power(5, 2);
        let e = ring.reduce_poly(&p(&[0, 0, 0, 0, 0, 1]));
        // Direct-division oracle: q^5 has degree 5 < 8 = deg Phi_5^2, so the
        // residue is q^5 itself, visibly different from 1.
        assert_eq!(e.residue(), &p(&[0, 0, 0, 0, 0, 1]));
        assert!(!e.is_one());
    }

    #[test]
    fn negative_shift_mod_phi3() {
        let ring = ModulusRing::cyclotomic_power(3, 1);
        let e = ring
            .reduce_laurent(&LaurentPoly::monomial(rat_int(1), -1))
            .unwrap();
        // q * q^2 = q^3 = 1 mod Phi_3, so q^{-1} is the class of q^2.
        assert_eq!(e, ring.reduce_poly(&p(&[0, 0, 1])));
        assert!(e.mul(&ring.q_power(1)).is_one());
    }

    #[test]
    fn unit_tests_against_ext_gcd_oracle() {
        let ring7 = ModulusRing::cyclotomic_power(7, 1);
        let one_minus_q7 = ring7.reduce_poly(&q_pow_minus_one(7).neg());
        assert!(one_minus_q7.is_zero());
        assert!(!one_minus_q7.is_unit());

        let one_minus_q = ring7.reduce_poly(&p(&[1, -1]));
        let (gcd, _, _) = poly_ext_gcd(&p(&[1, -1]), &cyclotomic(7)).unwrap();
        assert!(gcd.is_one());
        assert!(one_minus_q.is_unit());

        let ring7sq = ModulusRing::cyclotomic_power(7, 2);
        let phi7 = ring7sq.reduce_poly(&cyclotomic(7));
        assert!(!phi7.is_unit());
    }

    #[test]
    fn invert_identity_and_units() {
        let ring = ModulusRing::cyclotomic_power(3, 1);
        assert!(ring.one().invert().unwrap().is_one());

        let e = ring.reduce_poly(&p(&[1, -1]));
        let inv = e.invert().unwrap();
        assert!(inv.mul(&e).is_one());
    }

    #[test]
    fn invert_zero_divisor_fails() {
        let ring = ModulusRing::cyclotomic_power(5, 2);
        let e = ring.reduce_poly(&q_pow_minus_one(5).neg());
        match e.invert() {
            Err(RingError::NonInvertible { gcd }) => {
                assert!(!gcd.is_one());
            }
            other => panic!("expected NonInvertible, got {:?}", other),
        }
    }

    #[test]
    fn phi_n_squared_kills_square_not_first_power() {
        for n in [2u32, 3, 5, 9, 12] {
            let ring = ModulusRing::cyclotomic_power(n, 2);
            let one_minus_qn = ring.reduce_poly(&q_pow_minus_one(n).neg());
            assert!(!one_minus_qn.is_zero(), "n={n}");
            assert!(one_minus_qn.mul(&one_minus_qn).is_zero(), "n={n}");
        }
        for n in [2u32, 3, 5, 9, 12] {
            let ring = ModulusRing::cyclotomic_power(n, 1);
            assert!(ring.q_power(n as u64).is_one(), "n={n}");
        }
    }

    #[test]
    fn explicit_modulus_allows_q_n_minus_one() {
        let ring = ModulusRing::explicit(q_pow_minus_one(6)).unwrap();
        assert!(ring.q_power(6).is_one());
        assert!(ModulusRing::explicit(Poly::zero()).is_err());
        assert!(ModulusRing::explicit(p(&[1, 2])).is_err());
    }

    #[test]
    #[should_panic(expected = "different rings")]
    fn cross_ring_comparison_panics() {
        let a = ModulusRing::cyclotomic_power(3, 1).one();
        let b = ModulusRing::cyclotomic_power(5, 1).one();
        let _ = a == b;
    }

    /// Smallest k <= max_k with (q^{e0}; q^{step})_k = 0 mod Phi_n.
    fn smallest_vanishing_k(ring: &ModulusRing, e0: i64, step: i64, max_k: u32) -> Option<u32> {
        let mut prod = ring.one();
        for k in 1..=max_k {
            let j = (k - 1) as i64;
            let factor = LaurentPoly::one().sub(&LaurentPoly::monomial(rat_int(1), e0 + step * j));
            let factor = ring.reduce_laurent(&factor).unwrap();
            prod = prod.mul(&factor);
            if prod.is_zero() {
                return Some(k);
            }
        }
        None
    }

    #[test]
    fn vanishing_index_law() {
        for d in 2i64..=5 {
            for s in [-1i64, 1] {
                let mut n = 3i64;
                while n <= 45 {
                    if (n - s) % (2 * d) == 0 {
                        let nu = n as u32;
                        let ring = ModulusRing::cyclotomic_power(nu, 1);
                        let k1 = smallest_vanishing_k(&ring, s, 2 * d, 2 * nu);
                        assert_eq!(k1, Some(((n - s + 2 * d) / (2 * d)) as u32), "(q^s;q^2d) d={d} s={s} n={n}");
                        let k2 = smallest_vanishing_k(&ring, s, d, 2 * nu);
                        assert_eq!(k2, Some(((n - s + d) / d) as u32), "(q^s;q^d) d={d} s={s} n={n}");
                        if d + 2 * s == 0 {
                            // Degenerate family (q^0; q^{2d}): the first factor
                            // is identically zero, so it vanishes at k = 1.
                            let k3 = smallest_vanishing_k(&ring, 0, 2 * d, nu - 1);
                            assert_eq!(k3, Some(1), "(q^0;q^2d) d={d} s={s} n={n}");
                        } else {
                            let bound = ((2 + d) * n + d - 2 * s) / (2 * d);
                            if bound <= n {
                                let k3 = smallest_vanishing_k(&ring, d + 2 * s, 2 * d, nu);
                                assert_eq!(k3, Some(bound as u32), "(q^(d+2s);q^2d) d={d} s={s} n={n}");
                            } else {
                                let k3 = smallest_vanishing_k(&ring, d + 2 * s, 2 * d, nu - 1);
                                assert_eq!(k3, None, "(q^(d+2s);q^2d) d={d} s={s} n={n}");
                            }
                        }
                    }
                    n += 2;
                }
            }
        }
    }
}
