//! Integer arithmetic for the verification engine.
//!
//! Claims are congruences modulo `Phi_n(q)^m`. The engine computes in
//! `Z[q]/((q^n-1)^m)` instead: `(q^n-1)^m` is a multiple of `Phi_n(q)^m`, so
//! reducing the final result modulo `Phi_n(q)^m` gives the same residue as
//! computing there directly, while multiplication by `q^e` becomes index
//! arithmetic instead of polynomial division.
//!
//! Elements are stored in the epsilon-block basis with `eps = q^n - 1`:
//! block `t < m` of length `n` holds the coefficients of `q^j * eps^t`.
//! Since `eps^m = 0` in the working ring and `q^n = 1 + eps`,
//! `q^e = q^r * (1 + eps)^a = q^r * sum_t C(a,t) eps^t` for `e = a*n + r`,
//! which touches at most `m` blocks per source coefficient.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polycore::{cyclotomic, euler_phi, poly_gcd, Poly};
use crate::rational::Rational;

/// Working ring `Z[q]/((q^n-1)^m)` with canonical reduction to `Phi_n^m`.
#[derive(Clone, Debug)]
pub struct WorkRing {
    pub n: usize,
    pub m: usize,
    /// `Phi_n(q)^m` with integer coefficients, monic, for final reduction.
    phi_pow: Vec<BigInt>,
}

impl WorkRing {
    pub fn new(n: u32, m: u32) -> WorkRing {
        assert!(n >= 1 && m >= 1);
        let phi = cyclotomic(n);
        let mut modulus = Poly::one();
        for _ in 0..m {
            modulus = modulus.mul(&phi);
        }
        let phi_pow = modulus
            .coeffs()
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "cyclotomic powers are integral");
                c.numer().clone()
            })
            .collect();
        WorkRing {
            n: n as usize,
            m: m as usize,
            phi_pow,
        }
    }

    pub fn len(&self) -> usize {
        self.n * self.m
    }

    pub fn canonical_len(&self) -> usize {
        (euler_phi(self.n as u32) as usize) * self.m
    }

    pub fn zero(&self) -> WorkElem {
        WorkElem {
            blocks: vec![BigInt::zero(); self.len()],
        }
    }

    pub fn one(&self) -> WorkElem {
        let mut e = self.zero();
        e.blocks[0] = BigInt::one();
        e
    }

    pub fn from_int(&self, c: i64) -> WorkElem {
        let mut e = self.zero();
        e.blocks[0] = BigInt::from(c);
        e
    }

    /// `[n']_q = 1 + q + ... + q^{n'-1}` for n' <= n (the q-integer of the
    /// claim's own n fits in one block).
    pub fn q_integer(&self, np: u32) -> WorkElem {
        let mut e = self.zero();
        for j in 0..np as usize {
            let (r, a) = self.split_exp(j as i64);
            self.add_q_power_times(&mut e, r, a, &BigInt::one());
        }
        e
    }

    /// Euclidean split `e = a*n + r` with `0 <= r < n`.
    fn split_exp(&self, e: i64) -> (usize, i64) {
        let n = self.n as i64;
        let r = e.rem_euclid(n);
        let a = (e - r) / n;
        (r as usize, a)
    }

    /// `dest += v * q^r * (1+eps)^a` restricted to the plain block, i.e.
    /// treats the source as block 0. Used by constructors.
    fn add_q_power_times(&self, dest: &mut WorkElem, r: usize, a: i64, v: &BigInt) {
        let mut binom = BigInt::one();
        for t in 0..self.m {
            if t > 0 {
                // C(a, t) = C(a, t-1) * (a - t + 1) / t
                binom = binom * BigInt::from(a - t as i64 + 1) / BigInt::from(t as i64);
            }
            if !binom.is_zero() {
                dest.blocks[t * self.n + r] += &binom * v;
            }
        }
    }

    /// `q^e * src`, any sign of `e`.
    pub fn mul_q_power(&self, src: &WorkElem, e: i64) -> WorkElem {
        let mut dest = self.zero();
        let n = self.n;
        for t in 0..self.m {
            for j in 0..n {
                let v = &src.blocks[t * n + j];
                if v.is_zero() {
                    continue;
                }
                let (r, a) = self.split_exp(e + j as i64);
                // q^{e+j} eps^t = q^r (1+eps)^a eps^t = q^r sum_s C(a,s) eps^{t+s}
                let mut binom = BigInt::one();
                for s in 0..(self.m - t) {
                    if s > 0 {
                        binom = binom * BigInt::from(a - s as i64 + 1) / BigInt::from(s as i64);
                    }
                    if !binom.is_zero() {
                        dest.blocks[(t + s) * n + r] += &binom * v;
                    }
                }
            }
        }
        dest
    }

    /// Full product of two elements.
    pub fn mul(&self, a: &WorkElem, b: &WorkElem) -> WorkElem {
        let n = self.n;
        let mut dest = self.zero();
        let mut buf = vec![BigInt::zero(); 2 * n - 1];
        for ta in 0..self.m {
            let ablock = &a.blocks[ta * n..(ta + 1) * n];
            if ablock.iter().all(|c| c.is_zero()) {
                continue;
            }
            for tb in 0..(self.m - ta) {
                let bblock = &b.blocks[tb * n..(tb + 1) * n];
                if bblock.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for v in buf.iter_mut() {
                    v.set_zero();
                }
                for (i, av) in ablock.iter().enumerate() {
                    if av.is_zero() {
                        continue;
                    }
                    for (j, bv) in bblock.iter().enumerate() {
                        if !bv.is_zero() {
                            buf[i + j] += av * bv;
                        }
                    }
                }
                // Fold q^{n+i} eps^{ta+tb} = q^i (eps^{ta+tb} + eps^{ta+tb+1}).
                let t = ta + tb;
                for i in 0..n {
                    if !buf[i].is_zero() {
                        dest.blocks[t * n + i] += &buf[i];
                    }
                }
                for i in n..(2 * n - 1) {
                    if buf[i].is_zero() {
                        continue;
                    }
                    dest.blocks[t * n + (i - n)] += &buf[i];
                    if t + 1 < self.m {
                        dest.blocks[(t + 1) * n + (i - n)] += &buf[i];
                    }
                }
            }
        }
        dest
    }

    /// Expands the epsilon-basis element into plain coefficients of q and
    /// reduces modulo `Phi_n^m`: the canonical residue, integer coefficients,
    /// degree < m * phi(n).
    pub fn canonical(&self, e: &WorkElem) -> Vec<BigInt> {
        let n = self.n;
        let mut full = vec![BigInt::zero(); self.len() + 1];
        // eps^t = (q^n - 1)^t = sum_i C(t,i) (-1)^{t-i} q^{n*i}
        for t in 0..self.m {
            let block = &e.blocks[t * n..(t + 1) * n];
            if block.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut binom = BigInt::one();
            for i in 0..=t {
                if i > 0 {
                    binom = binom * BigInt::from((t - i + 1) as i64) / BigInt::from(i as i64);
                }
                let sign_neg = (t - i) % 2 == 1;
                for (j, v) in block.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let contrib = &binom * v;
                    if sign_neg {
                        full[n * i + j] -= contrib;
                    } else {
                        full[n * i + j] += contrib;
                    }
                }
            }
        }
        // Divide by the monic integer modulus; remainder stays integral.
        let d = self.phi_pow.len() - 1;
        for i in (d..full.len()).rev() {
            if full[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut full[i], BigInt::zero());
            for (j, pj) in self.phi_pow.iter().enumerate().take(d) {
                if !pj.is_zero() {
                    full[i - d + j] -= &c * pj;
                }
            }
        }
        full.truncate(d);
        full
    }

    pub fn is_zero_canonical(&self, e: &WorkElem) -> bool {
        if e.blocks.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.canonical(e).iter().all(|c| c.is_zero())
    }

    /// Canonical residue as a `Poly` over rationals, for reporting.
    pub fn canonical_poly(&self, e: &WorkElem) -> Poly {
        Poly::from_coeffs(
            self.canonical(e)
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// Exact unit test for the numeric factor `lead - c*q^e` modulo
    /// `Phi_n^m`. The factor is a non-unit iff it shares a root with
    /// `Phi_n`, i.e. `c * zeta^e = lead` for a primitive n-th root zeta;
    /// with rational coefficients that forces `|c| = |lead|`.
    pub fn numeric_factor_is_unit(&self, lead: &BigInt, c: &BigInt, e: i64) -> bool {
        if c.is_zero() {
            return !lead.is_zero();
        }
        if lead.is_zero() {
            // -c * q^e: a nonzero monomial, always a unit (q is a unit).
            return true;
        }
        if lead.abs() != c.abs() {
            return true;
        }
        let n = self.n as i64;
        let r = e.rem_euclid(n);
        if lead == c {
            // lead(1 - q^{e mod n}) up to a unit: zero of Phi_n iff n | e.
            return r != 0;
        }
        // lead = -c: factor has a root iff zeta^e = -1 for primitive zeta.
        if self.n % 2 == 1 {
            return true;
        }
        // Even n: decide by polynomial gcd with Phi_n (exact, rare path).
        let factor = Poly::from_coeffs({
            let mut v = vec![Rational::zero(); r as usize + 1];
            v[0] = Rational::from_integer(lead.clone());
            v[r as usize] -= Rational::from_integer(c.clone());
            v
        });
        if factor.is_zero() {
            return false;
        }
        poly_gcd(&factor, &cyclotomic(self.n as u32)).is_one()
    }
}

/// Element of the working ring in the epsilon-block basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkElem {
    blocks: Vec<BigInt>,
}

impl WorkElem {
    pub fn add_assign(&mut self, other: &WorkElem) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &WorkElem) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a -= b;
        }
    }

    pub fn scale(&mut self, c: &BigInt) {
        if c.is_one() {
            return;
        }
        for a in self.blocks.iter_mut() {
            if !a.is_zero() {
                *a *= c;
            }
        }
    }

    pub fn is_plain_zero(&self) -> bool {
        self.blocks.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::ModulusRing;
    use crate::rational::rat_int;

    /// Oracle: reduce the same expression in the public quotient ring.
    fn public_residue(n: u32, m: u32, build: impl Fn(&ModulusRing) -> crate::quotient::RingElem) -> Poly {
        let ring = ModulusRing::cyclotomic_power(n, m);
        build(&ring).residue().clone()
    }

    #[test]
    fn q_power_matches_public_ring() {
        for (n, m) in [(3u32, 1u32), (5, 2), (6, 2), (7, 1), (12, 2)] {
            let wr = WorkRing::new(n, m);
            for e in [-7i64, -1, 0, 1, 5, 11, 23, 60] {
                let w = wr.mul_q_power(&wr.one(), e);
                let got = wr.canonical_poly(&w);
                let want = public_residue(n, m, |ring| {
                    ring.reduce_laurent(&crate::polycore::LaurentPoly::monomial(rat_int(1), e))
                        .unwrap()
                });
                assert_eq!(got, want, "q^{e} mod Phi_{n}^{m}");
            }
        }
    }

    #[test]
    fn products_match_public_ring() {
        // prod (1 - 2 q^{e}) over a few exponents, in both rings.
        for (n, m) in [(5u32, 1u32), (5, 2), (9, 2)] {
            let wr = WorkRing::new(n, m);
            let mut w = wr.one();
            for e in [1i64, 3, 4, 8, -2] {
                // w := w - 2 q^e w
                let shifted = wr.mul_q_power(&w, e);
                let mut sub = shifted;
                sub.scale(&BigInt::from(2));
                w.sub_assign(&sub);
            }
            let got = wr.canonical_poly(&w);
            let want = public_residue(n, m, |ring| {
                let mut acc = ring.one();
                for e in [1i64, 3, 4, 8, -2] {
                    let f = ring
                        .reduce_laurent(
                            &crate::polycore::LaurentPoly::one()
                                .sub(&crate::polycore::LaurentPoly::monomial(rat_int(2), e)),
                        )
                        .unwrap();
                    acc = acc.mul(&f);
                }
                acc
            });
            assert_eq!(got, want, "n={n} m={m}");
        }
    }

    #[test]
    fn full_mul_matches_public_ring() {
        let wr = WorkRing::new(7, 2);
        let a = {
            let mut v = wr.q_integer(5);
            let shifted = wr.mul_q_power(&wr.one(), 9);
            v.add_assign(&shifted);
            v
        };
        let b = wr.mul_q_power(&wr.q_integer(3), -4);
        let got = wr.canonical_poly(&wr.mul(&a, &b));
        let want = public_residue(7, 2, |ring| {
            let qa = ring
                .reduce_poly(&crate::polycore::q_integer(5))
                .add(&ring.q_power(9));
            let qb = ring
                .reduce_laurent(
                    &crate::polycore::LaurentPoly::new(crate::polycore::q_integer(3), -4),
                )
                .unwrap();
            qa.mul(&qb)
        });
        assert_eq!(got, want);
    }

    #[test]
    fn one_minus_qn_nilpotent_mod_phi_squared() {
        let wr = WorkRing::new(5, 2);
        // 1 - q^5 is nonzero mod Phi_5^2 but squares to zero.
        let mut f = wr.one();
        let q5 = wr.mul_q_power(&wr.one(), 5);
        f.sub_assign(&q5);
        assert!(!wr.is_zero_canonical(&f));
        let sq = wr.mul(&f, &f);
        assert!(wr.is_zero_canonical(&sq));
    }

    #[test]
    fn numeric_unit_rule() {
        let wr5 = WorkRing::new(5, 1);
        // 1 - 2q: |c| != 1, unit.
        assert!(wr5.numeric_factor_is_unit(&BigInt::one(), &BigInt::from(2), 1));
        // 1 - q^5: n | e, zero mod Phi_5, not a unit.
        assert!(!wr5.numeric_factor_is_unit(&BigInt::one(), &BigInt::one(), 5));
        // 1 - q^3 mod Phi_5: unit.
        assert!(wr5.numeric_factor_is_unit(&BigInt::one(), &BigInt::one(), 3));
        // 1 + q^e mod odd-n cyclotomic: always a unit.
        assert!(wr5.numeric_factor_is_unit(&BigInt::one(), &BigInt::from(-1), 1));
        // 1 + q^3 mod Phi_6: Phi_6 | q^3 + 1, not a unit.
        let wr6 = WorkRing::new(6, 1);
        assert!(!wr6.numeric_factor_is_unit(&BigInt::one(), &BigInt::from(-1), 3));
        // 1 + q mod Phi_6 = q^2 - q + 1: 1 + q at q = primitive 6th root? No.
        assert!(wr6.numeric_factor_is_unit(&BigInt::one(), &BigInt::from(-1), 1));
        // Cross-check the gcd fallback against the public ring for even n.
        for e in 0..12i64 {
            for c in [1i64, -1] {
                let got = wr6.numeric_factor_is_unit(&BigInt::one(), &BigInt::from(c), e);
                let ring = ModulusRing::cyclotomic_power(6, 1);
                let f = ring
                    .reduce_laurent(
                        &crate::polycore::LaurentPoly::one()
                            .sub(&crate::polycore::LaurentPoly::monomial(rat_int(c), e)),
                    )
                    .unwrap();
                assert_eq!(got, f.is_unit(), "c={c} e={e}");
            }
        }
    }
}
