//! q-shifted factorials and truncated q-hypergeometric sums, as exact
//! multivariate polynomials (or formal fractions) over a quotient ring, and
//! exact rational evaluation of terminating basic hypergeometric series.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::multipoly::{MFraction, MPoly, Monomial};
use crate::polycore::LaurentPoly;
use crate::quotient::{ModulusRing, RingElem, RingError};
use crate::rational::{rational_to_string, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum QSeriesError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("denominator degenerates at k={k}: factor {factor} is identically zero")]
    DegenerateDenominator { k: u32, factor: String },
    #[error("denominator not invertible at k={k}: factor {factor} is a zero divisor")]
    NonInvertible { k: u32, factor: String },
    #[error("series contains symbolic variables; numeric summation requires none")]
    SymbolicVariablePresent,
    #[error("series does not terminate at or before the top index")]
    NonTerminating,
    #[error("pole in parameters: {0}")]
    Pole(String),
}

/// `coeff * q^{q_exp} * vars`: the argument of a q-shifted factorial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QAtom {
    pub coeff: Rational,
    pub q_exp: i64,
    pub vars: Monomial,
}

impl QAtom {
    /// `c * q^e`, numeric.
    pub fn numeric(coeff: Rational, q_exp: i64) -> QAtom {
        assert!(!coeff.is_zero(), "atom coefficient must be nonzero");
        QAtom {
            coeff,
            q_exp,
            vars: Monomial::unit(),
        }
    }

    pub fn q_power(q_exp: i64) -> QAtom {
        QAtom::numeric(Rational::one(), q_exp)
    }

    /// `c * q^e * vars`.
    pub fn with_vars(coeff: Rational, q_exp: i64, vars: Monomial) -> QAtom {
        assert!(!coeff.is_zero(), "atom coefficient must be nonzero");
        QAtom { coeff, q_exp, vars }
    }

    pub fn is_numeric(&self) -> bool {
        self.vars.is_unit()
    }

    /// Rational value at a concrete q; requires a numeric atom and q != 0
    /// when the exponent is negative.
    pub fn value_at(&self, q: &Rational) -> Rational {
        assert!(self.is_numeric(), "atom has symbolic variables");
        &self.coeff * rational_q_power(q, self.q_exp)
    }
}

impl fmt::Display for QAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coeff.is_one() || (self.q_exp == 0 && self.vars.is_unit()) {
            parts.push(rational_to_string(&self.coeff));
        }
        if self.q_exp == 1 {
            parts.push("q".to_string());
        } else if self.q_exp != 0 {
            parts.push(format!("q^{}", self.q_exp));
        }
        if !self.vars.is_unit() {
            parts.push(self.vars.to_string());
        }
        write!(f, "{}", parts.join("*"))
    }
}

pub fn rational_q_power(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc *= q;
        }
        acc
    } else {
        assert!(!q.is_zero(), "negative power of zero");
        let inv = Rational::one() / q.clone();
        let mut acc = Rational::one();
        for _ in 0..(-e) {
            acc *= &inv;
        }
        acc
    }
}

/// Length of a q-shifted factorial inside a series: the running index k, or
/// a fixed count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    K,
    Fixed(u32),
}

/// `(atom; q^step)_len`.
#[derive(Clone, Debug, PartialEq)]
pub struct PochSpec {
    pub atom: QAtom,
    pub step: u32,
    pub len: PochLen,
}

impl PochSpec {
    pub fn running(atom: QAtom, step: u32) -> PochSpec {
        assert!(step >= 1, "step exponent must be >= 1");
        PochSpec {
            atom,
            step,
            len: PochLen::K,
        }
    }

    pub fn fixed(atom: QAtom, step: u32, len: u32) -> PochSpec {
        assert!(step >= 1, "step exponent must be >= 1");
        PochSpec {
            atom,
            step,
            len: PochLen::Fixed(len),
        }
    }

    pub fn len_at(&self, k: u32) -> u32 {
        match self.len {
            PochLen::K => k,
            PochLen::Fixed(n) => n,
        }
    }

    /// The j-th factor `1 - atom * q^{step*j}` as a display string.
    pub fn factor_desc(&self, j: u32) -> String {
        let e = self.atom.q_exp + self.step as i64 * j as i64;
        let shifted = QAtom {
            coeff: self.atom.coeff.clone(),
            q_exp: e,
            vars: self.atom.vars,
        };
        format!("(1 - {})", shifted)
    }
}

impl fmt::Display for PochSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = match self.len {
            PochLen::K => "k".to_string(),
            PochLen::Fixed(n) => n.to_string(),
        };
        write!(f, "({}; q^{})_{}", self.atom, self.step, len)
    }
}

/// Per-term exponent of q: `per_k * k + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineExp {
    pub per_k: i64,
    pub constant: i64,
}

impl AffineExp {
    pub fn of_k(per_k: i64) -> AffineExp {
        AffineExp { per_k, constant: 0 }
    }

    pub fn at(&self, k: u32) -> i64 {
        self.per_k * k as i64 + self.constant
    }
}

/// A truncated q-hypergeometric sum: for k = 0..=top,
/// `prod(numerator pochhammers) / prod(denominator pochhammers) * q^{power(k)}`.
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub numerator: Vec<PochSpec>,
    pub denominator: Vec<PochSpec>,
    pub power: AffineExp,
    pub top: u32,
    pub label: String,
}

impl SeriesSpec {
    pub fn new(
        numerator: Vec<PochSpec>,
        denominator: Vec<PochSpec>,
        power: AffineExp,
        top: u32,
        label: impl Into<String>,
    ) -> SeriesSpec {
        let spec = SeriesSpec {
            numerator,
            denominator,
            power,
            top,
            label: label.into(),
        };
        assert!(
            spec.numerator
                .iter()
                .chain(spec.denominator.iter())
                .all(|p| p.len == PochLen::K),
            "series pochhammers must use the running length k"
        );
        spec
    }

    pub fn has_symbolic_vars(&self) -> bool {
        self.numerator
            .iter()
            .chain(self.denominator.iter())
            .any(|p| !p.atom.is_numeric())
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self.numerator.iter().map(|p| p.to_string()).collect();
        let den: Vec<String> = self.denominator.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "sum k=0..{} of {} / {} * q^({}k{:+})",
            self.top,
            num.join(" "),
            den.join(" "),
            self.power.per_k,
            self.power.constant
        )
    }
}

/// One factor `1 - atom*q^{step*j}` of a q-shifted factorial, reduced into
/// the ring as a (possibly symbolic) polynomial.
pub fn poch_factor(
    spec: &PochSpec,
    j: u32,
    ring: &ModulusRing,
) -> Result<MPoly, QSeriesError> {
    let e = spec.atom.q_exp + spec.step as i64 * j as i64;
    let coeff = ring.reduce_laurent(&LaurentPoly::monomial(spec.atom.coeff.clone(), e))?;
    let one = MPoly::one(ring);
    Ok(one.sub(&MPoly::from_term(ring, spec.atom.vars, coeff)))
}

/// `(atom; q^step)_k` over the ring; k = 0 gives 1.
pub fn pochhammer(spec: &PochSpec, k: u32, ring: &ModulusRing) -> Result<MPoly, QSeriesError> {
    let mut acc = MPoly::one(ring);
    for j in 0..k {
        acc = acc.mul(&poch_factor(spec, j, ring)?);
    }
    Ok(acc)
}

/// The k-th summand of a series as a formal fraction.
pub fn summand(
    series: &SeriesSpec,
    k: u32,
    ring: &ModulusRing,
) -> Result<MFraction, QSeriesError> {
    assert!(k <= series.top, "summand index beyond top");
    let mut num = MPoly::one(ring);
    for spec in &series.numerator {
        num = num.mul(&pochhammer(spec, spec.len_at(k), ring)?);
    }
    let power = ring.reduce_laurent(&LaurentPoly::monomial(Rational::one(), series.power.at(k)))?;
    num = num.mul_coeff(&power);

    let mut den = MPoly::one(ring);
    for spec in &series.denominator {
        let len = spec.len_at(k);
        for j in 0..len {
            let factor = poch_factor(spec, j, ring)?;
            if factor.is_zero() {
                return Err(QSeriesError::DegenerateDenominator {
                    k,
                    factor: spec.factor_desc(j),
                });
            }
            den = den.mul(&factor);
        }
    }
    if den.is_zero() {
        return Err(QSeriesError::DegenerateDenominator {
            k,
            factor: "product".to_string(),
        });
    }
    Ok(MFraction::new(num, den))
}

fn expect_numeric(p: &MPoly, what: &str) -> Result<RingElem, QSeriesError> {
    if p.is_zero() {
        return Ok(p.ring().zero());
    }
    let mut it = p.terms();
    match it.next() {
        Some((mono, coeff)) if mono.is_unit() && it.next().is_none() => Ok(coeff.clone()),
        _ => {
            let _ = what;
            Err(QSeriesError::SymbolicVariablePresent)
        }
    }
}

/// Exact numeric value of a series with no symbolic variables: each term's
/// denominator is inverted in the ring. A non-invertible denominator factor
/// is reported with the k at which it appears.
pub fn sum_numeric(series: &SeriesSpec, ring: &ModulusRing) -> Result<RingElem, QSeriesError> {
    if series.has_symbolic_vars() {
        return Err(QSeriesError::SymbolicVariablePresent);
    }
    let mut total = ring.zero();
    for k in 0..=series.top {
        let frac = summand(series, k, ring)?;
        let num = expect_numeric(&frac.numerator, "numerator")?;
        let den = expect_numeric(&frac.denominator, "denominator")?;
        let den_inv = den.invert().map_err(|_| {
            // Identify the first offending factor for the diagnostic.
            for spec in &series.denominator {
                for j in 0..spec.len_at(k) {
                    if let Ok(f) = poch_factor(spec, j, ring) {
                        if let Ok(fe) = expect_numeric(&f, "factor") {
                            if !fe.is_unit() {
                                return QSeriesError::NonInvertible {
                                    k,
                                    factor: spec.factor_desc(j),
                                };
                            }
                        }
                    }
                }
            }
            QSeriesError::NonInvertible {
                k,
                factor: "denominator".to_string(),
            }
        })?;
        total = total.add(&num.mul(&den_inv));
    }
    Ok(total)
}

/// Exact fraction for the whole series over the merged denominator: each
/// distinct denominator pochhammer family appears once at its maximal
/// length, so the denominator is `prod_spec (atom; q^step)_top`.
///
/// Runs the recurrence `S_k = S_{k-1} * (D_k / D_{k-1}) + n_k`, where
/// `D_k / D_{k-1}` is one new factor per denominator family.
pub fn sum_symbolic(series: &SeriesSpec, ring: &ModulusRing) -> Result<MFraction, QSeriesError> {
    let mut running_num = MPoly::zero(ring); // S_k over D_k
    let mut prefix = MPoly::one(ring); // numerator pochhammer prefix at k
    let mut den = MPoly::one(ring); // D_k
    for k in 0..=series.top {
        if k > 0 {
            // Advance the numerator prefix products from k-1 to k.
            for spec in &series.numerator {
                prefix = prefix.mul(&poch_factor(spec, k - 1, ring)?);
            }
            // Multiply running sum and denominator by the new factors.
            for spec in &series.denominator {
                let factor = poch_factor(spec, k - 1, ring)?;
                if factor.is_zero() {
                    return Err(QSeriesError::DegenerateDenominator {
                        k,
                        factor: spec.factor_desc(k - 1),
                    });
                }
                running_num = running_num.mul(&factor);
                den = den.mul(&factor);
            }
        }
        let power =
            ring.reduce_laurent(&LaurentPoly::monomial(Rational::one(), series.power.at(k)))?;
        running_num = running_num.add(&prefix.mul_coeff(&power));
    }
    Ok(MFraction::new(running_num, den))
}

/// Exact value of a terminating basic hypergeometric series
/// `r+1_phi_r(upper; lower; q^base_exp, z)` at a concrete rational q.
///
/// The sum runs to `top`; termination at or before `top` is required and is
/// checked: some upper parameter must annihilate all later terms.
pub fn phi_series(
    upper: &[QAtom],
    lower: &[QAtom],
    base_exp: u32,
    argument: &QAtom,
    top: u32,
    q: &Rational,
) -> Result<Rational, QSeriesError> {
    assert!(base_exp >= 1);
    if q.is_zero() || q.abs().is_one() {
        return Err(QSeriesError::Pole(
            "base q must avoid 0 and roots of unity".to_string(),
        ));
    }
    let base = rational_q_power(q, base_exp as i64);
    let upper_vals: Vec<Rational> = upper.iter().map(|a| a.value_at(q)).collect();
    let lower_vals: Vec<Rational> = lower.iter().map(|a| a.value_at(q)).collect();
    let z = argument.value_at(q);

    // Termination: some upper parameter equals base^{-j} for j <= top.
    let terminates = upper_vals.iter().any(|a| {
        let mut p = Rational::one();
        for _ in 0..=top {
            if a * &p == Rational::one() {
                return true;
            }
            p *= &base;
        }
        false
    });
    if !terminates {
        return Err(QSeriesError::NonTerminating);
    }

    let mut total = Rational::zero();
    let mut term = Rational::one();
    let mut base_pow_k = Rational::one(); // base^k
    for k in 0..=top {
        total += &term;
        if k == top {
            break;
        }
        // Ratio from term k to k+1.
        let mut ratio = z.clone();
        for a in &upper_vals {
            ratio *= Rational::one() - a * &base_pow_k;
        }
        let mut den = Rational::one() - &base * &base_pow_k; // from (base;base)_{k+1}
        for b in &lower_vals {
            den *= Rational::one() - b * &base_pow_k;
        }
        if den.is_zero() {
            if ratio.is_zero() {
                // Terminated before hitting the pole.
                break;
            }
            return Err(QSeriesError::Pole(format!(
                "denominator parameter vanishes at k={}",
                k + 1
            )));
        }
        term = term * ratio / den;
        if term.is_zero() {
            break;
        }
        base_pow_k *= &base;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::Var;
    use crate::polycore::Poly;
    use crate::rational::{rat, rat_int};

    fn phi_ring(n: u32, m: u32) -> ModulusRing {
        ModulusRing::cyclotomic_power(n, m)
    }

    fn x_atom() -> QAtom {
        QAtom::with_vars(rat_int(1), 0, Monomial::var(Var::X, 1))
    }

    #[test]
    fn pochhammer_definition() {
        let ring = phi_ring(31, 1); // large enough that nothing reduces
        let spec = PochSpec::running(QAtom::q_power(1), 2);
        let p2 = pochhammer(&spec, 2, &ring).unwrap();
        // (1-q)(1-q^3)
        let expected = Poly::from_i64_coeffs(&[1, -1])
            .mul(&Poly::from_i64_coeffs(&[1, 0, 0, -1]));
        assert_eq!(p2, MPoly::constant(&ring, ring.reduce_poly(&expected)));
        assert!(pochhammer(&spec, 0, &ring).unwrap().is_one());
    }

    #[test]
    fn pochhammer_symbolic_single_factor() {
        let ring = phi_ring(7, 1);
        let spec = PochSpec::running(x_atom(), 3);
        let p1 = pochhammer(&spec, 1, &ring).unwrap();
        let expected = MPoly::one(&ring).sub(&MPoly::variable(&ring, Var::X));
        assert_eq!(p1, expected);
    }

    #[test]
    fn pochhammer_vanishes_mod_phi7() {
        // (q^{-1}; q^4)_3 = (1-q^{-1})(1-q^3)(1-q^7) = 0 mod Phi_7.
        let ring = phi_ring(7, 1);
        let spec = PochSpec::running(QAtom::q_power(-1), 4);
        let p3 = pochhammer(&spec, 3, &ring).unwrap();
        assert!(p3.is_zero());
    }

    #[test]
    fn pochhammer_recurrence() {
        let ring = phi_ring(43, 1);
        for spec in [
            PochSpec::running(QAtom::q_power(1), 2),
            PochSpec::running(QAtom::q_power(-1), 3),
            PochSpec::running(x_atom(), 4),
        ] {
            let mut prev = MPoly::one(&ring);
            for k in 0..=40u32 {
                let direct = pochhammer(&spec, k, &ring).unwrap();
                assert_eq!(direct, prev, "recurrence fails at k={k}");
                prev = prev.mul(&poch_factor(&spec, k, &ring).unwrap());
            }
        }
    }

    /// Left side of the d=2 instance of the two-base transformation target:
    /// numerator (q;q^2)_k^2 (x;q^2)_k, denominator (q^2;q^2)_k (q^4;q^4)_k,
    /// per-term power q^{2k}.
    fn sample_series(top: u32) -> SeriesSpec {
        SeriesSpec::new(
            vec![
                PochSpec::running(QAtom::q_power(1), 2),
                PochSpec::running(QAtom::q_power(1), 2),
                PochSpec::running(x_atom(), 2),
            ],
            vec![
                PochSpec::running(QAtom::q_power(2), 2),
                PochSpec::running(QAtom::q_power(4), 4),
            ],
            AffineExp::of_k(2),
            top,
            "sample",
        )
    }

    #[test]
    fn summand_k0_is_one() {
        let ring = phi_ring(5, 2);
        let s = summand(&sample_series(4), 0, &ring).unwrap();
        assert!(s.numerator.is_one());
        assert!(s.denominator.is_one());
    }

    #[test]
    fn summand_k1_structure() {
        let ring = phi_ring(5, 2);
        let s = summand(&sample_series(4), 1, &ring).unwrap();
        // ((1-q)^2 (1-x) q^2) / ((1-q^2)(1-q^4))
        let one_minus_q = ring.reduce_poly(&Poly::from_i64_coeffs(&[1, -1]));
        let num = MPoly::one(&ring)
            .sub(&MPoly::variable(&ring, Var::X))
            .mul_coeff(&one_minus_q.mul(&one_minus_q).mul(&ring.q_power(2)));
        assert_eq!(s.numerator, num);
        let den = ring
            .reduce_poly(&Poly::from_i64_coeffs(&[1, 0, -1]))
            .mul(&ring.reduce_poly(&Poly::from_i64_coeffs(&[1, 0, 0, 0, -1])));
        assert_eq!(s.denominator, MPoly::constant(&ring, den));
    }

    #[test]
    fn summand_with_symbolic_denominator() {
        // Numerator (q^{-1};q^2)_k (x;q^2)_k, denominator (q^2;q^2)_k (q*x;q^2)_k,
        // at k=1: (1-q^{-1})(1-x) q^2 / ((1-q^2)(1-q*x)).
        let ring = phi_ring(3, 2);
        let series = SeriesSpec::new(
            vec![
                PochSpec::running(QAtom::q_power(-1), 2),
                PochSpec::running(x_atom(), 2),
            ],
            vec![
                PochSpec::running(QAtom::q_power(2), 2),
                PochSpec::running(QAtom::with_vars(rat_int(1), 1, Monomial::var(Var::X, 1)), 2),
            ],
            AffineExp::of_k(2),
            2,
            "th-2-4-like",
        );
        let s = summand(&series, 1, &ring).unwrap();
        let qinv = ring
            .reduce_laurent(&LaurentPoly::monomial(rat_int(1), -1))
            .unwrap();
        let num = MPoly::one(&ring)
            .sub(&MPoly::variable(&ring, Var::X))
            .mul_coeff(&ring.one().sub(&qinv).mul(&ring.q_power(2)));
        assert_eq!(s.numerator, num);
        let den = MPoly::constant(&ring, ring.one().sub(&ring.q_power(2))).mul(
            &MPoly::one(&ring).sub(&MPoly::from_term(
                &ring,
                Monomial::var(Var::X, 1),
                ring.q_power(1),
            )),
        );
        assert_eq!(s.denominator, den);
    }

    #[test]
    fn degenerate_denominator_detected() {
        // (q^0; q^4)_k contains the factor 1 - q^0 = 0.
        let ring = phi_ring(5, 1);
        let series = SeriesSpec::new(
            vec![PochSpec::running(QAtom::q_power(1), 2)],
            vec![PochSpec::running(QAtom::q_power(0), 4)],
            AffineExp::of_k(2),
            3,
            "degenerate",
        );
        match summand(&series, 1, &ring) {
            Err(QSeriesError::DegenerateDenominator { k: 1, .. }) => {}
            other => panic!("expected degenerate denominator, got {:?}", other),
        }
    }

    #[test]
    fn sum_numeric_single_term() {
        let ring = phi_ring(5, 1);
        let series = SeriesSpec::new(vec![], vec![], AffineExp::of_k(0), 0, "one");
        assert!(sum_numeric(&series, &ring).unwrap().is_one());
    }

    #[test]
    fn sum_numeric_th23_instance_vanishes() {
        // d=1, n=3: sum_{k=0}^{1} (q;q^2)_k/(q^2;q^2)_k q^{2k} = 0 mod Phi_3.
        // Oracle: 1 + (1-q)q^2/(1-q^2) = (1+q+q^2)/(1+q).
        let ring = phi_ring(3, 1);
        let series = SeriesSpec::new(
            vec![PochSpec::running(QAtom::q_power(1), 2)],
            vec![PochSpec::running(QAtom::q_power(2), 2)],
            AffineExp::of_k(2),
            1,
            "th-2-3 d=1 n=3",
        );
        assert!(sum_numeric(&series, &ring).unwrap().is_zero());
    }

    #[test]
    fn sum_numeric_th22_instance_closed_form() {
        // d=2, n=3: sum_{k=0}^{2} (q^{-1};q^2)_k/(q^2;q^2)_k q^{2k}
        //   = (-1)^3 [3]_q q  mod Phi_3^2.
        let ring = phi_ring(3, 2);
        let series = SeriesSpec::new(
            vec![PochSpec::running(QAtom::q_power(-1), 2)],
            vec![PochSpec::running(QAtom::q_power(2), 2)],
            AffineExp::of_k(2),
            2,
            "th-2-2 d=2 n=3",
        );
        let lhs = sum_numeric(&series, &ring).unwrap();
        let rhs = ring
            .reduce_poly(&crate::polycore::q_integer(3))
            .neg()
            .mul(&ring.q_power(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_numeric_noninvertible_diagnoses_factor() {
        // Mod Phi_3^2 the factor 1-q^3 is nonzero but shares Phi_3 with the
        // modulus, so inversion must fail with a pinpointed factor at k=1.
        let ring = phi_ring(3, 2);
        let series = SeriesSpec::new(
            vec![],
            vec![PochSpec::running(QAtom::q_power(3), 3)],
            AffineExp::of_k(1),
            2,
            "bad",
        );
        match sum_numeric(&series, &ring) {
            Err(QSeriesError::NonInvertible { k: 1, factor }) => {
                assert!(factor.contains("q^3"), "factor string: {factor}");
            }
            other => panic!("expected NonInvertible at k=1, got {:?}", other),
        }
    }

    #[test]
    fn sum_numeric_zero_denominator_is_degenerate() {
        // Mod Phi_3 the same factor reduces to exactly zero.
        let ring = phi_ring(3, 1);
        let series = SeriesSpec::new(
            vec![],
            vec![PochSpec::running(QAtom::q_power(3), 3)],
            AffineExp::of_k(1),
            2,
            "bad",
        );
        match sum_numeric(&series, &ring) {
            Err(QSeriesError::DegenerateDenominator { k: 1, .. }) => {}
            other => panic!("expected degenerate denominator at k=1, got {:?}", other),
        }
    }

    #[test]
    fn sum_numeric_rejects_symbolic() {
        let ring = phi_ring(5, 1);
        assert_eq!(
            sum_numeric(&sample_series(2), &ring),
            Err(QSeriesError::SymbolicVariablePresent)
        );
    }

    #[test]
    fn sum_symbolic_top_zero() {
        let ring = phi_ring(5, 1);
        let f = sum_symbolic(&sample_series(0), &ring).unwrap();
        assert!(f.numerator.is_one());
        assert!(f.denominator.is_one());
    }

    #[test]
    fn sum_symbolic_matches_termwise_sum() {
        // Cross-check the merged-denominator recurrence against the naive
        // sum of fractions, via cross-multiplied equality.
        let ring = phi_ring(5, 2);
        let series = sample_series(4);
        let merged = sum_symbolic(&series, &ring).unwrap();
        let mut naive = MFraction::from_poly(MPoly::zero(&ring));
        for k in 0..=series.top {
            let s = summand(&series, k, &ring).unwrap();
            naive = MFraction::new(
                naive
                    .numerator
                    .mul(&s.denominator)
                    .add(&s.numerator.mul(&naive.denominator)),
                naive.denominator.mul(&s.denominator),
            );
        }
        assert!(merged.cross_eq(&naive));
    }

    #[test]
    fn sum_symbolic_degree_bound() {
        // deg_x of numerator and denominator each bounded by 2 * top.
        for top in [1u32, 3, 5] {
            let ring = phi_ring(7, 1);
            let f = sum_symbolic(&sample_series(top), &ring).unwrap();
            assert!(f.numerator.degree_of(Var::X) as u32 <= 2 * top);
            assert!(f.denominator.degree_of(Var::X) as u32 <= 2 * top);
        }
    }

    #[test]
    fn specialization_consistency_sampled() {
        // sum_symbolic then evaluate(x -> c*q^e) agrees with sum_numeric of
        // the specialized series.
        let ring = phi_ring(7, 1);
        let samples: [(i64, i64); 5] = [(2, 0), (3, 1), (-2, 2), (5, -1), (7, 3)];
        for (c, e) in samples {
            let series = sample_series(4);
            let symbolic = sum_symbolic(&series, &ring).unwrap();
            let value = ring
                .reduce_laurent(&LaurentPoly::monomial(rat_int(c), e))
                .unwrap();
            let evaluated_num = symbolic.numerator.evaluate(&[(Var::X, value.clone())]);
            let evaluated_den = symbolic.denominator.evaluate(&[(Var::X, value.clone())]);

            let specialized = SeriesSpec::new(
                vec![
                    PochSpec::running(QAtom::q_power(1), 2),
                    PochSpec::running(QAtom::q_power(1), 2),
                    PochSpec::running(QAtom::numeric(rat_int(c), e), 2),
                ],
                series.denominator.clone(),
                series.power,
                series.top,
                "specialized",
            );
            let direct = sum_numeric(&specialized, &ring).unwrap();
            // evaluated_num / evaluated_den == direct
            let lhs = expect_numeric(&evaluated_num, "num").unwrap();
            let rhs = expect_numeric(&evaluated_den, "den").unwrap().mul(&direct);
            assert_eq!(lhs, rhs, "c={c}, e={e}");
        }
    }

    #[test]
    fn phi_series_two_one_termination() {
        // 2phi1(a, q^{-1}; c; q, q) at a=2, c=3, q=5 equals 1/2.
        // Oracle: 1 + (1-a)(1-q^{-1}) q / ((1-q)(1-c)) simplifies to 1/2.
        let v = phi_series(
            &[QAtom::numeric(rat_int(2), 0), QAtom::q_power(-1)],
            &[QAtom::numeric(rat_int(3), 0)],
            1,
            &QAtom::q_power(1),
            1,
            &rat_int(5),
        )
        .unwrap();
        assert_eq!(v, rat(1, 2));
    }

    #[test]
    fn phi_series_zero_argument() {
        // Argument 0 is modeled by termination: q^{-0} = 1 upper parameter
        // terminates instantly; sum is 1 for any further structure.
        let v = phi_series(
            &[QAtom::q_power(0), QAtom::numeric(rat_int(2), 0)],
            &[QAtom::numeric(rat_int(3), 0)],
            1,
            &QAtom::q_power(1),
            4,
            &rat_int(5),
        )
        .unwrap();
        assert_eq!(v, rat_int(1));
    }

    #[test]
    fn phi_series_q_chu_vandermonde_instance() {
        // 2phi1(a, q^{-N}; c; q, q) = (c/a;q)_N / (c;q)_N * a^N
        // at (a, c, q, N) = (2, 3, 5, 2); both sides brute force.
        let q = rat_int(5);
        let (a, c, n) = (rat_int(2), rat_int(3), 2u32);
        let lhs = phi_series(
            &[
                QAtom::numeric(a.clone(), 0),
                QAtom::q_power(-(n as i64)),
            ],
            &[QAtom::numeric(c.clone(), 0)],
            1,
            &QAtom::q_power(1),
            n,
            &q,
        )
        .unwrap();
        let poch = |x: &Rational, len: u32| -> Rational {
            let mut acc = Rational::one();
            let mut p = Rational::one();
            for _ in 0..len {
                acc *= Rational::one() - x * &p;
                p *= &q;
            }
            acc
        };
        let rhs = poch(&(c.clone() / a.clone()), n) / poch(&c, n) * a.clone() * a.clone();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_series_rejects_non_terminating() {
        let r = phi_series(
            &[QAtom::numeric(rat_int(2), 0)],
            &[QAtom::numeric(rat_int(3), 0)],
            1,
            &QAtom::q_power(1),
            3,
            &rat_int(5),
        );
        assert_eq!(r, Err(QSeriesError::NonTerminating));
    }
}
