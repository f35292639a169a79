//! The identity suite: exact verification of the summation and
//! transformation formulas the congruence proofs rest on — the terminating
//! 2phi1 summation, the balanced 3phi2 summation, the quadratic base
//! transformation and its 3phi2 case, and the four closed-form evaluations.
//!
//! Identities with free parameters are specialized on deterministic grids
//! of exact rationals (seeded), with every division checked; identities in
//! q alone (or q and x) are checked by exact Laurent-fraction arithmetic
//! with q symbolic.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use crate::claims::types::{ClaimError, Outcome, Strategy, VerificationReport};
use crate::polycore::{q_integer, LaurentPoly};
use crate::qseries::{phi_series, QAtom, QSeriesError};
use crate::rational::{rat, rat_int, Rational};

/// Deterministic pseudo-random small rationals for grid sampling.
pub struct SampleStream {
    state: u64,
}

impl SampleStream {
    pub fn new(seed: u64) -> SampleStream {
        SampleStream {
            state: seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407),
        }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 33) as u32
    }

    /// Small nonzero rational with |numerator| in 2..=9, denominator in 1..=4.
    pub fn small_rational(&mut self) -> Rational {
        let num = 2 + (self.next_u32() % 8) as i64;
        let den = 1 + (self.next_u32() % 4) as i64;
        let sign = if self.next_u32() % 2 == 0 { 1 } else { -1 };
        rat(sign * num, den)
    }

    /// Rational q avoiding 0 and absolute value 1.
    pub fn base_q(&mut self) -> Rational {
        loop {
            let q = self.small_rational();
            if !q.is_zero() && !q.clone().abs().is_one() {
                return q;
            }
        }
    }
}

fn poch_rational(a: &Rational, q: &Rational, len: u32) -> Rational {
    let mut acc = Rational::one();
    let mut p = Rational::one();
    for _ in 0..len {
        acc *= Rational::one() - a * &p;
        p *= q;
    }
    acc
}

fn q_pow(q: &Rational, e: i64) -> Rational {
    crate::qseries::rational_q_power(q, e)
}

/// q-Chu-Vandermonde: `2phi1(a, q^{-n}; c; q, q) = (c/a;q)_n / (c;q)_n a^n`,
/// checked over `samples` exact rational (a, c, q) triples.
fn check_chu_vandermonde(n: u32, samples: u32, seed: u64) -> Result<(), String> {
    let mut stream = SampleStream::new(seed ^ 0xc0de);
    let mut done = 0;
    let mut attempts = 0;
    while done < samples {
        attempts += 1;
        if attempts > 50 * samples {
            return Err("could not find enough pole-free samples".to_string());
        }
        let a = stream.small_rational();
        let c = stream.small_rational();
        let q = stream.base_q();
        if poch_rational(&c, &q, n).is_zero() || a.is_zero() {
            continue;
        }
        let lhs = match phi_series(
            &[QAtom::numeric(a.clone(), 0), QAtom::q_power(-(n as i64))],
            &[QAtom::numeric(c.clone(), 0)],
            1,
            &QAtom::q_power(1),
            n,
            &q,
        ) {
            Ok(v) => v,
            Err(QSeriesError::Pole(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let mut a_pow = Rational::one();
        for _ in 0..n {
            a_pow *= &a;
        }
        let rhs = poch_rational(&(c.clone() / a.clone()), &q, n) / poch_rational(&c, &q, n) * a_pow;
        if lhs != rhs {
            return Err(format!("counterexample at a={a}, c={c}, q={q}: {lhs} != {rhs}"));
        }
        done += 1;
    }
    Ok(())
}

/// q-Saalschutz: `3phi2(q^{-n}, a, b; c, q^{1-n}ab/c; q, q)
/// = (c/a;q)_n (c/b;q)_n / ((c;q)_n (c/(ab);q)_n)`.
fn check_saalschutz(n: u32, samples: u32, seed: u64) -> Result<(), String> {
    let mut stream = SampleStream::new(seed ^ 0x5a15);
    let mut done = 0;
    let mut attempts = 0;
    while done < samples {
        attempts += 1;
        if attempts > 50 * samples {
            return Err("could not find enough pole-free samples".to_string());
        }
        let a = stream.small_rational();
        let b = stream.small_rational();
        let c = stream.small_rational();
        let q = stream.base_q();
        let ab = a.clone() * b.clone();
        if c.is_zero() || ab.is_zero() {
            continue;
        }
        // second lower parameter: q^{1-n} a b / c
        let d_val = q_pow(&q, 1 - n as i64) * ab.clone() / c.clone();
        if poch_rational(&c, &q, n).is_zero()
            || poch_rational(&d_val, &q, n).is_zero()
            || poch_rational(&(c.clone() / ab.clone()), &q, n).is_zero()
        {
            continue;
        }
        let lhs = match phi_series(
            &[
                QAtom::q_power(-(n as i64)),
                QAtom::numeric(a.clone(), 0),
                QAtom::numeric(b.clone(), 0),
            ],
            &[
                QAtom::numeric(c.clone(), 0),
                QAtom::numeric(d_val.clone(), 0),
            ],
            1,
            &QAtom::q_power(1),
            n,
            &q,
        ) {
            Ok(v) => v,
            Err(QSeriesError::Pole(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let rhs = poch_rational(&(c.clone() / a.clone()), &q, n)
            * poch_rational(&(c.clone() / b.clone()), &q, n)
            / (poch_rational(&c, &q, n) * poch_rational(&(c.clone() / ab), &q, n));
        if lhs != rhs {
            return Err(format!(
                "counterexample at a={a}, b={b}, c={c}, q={q}: {lhs} != {rhs}"
            ));
        }
        done += 1;
    }
    Ok(())
}

/// True when `v` equals `base^{-j}` for some `0 <= j <= top`.
fn is_negative_base_power(v: &Rational, base: &Rational, top: u32) -> bool {
    let mut p = Rational::one();
    for _ in 0..=top {
        if v * &p == Rational::one() {
            return true;
        }
        p *= base;
    }
    false
}

/// One specialization of the quadratic transformation. `with_d = false`
/// gives its 3phi2 case. Termination is forced by `a^2 = Q^{-2N}` where
/// `Q = t^2` is the left-side base; the square roots in the lower
/// parameters are realized exactly by working in the half-base t. Samples
/// where any other parameter is accidentally a negative power of either
/// base are rejected: such coincidences change the termination structure
/// and fall outside the transformation's hypotheses.
fn check_singh_sample(
    with_d: bool,
    n_term: u32,
    stream: &mut SampleStream,
) -> Result<Option<()>, String> {
    let t = stream.base_q();
    let b = stream.small_rational();
    let c = stream.small_rational();
    let d = if with_d {
        stream.small_rational()
    } else {
        Rational::zero()
    };
    // a = t^{-2N} so a^2 = (t^2)^{-2N}.
    let n2 = 2 * n_term as i64;
    let a = q_pow(&t, -n2);
    let a2 = QAtom::numeric(q_pow(&t, -2 * n2), 0);
    let b2 = b.clone() * b.clone();
    let ab = a.clone() * b.clone();
    let cd = c.clone() * d.clone();

    // Genericity: only a^2 may terminate either side.
    let base_l = q_pow(&t, 2);
    let base_r = q_pow(&t, 4);
    let top = 2 * n_term;
    let mut generic = vec![b2.clone(), c.clone()];
    if with_d {
        generic.push(d.clone());
        generic.push(-cd.clone());
    }
    generic.push(ab.clone() * &t);
    generic.push(-(ab.clone() * &t));
    for v in &generic {
        if v.is_zero() || is_negative_base_power(v, &base_l, top) {
            return Ok(None);
        }
    }
    let mut generic_r = vec![
        b2.clone(),
        c.clone() * c.clone(),
        ab.clone() * ab.clone() * &base_l,
    ];
    if with_d {
        generic_r.push(d.clone() * d.clone());
        generic_r.push(-cd.clone());
        generic_r.push(-(cd.clone() * &base_l));
    }
    for v in &generic_r {
        if v.is_zero() || is_negative_base_power(v, &base_r, top) {
            return Ok(None);
        }
    }

    // Left side: base t^2, argument t^2, lower parameters a b t, -a b t
    // (and -c d when present).
    let mut lower_l = vec![
        QAtom::numeric(ab.clone(), 1),
        QAtom::numeric(-ab.clone(), 1),
    ];
    let mut upper_l = vec![
        a2.clone(),
        QAtom::numeric(b2.clone(), 0),
        QAtom::numeric(c.clone(), 0),
    ];
    if with_d {
        upper_l.push(QAtom::numeric(d.clone(), 0));
        if cd.is_zero() {
            return Ok(None);
        }
        lower_l.push(QAtom::numeric(-cd.clone(), 0));
    }
    let lhs = match phi_series(&upper_l, &lower_l, 2, &QAtom::q_power(2), 2 * n_term, &t) {
        Ok(v) => v,
        Err(QSeriesError::Pole(_)) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };

    // Right side: base t^4, argument t^4, with c and d squared.
    let mut upper_r = vec![
        a2,
        QAtom::numeric(b2.clone(), 0),
        QAtom::numeric(c.clone() * c.clone(), 0),
    ];
    // a^2 b^2 q  ->  a^2 b^2 t^2
    let mut lower_r = vec![QAtom::numeric(ab.clone() * ab.clone(), 2)];
    if with_d {
        upper_r.push(QAtom::numeric(d.clone() * d.clone(), 0));
        lower_r.push(QAtom::numeric(-cd.clone(), 0));
        lower_r.push(QAtom::numeric(-cd.clone(), 2));
    }
    let rhs = match phi_series(&upper_r, &lower_r, 4, &QAtom::q_power(4), 2 * n_term, &t) {
        Ok(v) => v,
        Err(QSeriesError::Pole(_)) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    if lhs != rhs {
        return Err(format!(
            "counterexample at t={t}, b={b}, c={c}, d={d}, N={n_term}: {lhs} != {rhs}"
        ));
    }
    Ok(Some(()))
}

fn check_singh(with_d: bool, samples: u32, seed: u64) -> Result<(), String> {
    let mut stream = SampleStream::new(seed ^ if with_d { 0x5109 } else { 0x5209 });
    let mut done = 0;
    let mut attempts = 0;
    while done < samples {
        attempts += 1;
        if attempts > 50 * samples {
            return Err("could not find enough pole-free samples".to_string());
        }
        let n_term = 1 + (stream.next_u32() % 3);
        match check_singh_sample(with_d, n_term, &mut stream)? {
            Some(()) => done += 1,
            None => continue,
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Exact Laurent fractions in q for the closed-form evaluations.
// ---------------------------------------------------------------------

/// `prod_{j<len} (1 - coeff q^{base + step j})` as a Laurent polynomial.
fn poch_laurent(coeff: &Rational, base: i64, step: i64, len: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for j in 0..len {
        let factor = LaurentPoly::one().sub(&LaurentPoly::monomial(
            coeff.clone(),
            base + step * j as i64,
        ));
        acc = acc.mul(&factor);
    }
    acc
}

#[derive(Clone)]
struct LFraction {
    num: LaurentPoly,
    /// Denominator as a factor multiset (coeff, exponent) -> multiplicity.
    den: BTreeMap<(Rational, i64), u32>,
}

impl LFraction {
    fn from_num(num: LaurentPoly) -> LFraction {
        LFraction {
            num,
            den: BTreeMap::new(),
        }
    }

    fn den_push(&mut self, coeff: Rational, e: i64, count: u32) -> Result<(), String> {
        if coeff.is_one() && e == 0 {
            return Err("degenerate denominator factor 1 - q^0".to_string());
        }
        *self.den.entry((coeff, e)).or_insert(0) += count;
        Ok(())
    }

    fn equals(&self, other: &LFraction) -> bool {
        let mut left = self.num.clone();
        let mut right = other.num.clone();
        let mut keys: Vec<(Rational, i64)> = self.den.keys().chain(other.den.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let c1 = self.den.get(&key).copied().unwrap_or(0);
            let c2 = other.den.get(&key).copied().unwrap_or(0);
            let factor = LaurentPoly::one().sub(&LaurentPoly::monomial(key.0.clone(), key.1));
            for _ in c1..c1.max(c2) {
                left = left.mul(&factor);
            }
            for _ in c2..c1.max(c2) {
                right = right.mul(&factor);
            }
        }
        left == right
    }
}

/// `sum_{k=0}^{top} prod(num fams)_k / prod(den fams)_k * q^{per_k * k}`
/// where a family `(coeff, base, step)` contributes factors
/// `1 - coeff q^{base + step j}` for j < k.
fn lsum(
    num_fams: &[(Rational, i64, i64)],
    den_fams: &[(Rational, i64, i64)],
    per_k: i64,
    top: u32,
) -> Result<LFraction, String> {
    let mut acc = LFraction::from_num(LaurentPoly::zero());
    let mut prefix = LaurentPoly::one();
    for k in 0..=top {
        if k > 0 {
            let j = (k - 1) as i64;
            for (c, base, step) in num_fams {
                let factor =
                    LaurentPoly::one().sub(&LaurentPoly::monomial(c.clone(), base + step * j));
                prefix = prefix.mul(&factor);
            }
            prefix = prefix.shift_by(per_k);
            for (c, base, step) in den_fams {
                let e = base + step * j;
                if c.is_one() && e == 0 {
                    return Err(format!("degenerate denominator factor at k={k}"));
                }
                let factor = LaurentPoly::one().sub(&LaurentPoly::monomial(c.clone(), e));
                acc.num = acc.num.mul(&factor);
                acc.den_push(c.clone(), e, 1)?;
            }
        }
        acc.num = acc.num.add(&prefix);
    }
    Ok(acc)
}

fn qint_laurent(n: i64) -> LaurentPoly {
    LaurentPoly::from_poly(q_integer(n as u32))
}

/// Closed-form chain for the first 2phi1 evaluation: with N = (n+1)/d,
/// sum == q^{(n^2-1)/d} (q^{-n};q^d)_N / (q^{-1};q^d)_N
///     == -(-1)^N [n]_q q^{(n^2-dn+d-1)/(2d)}.
fn check_ss01(d: i64, n: i64) -> Result<(), String> {
    let nn = (n + 1) / d;
    let top = nn as u32;
    let sum = lsum(
        &[
            (Rational::one(), n - 1, d),
            (Rational::one(), -n - 1, d),
        ],
        &[(Rational::one(), d, d), (Rational::one(), -1, d)],
        d,
        top,
    )?;

    let sign = if (nn + 1) % 2 == 0 { 1 } else { -1 };
    let fin_poly = qint_laurent(n)
        .scale(&rat_int(sign))
        .shift_by((n * n - d * n + d - 1) / (2 * d));
    let fin = LFraction::from_num(fin_poly);
    if !sum.equals(&fin) {
        return Err(format!("sum != closed form for d={d}, n={n}"));
    }

    let mut mid = LFraction::from_num(
        poch_laurent(&Rational::one(), -n, d, top).shift_by((n * n - 1) / d),
    );
    for j in 0..nn {
        mid.den_push(Rational::one(), -1 + d * j, 1)?;
    }
    if !mid.equals(&fin) {
        return Err(format!("middle form != closed form for d={d}, n={n}"));
    }
    Ok(())
}

/// Second 2phi1 evaluation: with N = (n-1)/(2d),
/// sum == (q^n;q^{2d})_N / (q;q^{2d})_N * q^{-(n-1)^2/(2d)}.
fn check_ss02(d: i64, n: i64) -> Result<(), String> {
    let nn = (n - 1) / (2 * d);
    let top = nn as u32;
    let sum = lsum(
        &[
            (Rational::one(), 1 - n, 2 * d),
            (Rational::one(), 1 - n, 2 * d),
        ],
        &[
            (Rational::one(), 2 * d, 2 * d),
            (Rational::one(), 1, 2 * d),
        ],
        2 * d,
        top,
    )?;
    let mut rhs = LFraction::from_num(
        poch_laurent(&Rational::one(), n, 2 * d, top).shift_by(-((n - 1) * (n - 1)) / (2 * d)),
    );
    for j in 0..nn {
        rhs.den_push(Rational::one(), 1 + 2 * d * j, 1)?;
    }
    if !sum.equals(&rhs) {
        return Err(format!("sum != closed form for d={d}, n={n}"));
    }
    Ok(())
}

/// First 3phi2 evaluation (x kept exact on a rational grid): with
/// N = (n+1)/d, the sum, the pochhammer-quotient middle form, and the
/// signed closed form agree.
fn check_ss04(d: i64, n: i64, _seed: u64) -> Result<(), String> {
    let nn = (n + 1) / d;
    let top = nn as u32;
    // Distinct integer points exceeding every x-degree in play keep the
    // dominant sum-side polynomials integral; distinctness is what the
    // vanishing argument needs.
    for x_val in 2..=(2 * nn + 4) {
        let x = rat_int(x_val);
        let x_inv = Rational::one() / x.clone();
        let sum = lsum(
            &[
                (Rational::one(), n - 1, d),
                (Rational::one(), -n - 1, d),
                (x.clone(), 0, d),
            ],
            &[
                (Rational::one(), d, d),
                (Rational::one(), -1, d),
                (x.clone(), d - 1, d),
            ],
            d,
            top,
        )?;

        // mid = (q^{-n};q^d)_N ((qx)^{-1};q^d)_N / ((q^{-1};q^d)_N (q^{-n}x^{-1};q^d)_N)
        let mut mid = LFraction::from_num(
            poch_laurent(&Rational::one(), -n, d, top)
                .mul(&poch_laurent(&x_inv, -1, d, top)),
        );
        for j in 0..nn {
            mid.den_push(Rational::one(), -1 + d * j, 1)?;
            mid.den_push(x_inv.clone(), -n + d * j, 1)?;
        }
        if !sum.equals(&mid) {
            return Err(format!("sum != middle form for d={d}, n={n}, x={x}"));
        }

        // fin = -(-1)^N [n]_q q^{-(n-1)(n+1+d)/(2d)} ((qx)^{-1};q^d)_N / ((q^{-n}x^{-1};q^d)_N).
        // The exponent equals -(n^2+dn-d-1)/(2d), the same one the
        // closed-form congruence carries: (q^{-n};q^d)_N / (q^{-1};q^d)_N
        // = -(-1)^N [n]_q q^{1 - Nn + dN(N-1)/2} with N = (n+1)/d.
        let sign = if (nn + 1) % 2 == 0 { 1 } else { -1 };
        let mut fin = LFraction::from_num(
            qint_laurent(n)
                .scale(&rat_int(sign))
                .shift_by(-((n - 1) * (n + 1 + d)) / (2 * d))
                .mul(&poch_laurent(&x_inv, -1, d, top)),
        );
        for j in 0..nn {
            fin.den_push(x_inv.clone(), -n + d * j, 1)?;
        }
        if !mid.equals(&fin) {
            return Err(format!("middle form != closed form for d={d}, n={n}, x={x}"));
        }
    }
    Ok(())
}

/// Second 3phi2 evaluation: with N = (n-1)/(2d),
/// sum == (q^n;q^{2d})_N (q/x;q^{2d})_N / ((q;q^{2d})_N (q^n/x;q^{2d})_N).
fn check_ss05(d: i64, n: i64, _seed: u64) -> Result<(), String> {
    let nn = (n - 1) / (2 * d);
    let top = nn as u32;
    for x_val in 2..=(2 * nn + 4) {
        let x = rat_int(x_val);
        let x_inv = Rational::one() / x.clone();
        let sum = lsum(
            &[
                (Rational::one(), 1 - n, 2 * d),
                (Rational::one(), 1 - n, 2 * d),
                (x.clone(), 0, 2 * d),
            ],
            &[
                (Rational::one(), 2 * d, 2 * d),
                (Rational::one(), 1, 2 * d),
                (x.clone(), 2 * d - 2 * n + 1, 2 * d),
            ],
            2 * d,
            top,
        )?;
        let mut rhs = LFraction::from_num(
            poch_laurent(&Rational::one(), n, 2 * d, top)
                .mul(&poch_laurent(&x_inv, 1, 2 * d, top)),
        );
        for j in 0..nn {
            rhs.den_push(Rational::one(), 1 + 2 * d * j, 1)?;
            rhs.den_push(x_inv.clone(), n + 2 * d * j, 1)?;
        }
        if !sum.equals(&rhs) {
            return Err(format!("sum != closed form for d={d}, n={n}, x={x}"));
        }
    }
    Ok(())
}

/// Entry point for the identity suite.
///
/// Names and parameters:
/// - "ss-0-0": n (termination index), >= 20 grid samples
/// - "ss-0-3": n, >= 20 grid samples
/// - "ss-0-1", "ss-0-2", "ss-0-4", "ss-0-5": d, n
/// - "s-1", "s-2": samples (termination forced per sample)
pub fn verify_identity(
    name: &str,
    params: &BTreeMap<String, i64>,
    seed: u64,
) -> Result<VerificationReport, ClaimError> {
    let start = Instant::now();
    let get = |key: &str| -> Result<i64, ClaimError> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| ClaimError::MissingParameter(key.to_string()))
    };
    let samples = params.get("samples").copied().unwrap_or(20).max(1) as u32;
    let result: Result<(), String> = match name {
        "ss-0-0" => {
            let n = get("n")?;
            if n < 0 {
                return Err(ClaimError::BadParameter {
                    name: "n".to_string(),
                    reason: "termination index must be nonnegative".to_string(),
                });
            }
            check_chu_vandermonde(n as u32, samples, seed)
        }
        "ss-0-3" => {
            let n = get("n")?;
            if n < 0 {
                return Err(ClaimError::BadParameter {
                    name: "n".to_string(),
                    reason: "termination index must be nonnegative".to_string(),
                });
            }
            check_saalschutz(n as u32, samples, seed)
        }
        "ss-0-1" => {
            let (d, n) = (get("d")?, get("n")?);
            check_params_ss01(d, n)?;
            check_ss01(d, n)
        }
        "ss-0-2" => {
            let (d, n) = (get("d")?, get("n")?);
            check_params_ss02(d, n)?;
            check_ss02(d, n)
        }
        "ss-0-4" => {
            let (d, n) = (get("d")?, get("n")?);
            check_params_ss01(d, n)?;
            check_ss04(d, n, seed)
        }
        "ss-0-5" => {
            let (d, n) = (get("d")?, get("n")?);
            check_params_ss02(d, n)?;
            check_ss05(d, n, seed)
        }
        "s-1" => check_singh(true, samples, seed),
        "s-2" => check_singh(false, samples, seed),
        _ => return Err(ClaimError::UnknownClaim(name.to_string())),
    };
    let (outcome, residue) = match result {
        Ok(()) => (Outcome::Pass, None),
        Err(msg) => (Outcome::Fail, Some(msg)),
    };
    Ok(VerificationReport {
        claim: name.to_string(),
        params: params.clone(),
        strategy: Strategy::Identity,
        outcome,
        residue,
        millis: start.elapsed().as_millis() as u64,
    })
}

fn check_params_ss01(d: i64, n: i64) -> Result<(), ClaimError> {
    if d < 2 || n <= 1 || n % 2 == 0 || (n + 1) % d != 0 {
        return Err(ClaimError::BadParameter {
            name: "d,n".to_string(),
            reason: "requires d >= 2, odd n > 1, n = -1 (mod d)".to_string(),
        });
    }
    if (n * n - d * n + d - 1) % (2 * d) != 0 || (n * n - 1) % d != 0 {
        return Err(ClaimError::Integrality {
            expr: "(n^2-dn+d-1)/(2d)".to_string(),
            binding: format!("n={n}, d={d}"),
        });
    }
    Ok(())
}

fn check_params_ss02(d: i64, n: i64) -> Result<(), ClaimError> {
    if d < 1 || n <= 1 || n % 2 == 0 || (n - 1) % (2 * d) != 0 {
        return Err(ClaimError::BadParameter {
            name: "d,n".to_string(),
            reason: "requires d >= 1, odd n > 1, n = 1 (mod 2d)".to_string(),
        });
    }
    if ((n - 1) * (n - 1)) % (2 * d) != 0 {
        return Err(ClaimError::Integrality {
            expr: "(n-1)^2/(2d)".to_string(),
            binding: format!("n={n}, d={d}"),
        });
    }
    Ok(())
}
