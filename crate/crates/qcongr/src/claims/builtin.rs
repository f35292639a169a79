//! The built-in claim catalog: one constructor per displayed congruence,
//! with the side conditions as hypothesis predicates and all exponent
//! expressions resolved (and integrality-checked) at build time.

use std::collections::BTreeMap;

use num_traits::One;

use crate::claims::param_series::{ParamPoch, ParamSeries};
use crate::claims::types::{
    ClaimBody, ClaimError, ClosedForm, CongruenceClaim, FixedPoch, ModulusSpec, ParamPoints, Rhs,
    SignedAtom,
};
use crate::multipoly::{Monomial, Var};
use crate::qseries::{AffineExp, PochSpec, QAtom, SeriesSpec};
use crate::rational::{rat_int, Rational};

fn get(params: &BTreeMap<String, i64>, name: &str) -> Result<i64, ClaimError> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| ClaimError::MissingParameter(name.to_string()))
}

/// Exact division with a loud error naming the expression; the hypothesis
/// predicates make these divisible, so a failure here is a caller bug or a
/// DSL claim with inconsistent parameters.
fn exact_div(num: i64, den: i64, expr: &str, binding: &str) -> Result<i64, ClaimError> {
    if den == 0 || num % den != 0 {
        return Err(ClaimError::Integrality {
            expr: expr.to_string(),
            binding: binding.to_string(),
        });
    }
    Ok(num / den)
}

fn qp(e: i64) -> QAtom {
    QAtom::q_power(e)
}

fn var_atom(v: Var, q_exp: i64) -> QAtom {
    QAtom::with_vars(Rational::one(), q_exp, Monomial::var(v, 1))
}

fn running(atom: QAtom, step: i64) -> PochSpec {
    PochSpec::running(atom, step as u32)
}

fn series(
    num: Vec<PochSpec>,
    den: Vec<PochSpec>,
    per_k: i64,
    top: i64,
    label: &str,
) -> SeriesSpec {
    SeriesSpec::new(num, den, AffineExp::of_k(per_k), top as u32, label)
}

fn claim(
    name: &str,
    params: BTreeMap<String, i64>,
    modulus: ModulusSpec,
    vars: Vec<Var>,
    body: Result<ClaimBody, String>,
) -> CongruenceClaim {
    CongruenceClaim {
        name: name.to_string(),
        params,
        modulus,
        vars,
        body,
    }
}

fn require(cond: bool, reason: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason.to_string())
    }
}

/// Names of all built-in claims, in catalog order.
pub const BUILTIN_NAMES: &[&str] = &[
    "in-2", "th-2", "th-1", "th-2-0", "th-2-1", "th-2-2", "th-2-3", "th-2-4", "th-2-5", "th-3",
    "th-5", "s-3", "s-3-1", "s-5", "ss-0",
];

/// Parameter names each claim expects.
pub fn claim_params(name: &str) -> Result<&'static [&'static str], ClaimError> {
    Ok(match name {
        "in-2" | "th-2-0" | "th-2-1" | "s-3-1" => &["n"],
        "th-2" | "th-1" | "th-2-2" | "th-2-3" | "th-2-4" | "th-2-5" | "th-5" | "ss-0" => {
            &["d", "n"]
        }
        "th-3" | "s-3" | "s-5" => &["d", "s", "n"],
        _ => return Err(ClaimError::UnknownClaim(name.to_string())),
    })
}

pub fn builtin(name: &str, params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    for p in claim_params(name)? {
        get(params, p)?;
    }
    match name {
        "in-2" => build_in_2(params),
        "th-2" => build_th_2(params),
        "th-1" => build_th_1(params),
        "th-2-0" => build_th_2_0(params),
        "th-2-1" => build_th_2_1(params),
        "th-2-2" => build_th_2_2(params),
        "th-2-3" => build_th_2_3(params),
        "th-2-4" => build_th_2_4(params),
        "th-2-5" => build_th_2_5(params),
        "th-3" => build_th_3(params),
        "th-5" => build_th_5(params),
        "s-3" => build_s_3(params),
        "s-3-1" => build_s_3_1(params),
        "s-5" => build_s_5(params),
        "ss-0" => build_ss_0(params),
        _ => Err(ClaimError::UnknownClaim(name.to_string())),
    }
}

/// Convenience wrapper: `builtin_with("th-2", &[("d", 2), ("n", 5)])`.
pub fn builtin_with(name: &str, params: &[(&str, i64)]) -> Result<CongruenceClaim, ClaimError> {
    let map: BTreeMap<String, i64> = params
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    builtin(name, &map)
}

/// The printed two-base congruence scanned as a finding: its left side has
/// numerator (q^2;q^4)_k^3 over (q^2;q^2)_k^2 (q^4;q^4)_k, and the right
/// side is the printed closed form for n = 1 mod 4 and zero for n = 3 mod 4.
fn build_in_2(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let n = get(params, "n")?;
    let hyp = require(n >= 3 && n % 2 == 1, "n must be odd and >= 3");
    let body = hyp.and_then(|()| {
        let lhs = series(
            vec![
                running(qp(2), 4),
                running(qp(2), 4),
                running(qp(2), 4),
            ],
            vec![
                running(qp(2), 2),
                running(qp(2), 2),
                running(qp(4), 4),
            ],
            2,
            (n - 1) / 2,
            "in-2 lhs",
        );
        let rhs = if n % 4 == 1 {
            let t = ((n - 1) / 4) as u32;
            Rhs::Closed(ClosedForm {
                sign_exp: 0,
                scalar: Rational::one(),
                q_exp: (n - 1) / 2,
                qint: 0,
                num_pochs: vec![
                    FixedPoch {
                        atom: SignedAtom::numeric(Rational::one(), 2),
                        step: 4,
                        len: t,
                    };
                    2
                ],
                den_pochs: vec![
                    FixedPoch {
                        atom: SignedAtom::numeric(Rational::one(), 4),
                        step: 4,
                        len: t,
                    };
                    2
                ],
            })
        } else {
            Rhs::Zero
        };
        Ok(ClaimBody::Standard { lhs, rhs })
    });
    Ok(claim(
        "in-2",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![],
        body,
    ))
}

fn build_th_2(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let hyp = require(
        d >= 2 && n >= 1 && n.rem_euclid(2 * d) == 1,
        "requires d >= 2 and n = 1 (mod 2d)",
    );
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![
                running(qp(1), d),
                running(qp(1), d),
                running(var_atom(Var::X, 0), d),
            ],
            vec![running(qp(d), d), running(qp(d + 2), 2 * d)],
            d,
            n - 1,
            "th-2 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![
                running(qp(1), 2 * d),
                running(qp(1), 2 * d),
                running(
                    QAtom::with_vars(Rational::one(), 0, Monomial::var(Var::X, 2)),
                    2 * d,
                ),
            ],
            vec![running(qp(2 * d), 2 * d), running(qp(d + 2), 2 * d)],
            2 * d,
            n - 1,
            "th-2 rhs",
        )),
    });
    Ok(claim(
        "th-2",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![Var::X],
        body,
    ))
}

fn build_th_1(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let hyp = require(
        d >= 3 && n >= 1 && (n + 1).rem_euclid(2 * d) == 0,
        "requires d >= 3 and n = -1 (mod 2d)",
    );
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![
                running(qp(-1), d),
                running(qp(-1), d),
                running(var_atom(Var::X, 0), d),
            ],
            vec![running(qp(d), d), running(qp(d - 2), 2 * d)],
            d,
            n - 1,
            "th-1 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![
                running(qp(-1), 2 * d),
                running(qp(-1), 2 * d),
                running(
                    QAtom::with_vars(Rational::one(), 0, Monomial::var(Var::X, 2)),
                    2 * d,
                ),
            ],
            vec![running(qp(2 * d), 2 * d), running(qp(d - 2), 2 * d)],
            2 * d,
            n - 1,
            "th-1 rhs",
        )),
    });
    Ok(claim(
        "th-1",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![Var::X],
        body,
    ))
}

fn build_th_2_0(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let n = get(params, "n")?;
    let hyp = require(n >= 1 && n % 4 == 1, "requires n = 1 (mod 4)");
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![running(qp(1), 2), running(qp(1), 2)],
            vec![running(qp(4), 4)],
            2,
            n - 1,
            "th-2-0 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![running(qp(1), 4), running(qp(1), 4)],
            vec![running(qp(4), 4)],
            4,
            n - 1,
            "th-2-0 rhs",
        )),
    });
    Ok(claim(
        "th-2-0",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![],
        body,
    ))
}

fn build_th_2_1(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let n = get(params, "n")?;
    let hyp = require(n >= 1 && n % 4 == 1, "requires n = 1 (mod 4)");
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![running(qp(1), 2), running(qp(1), 2)],
            vec![running(qp(2), 2), running(qp(2), 2)],
            2,
            n - 1,
            "th-2-1 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![running(qp(1), 4), running(qp(1), 4)],
            vec![running(qp(4), 4)],
            4,
            n - 1,
            "th-2-1 rhs",
        )),
    });
    Ok(claim(
        "th-2-1",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![],
        body,
    ))
}

fn th_2_2_hyp(d: i64, n: i64) -> Result<(), String> {
    require(
        d >= 2 && n > 1 && n % 2 == 1 && (n + 1).rem_euclid(d) == 0,
        "requires d >= 2, odd n > 1, n = -1 (mod d)",
    )
}

fn build_th_2_2(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let body = th_2_2_hyp(d, n).and_then(|()| -> Result<ClaimBody, String> {
        {
            let top = exact_div(n + 1, d, "(n+1)/d", &format!("n={n}, d={d}"))
                .map_err(|e| e.to_string())?;
            let sign = exact_div(n + d + 1, d, "(n+d+1)/d", &format!("n={n}, d={d}"))
                .map_err(|e| e.to_string())?;
            // n^2 - d n + d - 1 = (n-1)(n+1-d), divisible by 2d under the
            // hypothesis; checked at run time regardless.
            let q_exp = exact_div(
                n * n - d * n + d - 1,
                2 * d,
                "(n^2-dn+d-1)/(2d)",
                &format!("n={n}, d={d}"),
            )
            .map_err(|e| e.to_string())?;
            Ok(ClaimBody::Standard {
                lhs: series(
                    vec![running(qp(-1), d)],
                    vec![running(qp(d), d)],
                    d,
                    top,
                    "th-2-2 lhs",
                ),
                rhs: Rhs::Closed(ClosedForm {
                    sign_exp: sign,
                    scalar: Rational::one(),
                    q_exp,
                    qint: 1,
                    num_pochs: vec![],
                    den_pochs: vec![],
                }),
            })
        }
    });
    Ok(claim(
        "th-2-2",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![],
        body,
    ))
}

fn th_2_3_hyp(d: i64, n: i64) -> Result<(), String> {
    require(
        d >= 1 && n > 1 && n % 2 == 1 && (n - 1).rem_euclid(2 * d) == 0,
        "requires d >= 1, odd n > 1, n = 1 (mod 2d)",
    )
}

fn build_th_2_3(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let body = th_2_3_hyp(d, n).and_then(|()| -> Result<ClaimBody, String> {
        {
            let top = exact_div(n - 1, 2 * d, "(n-1)/(2d)", &format!("n={n}, d={d}"))
                .map_err(|e| e.to_string())?;
            Ok(ClaimBody::Standard {
                lhs: series(
                    vec![running(qp(1), 2 * d)],
                    vec![running(qp(2 * d), 2 * d)],
                    2 * d,
                    top,
                    "th-2-3 lhs",
                ),
                rhs: Rhs::Zero,
            })
        }
    });
    Ok(claim(
        "th-2-3",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 1,
        },
        vec![],
        body,
    ))
}

fn build_th_2_4(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let body = th_2_2_hyp(d, n).and_then(|()| -> Result<ClaimBody, String> {
        {
            let top = exact_div(n + 1, d, "(n+1)/d", &format!("n={n}, d={d}"))
                .map_err(|e| e.to_string())?;
            let sign = exact_div(n + d + 1, d, "(n+d+1)/d", &format!("n={n}, d={d}"))
                .map_err(|e| e.to_string())?;
            // n^2 + d n - d - 1 = (n-1)(n+1+d), divisible by 2d as above.
            let q_exp = -exact_div(
                n * n + d * n - d - 1,
                2 * d,
                "(n^2+dn-d-1)/(2d)",
                &format!("n={n}, d={d}"),
            )
            .map_err(|e| e.to_string())?;
            Ok(ClaimBody::Standard {
                lhs: series(
                    vec![running(qp(-1), d), running(var_atom(Var::X, 0), d)],
                    vec![
                        running(qp(d), d),
                        running(var_atom(Var::X, d - 1), d),
                    ],
                    d,
                    top,
                    "th-2-4 lhs",
                ),
                rhs: Rhs::Closed(ClosedForm {
                    sign_exp: sign,
                    scalar: Rational::one(),
                    q_exp,
                    qint: 1,
                    num_pochs: vec![FixedPoch {
                        atom: SignedAtom::with_var(Rational::one(), -1, Var::X, -1),
                        step: d as u32,
                        len: top as u32,
                    }],
                    den_pochs: vec![FixedPoch {
                        atom: SignedAtom::with_var(Rational::one(), 0, Var::X, -1),
                        step: d as u32,
                        len: top as u32,
                    }],
                }),
            })
        }
    });
    Ok(claim(
        "th-2-4",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 2,
        },
        vec![Var::X],
        body,
    ))
}

fn build_th_2_5(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let body = th_2_3_hyp(d, n).and_then(|()| -> Result<ClaimBody, String> {
        {
            let top = exact_div(n - 1, 2 * d, "(n-1)/(2d)", &format!("n={n}, d={d}"))
                .map_err(|e| e.to_string())?;
            Ok(ClaimBody::Standard {
                lhs: series(
                    vec![
                        running(qp(1), 2 * d),
                        running(var_atom(Var::X, 0), 2 * d),
                    ],
                    vec![
                        running(qp(2 * d), 2 * d),
                        running(var_atom(Var::X, 2 * d + 1), 2 * d),
                    ],
                    2 * d,
                    top,
                    "th-2-5 lhs",
                ),
                rhs: Rhs::Zero,
            })
        }
    });
    Ok(claim(
        "th-2-5",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 1,
        },
        vec![Var::X],
        body,
    ))
}

fn build_th_3(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, s, n) = (get(params, "d")?, get(params, "s")?, get(params, "n")?);
    let hyp = require(
        d >= 2 && (s == 1 || s == -1) && n >= 1 && (n - s).rem_euclid(2 * d) == 0,
        "requires d >= 2, s in {-1,1}, n = s (mod 2d)",
    );
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![running(var_atom(Var::X, 0), d), running(qp(s), d)],
            vec![running(qp(d), d)],
            d,
            n - 1,
            "th-3 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![
                running(
                    QAtom::with_vars(Rational::one(), 0, Monomial::var(Var::X, 2)),
                    2 * d,
                ),
                running(qp(s), 2 * d),
            ],
            vec![running(qp(2 * d), 2 * d)],
            2 * d,
            n - 1,
            "th-3 rhs",
        )),
    });
    Ok(claim(
        "th-3",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 1,
        },
        vec![Var::X],
        body,
    ))
}

fn build_th_5(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let hyp = require(
        d >= 1 && n >= 1 && n % 2 == 1,
        "requires d >= 1 and odd n",
    );
    let xy = Monomial::var(Var::X, 1).mul(&Monomial::var(Var::Y, 1));
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![
                running(var_atom(Var::X, 0), d),
                running(var_atom(Var::Y, 0), d),
            ],
            vec![running(QAtom::with_vars(Rational::one(), d, xy), 2 * d)],
            d,
            n - 1,
            "th-5 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![
                running(var_atom(Var::X, 0), 2 * d),
                running(var_atom(Var::Y, 0), 2 * d),
            ],
            vec![running(QAtom::with_vars(Rational::one(), d, xy), 2 * d)],
            2 * d,
            n - 1,
            "th-5 rhs",
        )),
    });
    Ok(claim(
        "th-5",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 1,
        },
        vec![Var::X, Var::Y],
        body,
    ))
}

fn param_poch(coeff: i64, q_exp: i64, a_exp: i32, x_exp: u16, step: i64) -> ParamPoch {
    ParamPoch {
        coeff: rat_int(coeff),
        q_exp,
        a_exp,
        vars: Monomial::var(Var::X, x_exp),
        step: step as u32,
    }
}

/// Parametric claim with the auxiliary parameter a. The stated lemma needs
/// d >= 3; d = 2 with s = -1 is admitted here so the degeneracy of
/// (q^{d+2s}; q^{2d}) = (q^0; q^4) surfaces as a typed outcome rather than
/// being masked by the hypothesis gate.
fn build_s_3(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, s, n) = (get(params, "d")?, get(params, "s")?, get(params, "n")?);
    let hyp = require(
        d >= 2 && (s == 1 || s == -1) && n >= 1 && (n - s).rem_euclid(2 * d) == 0,
        "requires d >= 2, s in {-1,1}, n = s (mod 2d)",
    );
    let body = hyp.map(|()| {
        let lhs = ParamSeries {
            num: vec![
                param_poch(1, s, 1, 0, d),  // (a q^s; q^d)_k
                param_poch(1, s, -1, 0, d), // (q^s / a; q^d)_k
                param_poch(1, 0, 0, 1, d),  // (x; q^d)_k
            ],
            den: vec![param_poch(1, d, 0, 0, d), param_poch(1, d + 2 * s, 0, 0, 2 * d)],
            power: AffineExp::of_k(d),
            top: (n - 1) as u32,
        };
        let rhs = ParamSeries {
            num: vec![
                param_poch(1, s, 1, 0, 2 * d),
                param_poch(1, s, -1, 0, 2 * d),
                ParamPoch {
                    coeff: Rational::one(),
                    q_exp: 0,
                    a_exp: 0,
                    vars: Monomial::var(Var::X, 2),
                    step: (2 * d) as u32,
                },
            ],
            den: vec![
                param_poch(1, 2 * d, 0, 0, 2 * d),
                param_poch(1, d + 2 * s, 0, 0, 2 * d),
            ],
            power: AffineExp::of_k(2 * d),
            top: (n - 1) as u32,
        };
        ClaimBody::parametric(lhs, rhs)
    });
    Ok(claim(
        "s-3",
        params.clone(),
        ModulusSpec::ParametricA {
            n: n.max(1) as u32,
            points: ParamPoints::Both,
        },
        vec![Var::X, Var::A],
        body,
    ))
}

fn build_s_3_1(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let n = get(params, "n")?;
    let hyp = require(n >= 1 && n % 4 == 1, "requires n = 1 (mod 4)");
    let body = hyp.map(|()| {
        let lhs = ParamSeries {
            num: vec![
                param_poch(1, 1, 1, 0, 2),
                param_poch(1, 1, -1, 0, 2),
                param_poch(1, 0, 0, 1, 2),
            ],
            den: vec![param_poch(1, 2, 0, 0, 2), param_poch(1, 4, 0, 0, 4)],
            power: AffineExp::of_k(2),
            top: (n - 1) as u32,
        };
        let rhs = ParamSeries {
            num: vec![
                param_poch(1, 1, 1, 0, 4),
                param_poch(1, 1, -1, 0, 4),
                ParamPoch {
                    coeff: Rational::one(),
                    q_exp: 0,
                    a_exp: 0,
                    vars: Monomial::var(Var::X, 2),
                    step: 4,
                },
            ],
            den: vec![param_poch(1, 4, 0, 0, 4), param_poch(1, 4, 0, 0, 4)],
            power: AffineExp::of_k(4),
            top: (n - 1) as u32,
        };
        ClaimBody::parametric(lhs, rhs)
    });
    Ok(claim(
        "s-3-1",
        params.clone(),
        ModulusSpec::ParametricA {
            n: n.max(1) as u32,
            points: ParamPoints::Both,
        },
        vec![Var::X, Var::A],
        body,
    ))
}

/// The one-sided parametric congruence modulo (1 - a q^n) behind the
/// x-and-s theorem: checked at the single point a = q^{-n}.
fn build_s_5(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, s, n) = (get(params, "d")?, get(params, "s")?, get(params, "n")?);
    let hyp = require(
        d >= 2 && (s == 1 || s == -1) && n >= 1 && (n - s).rem_euclid(2 * d) == 0,
        "requires d >= 2, s in {-1,1}, n = s (mod 2d)",
    );
    let body = hyp.map(|()| {
        let lhs = ParamSeries {
            num: vec![param_poch(1, 0, 0, 1, d), param_poch(1, s, 1, 0, d)],
            den: vec![param_poch(1, d, 0, 0, d)],
            power: AffineExp::of_k(d),
            top: (n - 1) as u32,
        };
        let rhs = ParamSeries {
            num: vec![
                ParamPoch {
                    coeff: Rational::one(),
                    q_exp: 0,
                    a_exp: 0,
                    vars: Monomial::var(Var::X, 2),
                    step: (2 * d) as u32,
                },
                param_poch(1, s, 1, 0, 2 * d),
            ],
            den: vec![param_poch(1, 2 * d, 0, 0, 2 * d)],
            power: AffineExp::of_k(2 * d),
            top: (n - 1) as u32,
        };
        ClaimBody::parametric(lhs, rhs)
    });
    Ok(claim(
        "s-5",
        params.clone(),
        ModulusSpec::ParametricA {
            n: n.max(1) as u32,
            points: ParamPoints::InverseOnly,
        },
        vec![Var::X, Var::A],
        body,
    ))
}

/// The parametric-m lemma, with m treated as a full indeterminate. The
/// source's "(m,q^d)_k" is read as "(m;q^d)_k", and the right side's
/// (-m q^d; q^d)_{2k} is split into the two step-2d families
/// (-m q^d; q^{2d})_k (-m q^{2d}; q^{2d})_k of running length k.
fn build_ss_0(params: &BTreeMap<String, i64>) -> Result<CongruenceClaim, ClaimError> {
    let (d, n) = (get(params, "d")?, get(params, "n")?);
    let hyp = require(d >= 1 && n >= 1 && n % 2 == 1, "requires d >= 1 and odd n");
    let xy = Monomial::var(Var::X, 1).mul(&Monomial::var(Var::Y, 1));
    let neg_one = rat_int(-1);
    let body = hyp.map(|()| ClaimBody::Standard {
        lhs: series(
            vec![
                running(var_atom(Var::M, 0), d),
                running(var_atom(Var::X, 0), d),
                running(var_atom(Var::Y, 0), d),
            ],
            vec![
                running(
                    QAtom::with_vars(neg_one.clone(), d, Monomial::var(Var::M, 1)),
                    d,
                ),
                running(QAtom::with_vars(Rational::one(), d, xy), 2 * d),
            ],
            d,
            n - 1,
            "ss-0 lhs",
        ),
        rhs: Rhs::Series(series(
            vec![
                running(
                    QAtom::with_vars(Rational::one(), 0, Monomial::var(Var::M, 2)),
                    2 * d,
                ),
                running(var_atom(Var::X, 0), 2 * d),
                running(var_atom(Var::Y, 0), 2 * d),
            ],
            vec![
                running(
                    QAtom::with_vars(neg_one.clone(), d, Monomial::var(Var::M, 1)),
                    2 * d,
                ),
                running(
                    QAtom::with_vars(neg_one, 2 * d, Monomial::var(Var::M, 1)),
                    2 * d,
                ),
                running(QAtom::with_vars(Rational::one(), d, xy), 2 * d),
            ],
            2 * d,
            n - 1,
            "ss-0 rhs",
        )),
    });
    Ok(claim(
        "ss-0",
        params.clone(),
        ModulusSpec::PhiPower {
            n: n.max(1) as u32,
            power: 1,
        },
        vec![Var::X, Var::Y, Var::M],
        body,
    ))
}

/// Negative-control helper: shifts the per-term q-power of the left side.
pub fn perturb_power(claim: &CongruenceClaim, delta: i64) -> CongruenceClaim {
    let mut out = claim.clone();
    out.name = format!("{}-perturbed", claim.name);
    if let Ok(body) = &mut out.body {
        match body {
            ClaimBody::Standard { lhs, .. } => {
                lhs.power.constant += delta;
            }
            ClaimBody::Parametric { lhs, .. } => {
                lhs.power.constant += delta;
            }
        }
    }
    out
}

/// Probe helper: same claim checked modulo a different power of Phi_n.
pub fn with_modulus_power(claim: &CongruenceClaim, power: u32) -> CongruenceClaim {
    let mut out = claim.clone();
    if let ModulusSpec::PhiPower { n, .. } = claim.modulus {
        out.modulus = ModulusSpec::PhiPower { n, power };
        out.name = format!("{}-mod-phi{}", claim.name, power);
    }
    out
}
