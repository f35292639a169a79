//! Lowering of a parsed claim to a `CongruenceClaim`. All exponent and
//! bound expressions are evaluated in exact rational arithmetic with
//! integrality checkpoints; a claim lowered from text behaves identically
//! to the built-in of the same formula.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::claims::param_series::{ParamPoch, ParamSeries};
use crate::claims::types::{
    ClaimBody, ClosedForm, CongruenceClaim, FixedPoch, ModulusSpec, ParamPoints, Rhs, SignedAtom,
};
use crate::dsl::ast::*;
use crate::multipoly::{Monomial, Var};
use crate::qseries::{AffineExp, PochSpec, QAtom, SeriesSpec};
use crate::rational::{rat_int, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum LowerError {
    /// A division failed its integrality assertion, e.g.
    /// "(n-1)/(2d) with n=4, d=3".
    Integrality { expr: String, binding: String },
    Unbound { name: String },
    Unsupported { what: String },
    DivisionByZero { expr: String },
}

impl fmt::Display for LowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerError::Integrality { expr, binding } => {
                write!(f, "integrality violation: {expr} with {binding}")
            }
            LowerError::Unbound { name } => write!(f, "unbound parameter {name}"),
            LowerError::Unsupported { what } => write!(f, "unsupported construct: {what}"),
            LowerError::DivisionByZero { expr } => write!(f, "division by zero in {expr}"),
        }
    }
}

impl std::error::Error for LowerError {}

type LResult<T> = Result<T, LowerError>;

/// Value of an expression that is affine in the summation index:
/// `per_k * k + constant`, tracked as exact rationals.
#[derive(Clone, Debug)]
struct Affine {
    per_k: Rational,
    constant: Rational,
}

impl Affine {
    fn constant(c: Rational) -> Affine {
        Affine {
            per_k: Rational::zero(),
            constant: c,
        }
    }

    fn is_constant(&self) -> bool {
        self.per_k.is_zero()
    }
}

fn render_intexpr(e: &IntExpr) -> String {
    crate::dsl::pretty::render_intexpr(e)
}

fn render_binding(binding: &BTreeMap<String, i64>) -> String {
    binding
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

struct Ctx<'a> {
    binding: &'a BTreeMap<String, i64>,
    index: Option<&'a str>,
}

impl Ctx<'_> {
    fn eval_affine(&self, e: &IntExpr) -> LResult<Affine> {
        Ok(match e {
            IntExpr::Const(v) => Affine::constant(rat_int(*v)),
            IntExpr::Param(name) => {
                if Some(name.as_str()) == self.index {
                    Affine {
                        per_k: Rational::one(),
                        constant: Rational::zero(),
                    }
                } else {
                    let v = self
                        .binding
                        .get(name)
                        .ok_or_else(|| LowerError::Unbound { name: name.clone() })?;
                    Affine::constant(rat_int(*v))
                }
            }
            IntExpr::Add(a, b) => {
                let (a, b) = (self.eval_affine(a)?, self.eval_affine(b)?);
                Affine {
                    per_k: a.per_k + b.per_k,
                    constant: a.constant + b.constant,
                }
            }
            IntExpr::Sub(a, b) => {
                let (a, b) = (self.eval_affine(a)?, self.eval_affine(b)?);
                Affine {
                    per_k: a.per_k - b.per_k,
                    constant: a.constant - b.constant,
                }
            }
            IntExpr::Neg(a) => {
                let a = self.eval_affine(a)?;
                Affine {
                    per_k: -a.per_k,
                    constant: -a.constant,
                }
            }
            IntExpr::Mul(a, b) => {
                let (a, b) = (self.eval_affine(a)?, self.eval_affine(b)?);
                if !a.per_k.is_zero() && !b.per_k.is_zero() {
                    return Err(LowerError::Unsupported {
                        what: format!("nonlinear use of the summation index in {}", render_intexpr(e)),
                    });
                }
                Affine {
                    per_k: a.per_k.clone() * b.constant.clone() + a.constant.clone() * b.per_k.clone(),
                    constant: a.constant * b.constant,
                }
            }
            IntExpr::Div(a, b) => {
                let (a, b) = (self.eval_affine(a)?, self.eval_affine(b)?);
                if !b.is_constant() {
                    return Err(LowerError::Unsupported {
                        what: format!("summation index in a divisor in {}", render_intexpr(e)),
                    });
                }
                if b.constant.is_zero() {
                    return Err(LowerError::DivisionByZero {
                        expr: render_intexpr(e),
                    });
                }
                Affine {
                    per_k: a.per_k / b.constant.clone(),
                    constant: a.constant / b.constant,
                }
            }
            IntExpr::Pow(a, e2) => {
                let a = self.eval_affine(a)?;
                if !a.is_constant() && *e2 > 1 {
                    return Err(LowerError::Unsupported {
                        what: "summation index under a power".to_string(),
                    });
                }
                let mut acc = Affine::constant(Rational::one());
                for _ in 0..*e2 {
                    acc = Affine {
                        per_k: acc.per_k * a.constant.clone()
                            + acc.constant.clone() * a.per_k.clone(),
                        constant: acc.constant * a.constant.clone(),
                    };
                }
                acc
            }
        })
    }

    /// Integer value of a k-free expression, with the integrality check.
    fn eval_int(&self, e: &IntExpr) -> LResult<i64> {
        let a = self.eval_affine(e)?;
        if !a.is_constant() {
            return Err(LowerError::Unsupported {
                what: format!("summation index not allowed in {}", render_intexpr(e)),
            });
        }
        if !a.constant.denom().is_one() {
            return Err(LowerError::Integrality {
                expr: render_intexpr(e),
                binding: render_binding(self.binding),
            });
        }
        Ok(a.constant
            .numer()
            .try_into()
            .expect("expression value fits in i64"))
    }

    /// Affine expression with integer coefficients (per-term q-powers).
    fn eval_affine_int(&self, e: &IntExpr) -> LResult<(i64, i64)> {
        let a = self.eval_affine(e)?;
        if !a.per_k.denom().is_one() || !a.constant.denom().is_one() {
            return Err(LowerError::Integrality {
                expr: render_intexpr(e),
                binding: render_binding(self.binding),
            });
        }
        Ok((
            a.per_k.numer().try_into().expect("fits"),
            a.constant.numer().try_into().expect("fits"),
        ))
    }
}

/// A flattened multiplicative leaf with its inversion state.
struct Leaf {
    term: TermAst,
    inverted: bool,
}

fn flatten(term: &TermAst, inverted: bool, sign: &mut i64, out: &mut Vec<Leaf>) {
    match term {
        TermAst::Mul(a, b) => {
            flatten(a, inverted, sign, out);
            flatten(b, inverted, sign, out);
        }
        TermAst::Div(a, b) => {
            flatten(a, inverted, sign, out);
            flatten(b, !inverted, sign, out);
        }
        TermAst::Neg(a) => {
            *sign = -*sign;
            flatten(a, inverted, sign, out);
        }
        TermAst::Pow(a, e) => {
            for _ in 0..*e {
                flatten(a, inverted, sign, out);
            }
        }
        other => out.push(Leaf {
            term: other.clone(),
            inverted,
        }),
    }
}

/// Atom pieces: rational coefficient, q-exponent, signed variable exponents.
struct AtomParts {
    coeff: Rational,
    q_exp: i64,
    var_exps: [i32; 4],
}

fn eval_atom(atom: &AtomAst, ctx: &Ctx) -> LResult<AtomParts> {
    let mut coeff = if atom.negated {
        -Rational::one()
    } else {
        Rational::one()
    };
    let mut q_exp = 0i64;
    let mut var_exps = [0i32; 4];
    for f in &atom.factors {
        match f {
            AtomFactor::QPow(e) => q_exp += ctx.eval_int(e)?,
            AtomFactor::Var(v, e) => var_exps[*v as usize] += e,
            AtomFactor::Rat(p, r) => {
                if *r == 0 {
                    return Err(LowerError::DivisionByZero {
                        expr: format!("{p}/{r}"),
                    });
                }
                coeff *= Rational::new((*p).into(), (*r).into());
            }
        }
    }
    if coeff.is_zero() {
        return Err(LowerError::Unsupported {
            what: "zero pochhammer argument".to_string(),
        });
    }
    Ok(AtomParts {
        coeff,
        q_exp,
        var_exps,
    })
}

fn nonneg_monomial(var_exps: &[i32; 4], what: &str) -> LResult<Monomial> {
    let mut exps = [0u16; 4];
    for i in 0..4 {
        if var_exps[i] < 0 {
            return Err(LowerError::Unsupported {
                what: format!("negative variable exponent in {what}"),
            });
        }
        exps[i] = var_exps[i] as u16;
    }
    Ok(Monomial { exps })
}

/// Lower a sum into a series over the quotient ring.
fn lower_sum_series(
    index: &str,
    lower_b: &IntExpr,
    upper: &IntExpr,
    term: &TermAst,
    binding: &BTreeMap<String, i64>,
    label: &str,
) -> LResult<SeriesSpec> {
    let ctx = Ctx {
        binding,
        index: Some(index),
    };
    let bound_ctx = Ctx {
        binding,
        index: None,
    };
    if bound_ctx.eval_int(lower_b)? != 0 {
        return Err(LowerError::Unsupported {
            what: "summation lower bound must be 0".to_string(),
        });
    }
    let top = bound_ctx.eval_int(upper)?;
    if top < 0 {
        return Err(LowerError::Integrality {
            expr: format!("nonnegative upper bound {}", render_intexpr(upper)),
            binding: render_binding(binding),
        });
    }
    let mut sign = 1i64;
    let mut leaves = Vec::new();
    flatten(term, false, &mut sign, &mut leaves);
    if sign != 1 {
        return Err(LowerError::Unsupported {
            what: "negated summand".to_string(),
        });
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut per_k = 0i64;
    let mut constant = 0i64;
    for leaf in &leaves {
        match &leaf.term {
            TermAst::Poch { atom, step, len } => {
                match len {
                    LenAst::Index(i) if i == index => {}
                    _ => {
                        return Err(LowerError::Unsupported {
                            what: "pochhammer length in a sum must be the summation index"
                                .to_string(),
                        })
                    }
                }
                let parts = eval_atom(atom, &ctx)?;
                let step = ctx.eval_int(step)?;
                if step < 1 {
                    return Err(LowerError::Unsupported {
                        what: format!("pochhammer step must be positive, got {step}"),
                    });
                }
                let vars = nonneg_monomial(&parts.var_exps, "a series pochhammer")?;
                let atom = QAtom::with_vars(parts.coeff, parts.q_exp, vars);
                let spec = PochSpec::running(atom, step as u32);
                if leaf.inverted {
                    den.push(spec);
                } else {
                    num.push(spec);
                }
            }
            TermAst::QPow(e) => {
                let (a, b) = ctx.eval_affine_int(e)?;
                if leaf.inverted {
                    per_k -= a;
                    constant -= b;
                } else {
                    per_k += a;
                    constant += b;
                }
            }
            TermAst::Int(1) => {}
            other => {
                return Err(LowerError::Unsupported {
                    what: format!("factor {:?} inside a sum", other),
                })
            }
        }
    }
    Ok(SeriesSpec::new(
        num,
        den,
        AffineExp { per_k, constant },
        top as u32,
        label,
    ))
}

/// Lower a sum carrying the auxiliary parameter a.
fn lower_sum_parametric(
    index: &str,
    lower_b: &IntExpr,
    upper: &IntExpr,
    term: &TermAst,
    binding: &BTreeMap<String, i64>,
) -> LResult<ParamSeries> {
    let ctx = Ctx {
        binding,
        index: Some(index),
    };
    let bound_ctx = Ctx {
        binding,
        index: None,
    };
    if bound_ctx.eval_int(lower_b)? != 0 {
        return Err(LowerError::Unsupported {
            what: "summation lower bound must be 0".to_string(),
        });
    }
    let top = bound_ctx.eval_int(upper)?;
    if top < 0 {
        return Err(LowerError::Integrality {
            expr: format!("nonnegative upper bound {}", render_intexpr(upper)),
            binding: render_binding(binding),
        });
    }
    let mut sign = 1i64;
    let mut leaves = Vec::new();
    flatten(term, false, &mut sign, &mut leaves);
    if sign != 1 {
        return Err(LowerError::Unsupported {
            what: "negated summand".to_string(),
        });
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut per_k = 0i64;
    let mut constant = 0i64;
    for leaf in &leaves {
        match &leaf.term {
            TermAst::Poch { atom, step, len } => {
                match len {
                    LenAst::Index(i) if i == index => {}
                    _ => {
                        return Err(LowerError::Unsupported {
                            what: "pochhammer length in a sum must be the summation index"
                                .to_string(),
                        })
                    }
                }
                let parts = eval_atom(atom, &ctx)?;
                let step = ctx.eval_int(step)?;
                if step < 1 {
                    return Err(LowerError::Unsupported {
                        what: format!("pochhammer step must be positive, got {step}"),
                    });
                }
                let a_exp = parts.var_exps[Var::A as usize];
                let mut rest = parts.var_exps;
                rest[Var::A as usize] = 0;
                let vars = nonneg_monomial(&rest, "a parametric pochhammer")?;
                let poch = ParamPoch {
                    coeff: parts.coeff,
                    q_exp: parts.q_exp,
                    a_exp,
                    vars,
                    step: step as u32,
                };
                if leaf.inverted {
                    if a_exp != 0 || !vars.is_unit() {
                        return Err(LowerError::Unsupported {
                            what: "parametric denominators must be numeric".to_string(),
                        });
                    }
                    den.push(poch);
                } else {
                    num.push(poch);
                }
            }
            TermAst::QPow(e) => {
                let (a, b) = ctx.eval_affine_int(e)?;
                if leaf.inverted {
                    per_k -= a;
                    constant -= b;
                } else {
                    per_k += a;
                    constant += b;
                }
            }
            TermAst::Int(1) => {}
            other => {
                return Err(LowerError::Unsupported {
                    what: format!("factor {:?} inside a sum", other),
                })
            }
        }
    }
    Ok(ParamSeries {
        num,
        den,
        power: AffineExp { per_k, constant },
        top: top as u32,
    })
}

/// Lower a product term to a closed form (or Zero).
fn lower_closed(term: &TermAst, binding: &BTreeMap<String, i64>, ring_n: i64) -> LResult<Rhs> {
    if *term == TermAst::Int(0) {
        return Ok(Rhs::Zero);
    }
    let ctx = Ctx {
        binding,
        index: None,
    };
    let mut sign = 1i64;
    let mut leaves = Vec::new();
    flatten(term, false, &mut sign, &mut leaves);
    let mut cf = ClosedForm::zero_free();
    cf.scalar = rat_int(sign);
    for leaf in &leaves {
        match &leaf.term {
            TermAst::SignPow(e) => {
                // (-1)^{-e} = (-1)^{e}, so inversion is immaterial.
                cf.sign_exp += ctx.eval_int(e)?;
            }
            TermAst::QInt(e) => {
                if leaf.inverted {
                    return Err(LowerError::Unsupported {
                        what: "qint in a denominator".to_string(),
                    });
                }
                let v = ctx.eval_int(e)?;
                if v != ring_n {
                    return Err(LowerError::Unsupported {
                        what: format!("qint({v}) must match the modulus index {ring_n}"),
                    });
                }
                cf.qint += 1;
            }
            TermAst::QPow(e) => {
                let v = ctx.eval_int(e)?;
                if leaf.inverted {
                    cf.q_exp -= v;
                } else {
                    cf.q_exp += v;
                }
            }
            TermAst::Poch { atom, step, len } => {
                let len = match len {
                    LenAst::Fixed(e) => ctx.eval_int(e)?,
                    LenAst::Index(i) => {
                        return Err(LowerError::Unbound { name: i.clone() })
                    }
                };
                if len < 0 {
                    return Err(LowerError::Integrality {
                        expr: "pochhammer length".to_string(),
                        binding: render_binding(binding),
                    });
                }
                let parts = eval_atom(atom, &ctx)?;
                let step = ctx.eval_int(step)?;
                if step < 1 {
                    return Err(LowerError::Unsupported {
                        what: format!("pochhammer step must be positive, got {step}"),
                    });
                }
                let poch = FixedPoch {
                    atom: SignedAtom {
                        coeff: parts.coeff,
                        q_exp: parts.q_exp,
                        var_exps: parts.var_exps,
                    },
                    step: step as u32,
                    len: len as u32,
                };
                if leaf.inverted {
                    cf.den_pochs.push(poch);
                } else {
                    cf.num_pochs.push(poch);
                }
            }
            TermAst::Int(v) => {
                if *v == 0 {
                    return Err(LowerError::Unsupported {
                        what: "zero factor inside a product".to_string(),
                    });
                }
                if leaf.inverted {
                    cf.scalar /= rat_int(*v);
                } else {
                    cf.scalar *= rat_int(*v);
                }
            }
            other => {
                return Err(LowerError::Unsupported {
                    what: format!("factor {:?} in a closed form", other),
                })
            }
        }
    }
    Ok(Rhs::Closed(cf))
}

fn collect_vars(body: &ClaimBody) -> Vec<Var> {
    let mut present = [false; 4];
    fn mark(present: &mut [bool; 4], m: &Monomial) {
        for v in Var::ALL {
            if m.degree_of(v) > 0 {
                present[v as usize] = true;
            }
        }
    }
    match body {
        ClaimBody::Standard { lhs, rhs } => {
            for spec in lhs.numerator.iter().chain(lhs.denominator.iter()) {
                mark(&mut present, &spec.atom.vars);
            }
            match rhs {
                Rhs::Series(s) => {
                    for spec in s.numerator.iter().chain(s.denominator.iter()) {
                        mark(&mut present, &spec.atom.vars);
                    }
                }
                Rhs::Closed(cf) => {
                    for p in cf.num_pochs.iter().chain(cf.den_pochs.iter()) {
                        for v in Var::ALL {
                            if p.atom.var_exps[v as usize] != 0 {
                                present[v as usize] = true;
                            }
                        }
                    }
                }
                Rhs::Zero => {}
            }
        }
        ClaimBody::Parametric { lhs, rhs } => {
            present[Var::A as usize] = true;
            for p in lhs.num.iter().chain(rhs.num.iter()) {
                mark(&mut present, &p.vars);
            }
        }
    }
    Var::ALL
        .into_iter()
        .filter(|v| present[*v as usize])
        .collect()
}

/// Lower a parsed claim with all parameters bound to integers.
pub fn lower(ast: &ClaimAst, binding: &BTreeMap<String, i64>) -> LResult<CongruenceClaim> {
    for p in &ast.params {
        if !binding.contains_key(p) {
            return Err(LowerError::Unbound { name: p.clone() });
        }
    }
    let params: BTreeMap<String, i64> = ast
        .params
        .iter()
        .map(|p| (p.clone(), binding[p]))
        .collect();
    let ctx = Ctx {
        binding,
        index: None,
    };

    let modulus = match &ast.modulus {
        ModulusAst::Phi { n, power } => {
            let n = ctx.eval_int(n)?;
            if n < 1 {
                return Err(LowerError::Unsupported {
                    what: format!("Phi index must be positive, got {n}"),
                });
            }
            ModulusSpec::PhiPower {
                n: n as u32,
                power: *power,
            }
        }
        ModulusAst::ParametricBoth | ModulusAst::ParametricSingle => {
            let n = *binding
                .get("n")
                .ok_or_else(|| LowerError::Unbound { name: "n".to_string() })?;
            if n < 1 {
                return Err(LowerError::Unsupported {
                    what: format!("parametric modulus requires positive n, got {n}"),
                });
            }
            ModulusSpec::ParametricA {
                n: n as u32,
                points: if matches!(ast.modulus, ModulusAst::ParametricBoth) {
                    ParamPoints::Both
                } else {
                    ParamPoints::InverseOnly
                },
            }
        }
        ModulusAst::PrimePower { p, e } => {
            let p = ctx.eval_int(p)?;
            if p < 2 {
                return Err(LowerError::Unsupported {
                    what: format!("prime modulus must be >= 2, got {p}"),
                });
            }
            ModulusSpec::PrimePower {
                p: p as u64,
                e: *e,
            }
        }
    };

    let body = match &modulus {
        ModulusSpec::ParametricA { .. } => {
            let lower_side = match &ast.lhs {
                SideAst::Sum {
                    index,
                    lower,
                    upper,
                    term,
                } => lower_sum_parametric(index, lower, upper, term, binding)?,
                SideAst::Term(_) => {
                    return Err(LowerError::Unsupported {
                        what: "parametric claims need sums on both sides".to_string(),
                    })
                }
            };
            let rhs_side = match &ast.rhs {
                SideAst::Sum {
                    index,
                    lower,
                    upper,
                    term,
                } => lower_sum_parametric(index, lower, upper, term, binding)?,
                SideAst::Term(_) => {
                    return Err(LowerError::Unsupported {
                        what: "parametric claims need sums on both sides".to_string(),
                    })
                }
            };
            ClaimBody::parametric(lower_side, rhs_side)
        }
        _ => {
            let ring_n = match &modulus {
                ModulusSpec::PhiPower { n, .. } => *n as i64,
                _ => 0,
            };
            let lhs = match &ast.lhs {
                SideAst::Sum {
                    index,
                    lower,
                    upper,
                    term,
                } => lower_sum_series(index, lower, upper, term, binding, &format!("{} lhs", ast.name))?,
                SideAst::Term(_) => {
                    return Err(LowerError::Unsupported {
                        what: "the left side must be a sum".to_string(),
                    })
                }
            };
            let rhs = match &ast.rhs {
                SideAst::Sum {
                    index,
                    lower,
                    upper,
                    term,
                } => Rhs::Series(lower_sum_series(
                    index,
                    lower,
                    upper,
                    term,
                    binding,
                    &format!("{} rhs", ast.name),
                )?),
                SideAst::Term(t) => lower_closed(t, binding, ring_n)?,
            };
            ClaimBody::Standard { lhs, rhs }
        }
    };
    let vars = collect_vars(&body);
    Ok(CongruenceClaim {
        name: ast.name.clone(),
        params,
        modulus,
        vars,
        body: Ok(body),
    })
}
