//! Deterministic pretty-printer; `parse(pretty_print(ast))` reproduces the
//! AST exactly.

use crate::dsl::ast::*;
use crate::multipoly::Var;

fn prec(e: &IntExpr) -> u8 {
    match e {
        IntExpr::Add(..) | IntExpr::Sub(..) => 1,
        IntExpr::Mul(..) | IntExpr::Div(..) => 2,
        IntExpr::Neg(..) => 3,
        IntExpr::Pow(..) => 4,
        IntExpr::Const(..) | IntExpr::Param(..) => 5,
    }
}

fn render_prec(e: &IntExpr, min: u8, out: &mut String) {
    let p = prec(e);
    if p < min {
        out.push('(');
    }
    match e {
        IntExpr::Const(v) => out.push_str(&v.to_string()),
        IntExpr::Param(s) => out.push_str(s),
        IntExpr::Add(a, b) => {
            render_prec(a, 1, out);
            out.push_str("+");
            render_prec(b, 2, out);
        }
        IntExpr::Sub(a, b) => {
            render_prec(a, 1, out);
            out.push_str("-");
            render_prec(b, 2, out);
        }
        IntExpr::Mul(a, b) => {
            render_prec(a, 2, out);
            out.push('*');
            render_prec(b, 3, out);
        }
        IntExpr::Div(a, b) => {
            render_prec(a, 2, out);
            out.push('/');
            render_prec(b, 3, out);
        }
        IntExpr::Neg(a) => {
            out.push('-');
            render_prec(a, 4, out);
        }
        IntExpr::Pow(a, e2) => {
            render_prec(a, 5, out);
            out.push('^');
            out.push_str(&e2.to_string());
        }
    }
    if p < min {
        out.push(')');
    }
}

pub(crate) fn render_intexpr(e: &IntExpr) -> String {
    let mut s = String::new();
    render_prec(e, 0, &mut s);
    s
}

/// Exponent position: bare for simple, parenthesized otherwise.
fn render_atomexp(e: &IntExpr) -> String {
    match e {
        IntExpr::Const(v) if *v >= 0 => v.to_string(),
        IntExpr::Param(s) => s.clone(),
        other => format!("({})", render_intexpr(other)),
    }
}

fn render_var(v: Var) -> &'static str {
    v.name()
}

fn render_atom(a: &AtomAst) -> String {
    let mut out = String::new();
    if a.negated {
        out.push('-');
    }
    for (i, f) in a.factors.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        match f {
            AtomFactor::QPow(e) => {
                out.push_str("q^");
                out.push_str(&render_atomexp(e));
            }
            AtomFactor::Var(v, e) => {
                out.push_str(render_var(*v));
                if *e != 1 {
                    if *e >= 0 {
                        out.push_str(&format!("^{e}"));
                    } else {
                        out.push_str(&format!("^({e})"));
                    }
                }
            }
            AtomFactor::Rat(p, r) => {
                out.push_str(&p.to_string());
                if *r != 1 {
                    out.push_str(&format!("/{r}"));
                }
            }
        }
    }
    out
}

fn render_len(l: &LenAst) -> String {
    match l {
        LenAst::Index(s) => s.clone(),
        LenAst::Fixed(IntExpr::Const(v)) if *v >= 0 => v.to_string(),
        LenAst::Fixed(e) => format!("({})", render_intexpr(e)),
    }
}

fn term_prec(t: &TermAst) -> u8 {
    match t {
        TermAst::Mul(..) | TermAst::Div(..) => 1,
        TermAst::Neg(..) => 2,
        _ => 3,
    }
}

fn render_term_prec(t: &TermAst, min: u8, out: &mut String) {
    let p = term_prec(t);
    if p < min {
        out.push('(');
    }
    match t {
        TermAst::Poch { atom, step, len } => {
            out.push_str(&format!(
                "poch({}; q^{})_{}",
                render_atom(atom),
                render_atomexp(step),
                render_len(len)
            ));
        }
        TermAst::QPow(e) => {
            out.push_str("q^");
            out.push_str(&render_atomexp(e));
        }
        TermAst::SignPow(e) => {
            out.push_str("(-1)^");
            out.push_str(&render_atomexp(e));
        }
        TermAst::QInt(e) => {
            out.push_str(&format!("qint({})", render_intexpr(e)));
        }
        TermAst::Var(v) => out.push_str(render_var(*v)),
        TermAst::Int(v) => {
            if *v < 0 {
                out.push_str(&format!("({v})"));
            } else {
                out.push_str(&v.to_string());
            }
        }
        TermAst::Mul(a, b) => {
            render_term_prec(a, 1, out);
            out.push_str(" * ");
            render_term_prec(b, 2, out);
        }
        TermAst::Div(a, b) => {
            render_term_prec(a, 1, out);
            out.push_str(" / ");
            render_term_prec(b, 2, out);
        }
        TermAst::Neg(a) => {
            out.push('-');
            render_term_prec(a, 2, out);
        }
        TermAst::Pow(a, e) => {
            render_term_prec(a, 3, out);
            out.push_str(&format!("^{e}"));
        }
    }
    if p < min {
        out.push(')');
    }
}

fn render_term(t: &TermAst) -> String {
    let mut s = String::new();
    render_term_prec(t, 0, &mut s);
    s
}

fn render_side(s: &SideAst) -> String {
    match s {
        SideAst::Sum {
            index,
            lower,
            upper,
            term,
        } => format!(
            "sum {index}={}..{} of {}",
            render_intexpr(lower),
            match upper {
                IntExpr::Const(v) if *v >= 0 => v.to_string(),
                IntExpr::Param(p) => p.clone(),
                other => format!("({})", render_intexpr(other)),
            },
            render_term(term)
        ),
        SideAst::Term(t) => render_term(t),
    }
}

fn render_modulus(m: &ModulusAst) -> String {
    match m {
        ModulusAst::Phi { n, power } => format!("Phi({})^{}", render_intexpr(n), power),
        ModulusAst::ParametricBoth => "(1-a*q^n)(a-q^n)".to_string(),
        ModulusAst::ParametricSingle => "(1-a*q^n)".to_string(),
        ModulusAst::PrimePower { e, .. } => format!("p^{e}"),
    }
}

/// Render a claim as parseable text.
pub fn pretty_print(c: &ClaimAst) -> String {
    format!(
        "claim {} params {}:\n  {}\n  ~= {}\n  mod {}\n",
        c.name,
        c.params.join(", "),
        render_side(&c.lhs),
        render_side(&c.rhs),
        render_modulus(&c.modulus)
    )
}
