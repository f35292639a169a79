//! Abstract syntax for claim texts.

use crate::multipoly::Var;

/// Integer-valued expressions over the claim parameters and the summation
/// index k. Division is exact: lowering asserts integrality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntExpr {
    Const(i64),
    Param(String),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
    /// Exact division, wrapped in an integrality assertion.
    Div(Box<IntExpr>, Box<IntExpr>),
    Neg(Box<IntExpr>),
    Pow(Box<IntExpr>, u32),
}

/// Length subscript of a pochhammer: the running index or a fixed amount.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LenAst {
    Index(String),
    Fixed(IntExpr),
}

/// One multiplicand of a pochhammer argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomFactor {
    /// q^{expr}
    QPow(IntExpr),
    /// variable to a (possibly negative) power
    Var(Var, i32),
    /// rational constant p/r
    Rat(i64, i64),
}

/// Argument of a pochhammer: an optional sign and a product of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomAst {
    pub negated: bool,
    pub factors: Vec<AtomFactor>,
}

/// Multiplicative formula pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermAst {
    Poch {
        atom: AtomAst,
        step: IntExpr,
        len: LenAst,
    },
    QPow(IntExpr),
    /// (-1)^{expr}
    SignPow(IntExpr),
    /// qint(expr) = [expr]_q
    QInt(IntExpr),
    Var(Var),
    Int(i64),
    Mul(Box<TermAst>, Box<TermAst>),
    Div(Box<TermAst>, Box<TermAst>),
    Neg(Box<TermAst>),
    Pow(Box<TermAst>, u32),
}

/// One side of a congruence: a truncated sum or a closed-form term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideAst {
    Sum {
        index: String,
        lower: IntExpr,
        upper: IntExpr,
        term: TermAst,
    },
    Term(TermAst),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusAst {
    /// Phi(expr)^power
    Phi { n: IntExpr, power: u32 },
    /// (1-a*q^n)(a-q^n)
    ParametricBoth,
    /// (1-a*q^n)
    ParametricSingle,
    /// p^e
    PrimePower { p: IntExpr, e: u32 },
}

/// A complete claim: name, declared parameters, and the congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimAst {
    pub name: String,
    pub params: Vec<String>,
    pub lhs: SideAst,
    pub rhs: SideAst,
    pub modulus: ModulusAst,
}
