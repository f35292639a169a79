//! Series templates carrying the auxiliary parameter `a` of the
//! creative-microscoping lemmas. The parameter only ever appears as an
//! integer power inside pochhammer arguments (`a q^s`, `q^s / a`), so a
//! claim is stored as a template and specialized by substituting `a = q^t`,
//! which produces an ordinary series.

use crate::multipoly::Monomial;
use crate::qseries::{AffineExp, PochSpec, QAtom, SeriesSpec};
use crate::rational::Rational;

/// `(coeff * q^{q_exp} * a^{a_exp} * vars ; q^step)_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoch {
    pub coeff: Rational,
    pub q_exp: i64,
    pub a_exp: i32,
    pub vars: Monomial,
    pub step: u32,
}

impl ParamPoch {
    fn substitute_a(&self, t: i64) -> PochSpec {
        let q_exp = self.q_exp + self.a_exp as i64 * t;
        let atom = if self.vars.is_unit() {
            QAtom::numeric(self.coeff.clone(), q_exp)
        } else {
            QAtom::with_vars(self.coeff.clone(), q_exp, self.vars)
        };
        PochSpec::running(atom, self.step)
    }
}

/// A truncated sum whose pochhammer arguments may involve `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSeries {
    pub num: Vec<ParamPoch>,
    pub den: Vec<ParamPoch>,
    pub power: AffineExp,
    pub top: u32,
}

impl ParamSeries {
    /// The ordinary series obtained by `a = q^t`.
    pub fn substitute_a(&self, t: i64) -> SeriesSpec {
        SeriesSpec::new(
            self.num.iter().map(|p| p.substitute_a(t)).collect(),
            self.den.iter().map(|p| p.substitute_a(t)).collect(),
            self.power,
            self.top,
            format!("a=q^{t}"),
        )
    }
}
