//! A small text language for congruence claims, so new conjectures can be
//! checked without recompiling.
//!
//! ```text
//! # claims/th-2-3.qcl
//! claim th-2-3 params d, n:
//!   sum k=0..(n-1)/(2d) of poch(q; q^(2d))_k / poch(q^(2d); q^(2d))_k * q^(2*d*k)
//!   ~= 0 mod Phi(n)^1
//! ```
//!
//! One claim per `claim` block, `#` line comments, `~=` as the ASCII form
//! of the congruence sign. Exponent and bound expressions are evaluated in
//! exact rational arithmetic and every division carries an integrality
//! assertion, failing loudly at lowering time when the parameters do not
//! divide.

mod ast;
mod lexer;
mod lower;
mod parser;
mod pretty;

pub use ast::{
    AtomAst, AtomFactor, ClaimAst, IntExpr, LenAst, ModulusAst, SideAst, TermAst,
};
pub use lexer::{Position, Token, TokenKind};
pub use lower::{lower, LowerError};
pub use parser::{parse, parse_claims, ParseError};
pub use pretty::pretty_print;

/// A claim text with its origin, for diagnostics.
#[derive(Clone, Debug)]
pub struct ClaimSource {
    pub text: String,
    pub origin: String,
}

impl ClaimSource {
    pub fn inline(text: impl Into<String>) -> ClaimSource {
        ClaimSource {
            text: text.into(),
            origin: "<inline>".to_string(),
        }
    }

    pub fn from_file(path: &std::path::Path) -> std::io::Result<ClaimSource> {
        Ok(ClaimSource {
            text: std::fs::read_to_string(path)?,
            origin: path.display().to_string(),
        })
    }
}
