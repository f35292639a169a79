//! Recursive-descent parser with single-token lookahead and positioned
//! diagnostics. No input causes a panic; every failure is a `ParseError`
//! carrying line, column, the found token and the expected set.

use std::fmt;

use crate::dsl::ast::*;
use crate::dsl::lexer::{Lexer, Position, Token, TokenKind};
use crate::dsl::ClaimSource;
use crate::multipoly::Var;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub origin: String,
    pub pos: Position,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.origin,
            self.pos,
            self.expected.join(" | "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Token>,
    origin: String,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(source: &'a ClaimSource) -> Parser<'a> {
        Parser {
            lexer: Lexer::new(&source.text),
            peeked: None,
            origin: source.origin.clone(),
        }
    }

    fn lex_error(&self, (pos, msg): (Position, String)) -> ParseError {
        ParseError {
            origin: self.origin.clone(),
            pos,
            found: msg,
            expected: vec!["a valid token".to_string()],
        }
    }

    fn peek(&mut self) -> PResult<&Token> {
        if self.peeked.is_none() {
            let tok = self.lexer.next_token().map_err(|e| self.lex_error(e))?;
            self.peeked = Some(tok);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> PResult<Token> {
        if let Some(tok) = self.peeked.take() {
            return Ok(tok);
        }
        self.lexer.next_token().map_err(|e| self.lex_error(e))
    }

    fn error<T>(&mut self, expected: &[&str]) -> PResult<T> {
        let tok = self.peek()?.clone();
        Err(ParseError {
            origin: self.origin.clone(),
            pos: tok.pos,
            found: tok.kind.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<Token> {
        if self.peek()?.kind == kind {
            self.next()
        } else {
            self.error(&[what])
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> PResult<bool> {
        if &self.peek()?.kind == kind {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<String> {
        match self.peek()?.kind.clone() {
            TokenKind::Ident(s) => {
                self.next()?;
                Ok(s)
            }
            _ => self.error(&[what]),
        }
    }

    fn expect_int(&mut self, what: &str) -> PResult<i64> {
        match self.peek()?.kind {
            TokenKind::Int(v) => {
                self.next()?;
                Ok(v)
            }
            _ => self.error(&[what]),
        }
    }

    fn expect_specific_ident(&mut self, name: &str) -> PResult<()> {
        match self.peek()?.kind.clone() {
            TokenKind::Ident(s) if s == name => {
                self.next()?;
                Ok(())
            }
            _ => self.error(&[&format!("`{name}`")]),
        }
    }

    // ---- integer expressions -------------------------------------------

    fn parse_intexpr(&mut self) -> PResult<IntExpr> {
        let mut acc = self.parse_intterm()?;
        loop {
            match self.peek()?.kind {
                TokenKind::Plus => {
                    self.next()?;
                    acc = IntExpr::Add(Box::new(acc), Box::new(self.parse_intterm()?));
                }
                TokenKind::Minus => {
                    self.next()?;
                    acc = IntExpr::Sub(Box::new(acc), Box::new(self.parse_intterm()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_intterm(&mut self) -> PResult<IntExpr> {
        let mut acc = self.parse_intpow()?;
        loop {
            match self.peek()?.kind.clone() {
                TokenKind::Star => {
                    self.next()?;
                    acc = IntExpr::Mul(Box::new(acc), Box::new(self.parse_intpow()?));
                }
                TokenKind::Slash => {
                    self.next()?;
                    acc = IntExpr::Div(Box::new(acc), Box::new(self.parse_intpow()?));
                }
                // Juxtaposition such as `2d` means multiplication.
                TokenKind::Ident(_) => {
                    let rhs = self.parse_intpow()?;
                    acc = IntExpr::Mul(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_intpow(&mut self) -> PResult<IntExpr> {
        let base = self.parse_intatom()?;
        if self.peek()?.kind == TokenKind::Caret {
            self.next()?;
            let e = self.expect_int("an integer exponent")?;
            if e < 0 {
                return self.error(&["a nonnegative exponent"]);
            }
            return Ok(IntExpr::Pow(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn parse_intatom(&mut self) -> PResult<IntExpr> {
        match self.peek()?.kind.clone() {
            TokenKind::Int(v) => {
                self.next()?;
                Ok(IntExpr::Const(v))
            }
            TokenKind::Ident(s) => {
                self.next()?;
                Ok(IntExpr::Param(s))
            }
            TokenKind::LParen => {
                self.next()?;
                let e = self.parse_intexpr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            TokenKind::Minus => {
                self.next()?;
                Ok(IntExpr::Neg(Box::new(self.parse_intpow()?)))
            }
            _ => self.error(&["an integer", "a parameter", "`(`", "`-`"]),
        }
    }

    /// Exponent position: a bare integer or identifier, or a parenthesized
    /// expression (so `q^d`, `q^2`, `q^(2*d)` all work).
    fn parse_atomexp(&mut self) -> PResult<IntExpr> {
        match self.peek()?.kind.clone() {
            TokenKind::Int(v) => {
                self.next()?;
                Ok(IntExpr::Const(v))
            }
            TokenKind::Ident(s) => {
                self.next()?;
                Ok(IntExpr::Param(s))
            }
            TokenKind::LParen => {
                self.next()?;
                let e = self.parse_intexpr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            TokenKind::Minus => {
                self.next()?;
                Ok(IntExpr::Neg(Box::new(self.parse_atomexp()?)))
            }
            _ => self.error(&["an integer", "a parameter", "`(`"]),
        }
    }

    // ---- pochhammer atoms ----------------------------------------------

    fn parse_atom(&mut self) -> PResult<AtomAst> {
        let negated = self.eat(&TokenKind::Minus)?;
        let mut factors = vec![self.parse_atom_factor(false)?];
        loop {
            match self.peek()?.kind {
                TokenKind::Star => {
                    self.next()?;
                    factors.push(self.parse_atom_factor(false)?);
                }
                TokenKind::Slash => {
                    self.next()?;
                    factors.push(self.parse_atom_factor(true)?);
                }
                _ => break,
            }
        }
        Ok(AtomAst { negated, factors })
    }

    fn parse_atom_factor(&mut self, inverted: bool) -> PResult<AtomFactor> {
        match self.peek()?.kind.clone() {
            TokenKind::Ident(s) if s == "q" => {
                self.next()?;
                let e = if self.eat(&TokenKind::Caret)? {
                    self.parse_atomexp()?
                } else {
                    IntExpr::Const(1)
                };
                Ok(AtomFactor::QPow(if inverted {
                    IntExpr::Neg(Box::new(e))
                } else {
                    e
                }))
            }
            TokenKind::Ident(s) => match Var::from_name(&s) {
                Some(v) => {
                    self.next()?;
                    let mut e: i32 = 1;
                    if self.eat(&TokenKind::Caret)? {
                        e = self.parse_var_exponent()?;
                    }
                    Ok(AtomFactor::Var(v, if inverted { -e } else { e }))
                }
                None => self.error(&["`q`", "a variable (x, y, a, m)"]),
            },
            TokenKind::Int(p) => {
                self.next()?;
                Ok(if inverted {
                    AtomFactor::Rat(1, p)
                } else {
                    AtomFactor::Rat(p, 1)
                })
            }
            _ => self.error(&["`q`", "a variable", "an integer"]),
        }
    }

    fn parse_var_exponent(&mut self) -> PResult<i32> {
        match self.peek()?.kind {
            TokenKind::Int(v) => {
                self.next()?;
                Ok(v as i32)
            }
            TokenKind::LParen => {
                self.next()?;
                let neg = self.eat(&TokenKind::Minus)?;
                let v = self.expect_int("an integer")?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(if neg { -(v as i32) } else { v as i32 })
            }
            _ => self.error(&["an integer exponent", "`(`"]),
        }
    }

    // ---- terms -----------------------------------------------------------

    fn parse_term(&mut self) -> PResult<TermAst> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek()?.kind {
                TokenKind::Star => {
                    self.next()?;
                    acc = TermAst::Mul(Box::new(acc), Box::new(self.parse_factor()?));
                }
                TokenKind::Slash => {
                    self.next()?;
                    acc = TermAst::Div(Box::new(acc), Box::new(self.parse_factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> PResult<TermAst> {
        if self.eat(&TokenKind::Minus)? {
            return Ok(TermAst::Neg(Box::new(self.parse_factor()?)));
        }
        let base = self.parse_base()?;
        if self.peek()?.kind == TokenKind::Caret {
            self.next()?;
            // (-1)^expr is the sign factor; everything else takes a
            // nonnegative integer power.
            if base == TermAst::Neg(Box::new(TermAst::Int(1))) {
                let e = self.parse_atomexp()?;
                return Ok(TermAst::SignPow(e));
            }
            let e = self.expect_int("a nonnegative integer power")?;
            if e < 0 {
                return self.error(&["a nonnegative integer power"]);
            }
            return Ok(TermAst::Pow(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> PResult<TermAst> {
        match self.peek()?.kind.clone() {
            TokenKind::Poch => {
                self.next()?;
                self.expect(TokenKind::LParen, "`(`")?;
                let atom = self.parse_atom()?;
                self.expect(TokenKind::Semicolon, "`;`")?;
                self.expect_specific_ident("q")?;
                self.expect(TokenKind::Caret, "`^`")?;
                let step = self.parse_atomexp()?;
                self.expect(TokenKind::RParen, "`)`")?;
                self.expect(TokenKind::Underscore, "`_`")?;
                let len = self.parse_poch_len()?;
                Ok(TermAst::Poch { atom, step, len })
            }
            TokenKind::QInt => {
                self.next()?;
                self.expect(TokenKind::LParen, "`(`")?;
                let e = self.parse_intexpr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(TermAst::QInt(e))
            }
            TokenKind::Ident(s) if s == "q" => {
                self.next()?;
                self.expect(TokenKind::Caret, "`^`")?;
                let e = self.parse_atomexp()?;
                Ok(TermAst::QPow(e))
            }
            TokenKind::Ident(s) => match Var::from_name(&s) {
                Some(v) => {
                    self.next()?;
                    Ok(TermAst::Var(v))
                }
                None => self.error(&["`poch`", "`qint`", "`q^`", "a variable", "an integer", "`(`"]),
            },
            TokenKind::Int(v) => {
                self.next()?;
                Ok(TermAst::Int(v))
            }
            TokenKind::LParen => {
                self.next()?;
                let t = self.parse_term()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(t)
            }
            _ => self.error(&["`poch`", "`qint`", "`q^`", "a variable", "an integer", "`(`", "`-`"]),
        }
    }

    fn parse_poch_len(&mut self) -> PResult<LenAst> {
        match self.peek()?.kind.clone() {
            TokenKind::Ident(s) => {
                self.next()?;
                Ok(LenAst::Index(s))
            }
            TokenKind::Int(v) => {
                self.next()?;
                Ok(LenAst::Fixed(IntExpr::Const(v)))
            }
            TokenKind::LParen => {
                self.next()?;
                let e = self.parse_intexpr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(LenAst::Fixed(e))
            }
            _ => self.error(&["an index name", "an integer", "`(`"]),
        }
    }

    // ---- sides and claims ------------------------------------------------

    fn parse_side(&mut self) -> PResult<SideAst> {
        if self.peek()?.kind == TokenKind::Sum {
            self.next()?;
            let index = self.expect_ident("a summation index")?;
            self.expect(TokenKind::Eq, "`=`")?;
            let lower = self.parse_intexpr()?;
            self.expect(TokenKind::DotDot, "`..`")?;
            let upper = self.parse_intexpr()?;
            self.expect(TokenKind::Of, "`of`")?;
            let term = self.parse_term()?;
            return Ok(SideAst::Sum {
                index,
                lower,
                upper,
                term,
            });
        }
        Ok(SideAst::Term(self.parse_term()?))
    }

    fn parse_modulus(&mut self) -> PResult<ModulusAst> {
        match self.peek()?.kind.clone() {
            TokenKind::Phi => {
                self.next()?;
                self.expect(TokenKind::LParen, "`(`")?;
                let n = self.parse_intexpr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                self.expect(TokenKind::Caret, "`^`")?;
                let power = self.expect_int("a positive integer power")?;
                if power < 1 {
                    return self.error(&["a positive integer power"]);
                }
                Ok(ModulusAst::Phi {
                    n,
                    power: power as u32,
                })
            }
            TokenKind::Ident(s) if s == "p" => {
                self.next()?;
                self.expect(TokenKind::Caret, "`^`")?;
                let e = self.expect_int("a positive integer exponent")?;
                if e < 1 {
                    return self.error(&["a positive integer exponent"]);
                }
                Ok(ModulusAst::PrimePower {
                    p: IntExpr::Param("p".to_string()),
                    e: e as u32,
                })
            }
            TokenKind::LParen => {
                // (1-a*q^n)(a-q^n) or (1-a*q^n)
                self.next()?;
                let one = self.expect_int("`1`")?;
                if one != 1 {
                    return self.error(&["`1`"]);
                }
                self.expect(TokenKind::Minus, "`-`")?;
                self.expect_specific_ident("a")?;
                self.expect(TokenKind::Star, "`*`")?;
                self.expect_specific_ident("q")?;
                self.expect(TokenKind::Caret, "`^`")?;
                self.expect_specific_ident("n")?;
                self.expect(TokenKind::RParen, "`)`")?;
                if self.peek()?.kind == TokenKind::LParen {
                    self.next()?;
                    self.expect_specific_ident("a")?;
                    self.expect(TokenKind::Minus, "`-`")?;
                    self.expect_specific_ident("q")?;
                    self.expect(TokenKind::Caret, "`^`")?;
                    self.expect_specific_ident("n")?;
                    self.expect(TokenKind::RParen, "`)`")?;
                    Ok(ModulusAst::ParametricBoth)
                } else {
                    Ok(ModulusAst::ParametricSingle)
                }
            }
            _ => self.error(&["`Phi`", "`p^`", "`(1-a*q^n)`"]),
        }
    }

    fn parse_claim(&mut self) -> PResult<ClaimAst> {
        self.expect(TokenKind::Claim, "`claim`")?;
        debug_assert!(self.peeked.is_none());
        let name_tok = self.lexer.next_name().map_err(|e| self.lex_error(e))?;
        let name = match name_tok.kind {
            TokenKind::Name(s) => s,
            _ => unreachable!(),
        };
        self.expect(TokenKind::Params, "`params`")?;
        let mut params = vec![self.expect_ident("a parameter name")?];
        while self.eat(&TokenKind::Comma)? {
            params.push(self.expect_ident("a parameter name")?);
        }
        self.expect(TokenKind::Colon, "`:`")?;
        let lhs = self.parse_side()?;
        self.expect(TokenKind::Congruent, "`~=`")?;
        let rhs = self.parse_side()?;
        self.expect(TokenKind::Mod, "`mod`")?;
        let modulus = self.parse_modulus()?;
        Ok(ClaimAst {
            name,
            params,
            lhs,
            rhs,
            modulus,
        })
    }
}

/// Parse exactly one claim.
pub fn parse(source: &ClaimSource) -> Result<ClaimAst, ParseError> {
    let mut parser = Parser::new(source);
    let claim = parser.parse_claim()?;
    parser.expect(TokenKind::Eof, "end of input")?;
    Ok(claim)
}

/// Parse a file of claims (one or more `claim` blocks).
pub fn parse_claims(source: &ClaimSource) -> Result<Vec<ClaimAst>, ParseError> {
    let mut parser = Parser::new(source);
    let mut claims = Vec::new();
    loop {
        if parser.peek()?.kind == TokenKind::Eof {
            if claims.is_empty() {
                return parser.error(&["`claim`"]);
            }
            return Ok(claims);
        }
        claims.push(parser.parse_claim()?);
    }
}
