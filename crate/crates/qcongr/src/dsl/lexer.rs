//! Hand-written lexer. Claim names are read in a dedicated mode (they may
//! contain hyphens, which are minus signs everywhere else).

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    /// A claim name read in name mode (may contain '-').
    Name(String),
    Claim,
    Params,
    Sum,
    Of,
    Mod,
    Poch,
    QInt,
    Phi,
    Congruent, // "~=" or unicode congruence sign
    Colon,
    Comma,
    Semicolon,
    Eq,
    DotDot,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Underscore,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Int(v) => write!(f, "integer `{v}`"),
            TokenKind::Name(s) => write!(f, "name `{s}`"),
            TokenKind::Claim => write!(f, "`claim`"),
            TokenKind::Params => write!(f, "`params`"),
            TokenKind::Sum => write!(f, "`sum`"),
            TokenKind::Of => write!(f, "`of`"),
            TokenKind::Mod => write!(f, "`mod`"),
            TokenKind::Poch => write!(f, "`poch`"),
            TokenKind::QInt => write!(f, "`qint`"),
            TokenKind::Phi => write!(f, "`Phi`"),
            TokenKind::Congruent => write!(f, "`~=`"),
            TokenKind::Colon => write!(f, "`:`"),
            TokenKind::Comma => write!(f, "`,`"),
            TokenKind::Semicolon => write!(f, "`;`"),
            TokenKind::Eq => write!(f, "`=`"),
            TokenKind::DotDot => write!(f, "`..`"),
            TokenKind::Plus => write!(f, "`+`"),
            TokenKind::Minus => write!(f, "`-`"),
            TokenKind::Star => write!(f, "`*`"),
            TokenKind::Slash => write!(f, "`/`"),
            TokenKind::Caret => write!(f, "`^`"),
            TokenKind::Underscore => write!(f, "`_`"),
            TokenKind::LParen => write!(f, "`(`"),
            TokenKind::RParen => write!(f, "`)`"),
            TokenKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Position,
}

pub struct Lexer<'a> {
    chars: Vec<char>,
    _marker: std::marker::PhantomData<&'a str>,
    idx: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            chars: src.chars().collect(),
            _marker: std::marker::PhantomData,
            idx: 0,
            line: 1,
            col: 1,
        }
    }

    pub fn position(&self) -> Position {
        Position {
            line: self.line,
            col: self.col,
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.chars.get(self.idx).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.idx).copied()?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek_char() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek_char() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    /// Read a claim name: letters, digits, '_' and '-'.
    pub fn next_name(&mut self) -> Result<Token, (Position, String)> {
        self.skip_trivia();
        let pos = self.position();
        let mut name = String::new();
        while let Some(c) = self.peek_char() {
            if c.is_alphanumeric() || c == '_' || c == '-' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err((pos, "expected a claim name".to_string()));
        }
        Ok(Token {
            kind: TokenKind::Name(name),
            pos,
        })
    }

    pub fn next_token(&mut self) -> Result<Token, (Position, String)> {
        self.skip_trivia();
        let pos = self.position();
        let c = match self.peek_char() {
            None => {
                return Ok(Token {
                    kind: TokenKind::Eof,
                    pos,
                })
            }
            Some(c) => c,
        };
        let kind = if c.is_ascii_digit() {
            let mut value: i64 = 0;
            while let Some(c) = self.peek_char() {
                if let Some(d) = c.to_digit(10) {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as i64))
                        .ok_or((pos, "integer literal overflows".to_string()))?;
                    self.bump();
                } else {
                    break;
                }
            }
            TokenKind::Int(value)
        } else if c.is_alphabetic() {
            let mut word = String::new();
            while let Some(c) = self.peek_char() {
                if c.is_alphanumeric() || c == '_' {
                    word.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            match word.as_str() {
                "claim" => TokenKind::Claim,
                "params" => TokenKind::Params,
                "sum" => TokenKind::Sum,
                "of" => TokenKind::Of,
                "mod" => TokenKind::Mod,
                "poch" => TokenKind::Poch,
                "qint" => TokenKind::QInt,
                "Phi" => TokenKind::Phi,
                _ => TokenKind::Ident(word),
            }
        } else {
            self.bump();
            match c {
                ':' => TokenKind::Colon,
                ',' => TokenKind::Comma,
                ';' => TokenKind::Semicolon,
                '=' => TokenKind::Eq,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '_' => TokenKind::Underscore,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '.' => {
                    if self.peek_char() == Some('.') {
                        self.bump();
                        TokenKind::DotDot
                    } else {
                        return Err((pos, "expected `..`".to_string()));
                    }
                }
                '~' => {
                    if self.peek_char() == Some('=') {
                        self.bump();
                        TokenKind::Congruent
                    } else {
                        return Err((pos, "expected `~=`".to_string()));
                    }
                }
                '\u{2261}' => TokenKind::Congruent,
                other => {
                    return Err((pos, format!("unexpected character `{other}`")));
                }
            }
        };
        Ok(Token { kind, pos })
    }
}
