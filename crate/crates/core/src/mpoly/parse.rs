//! Polynomial text grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ('^' uint)?
//! atom   := ident | uint | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies. Identifiers name ring variables or symbols of the
//! coefficient field. Division is only allowed by a nonzero constant.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{Field, FieldElem};

use super::poly::MPoly;
use super::ring::Ring;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unknown variable {name:?} at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("bad exponent at offset {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },
    #[error("invalid division at offset {pos}: {msg}")]
    BadDivision { pos: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let found = text[start..].chars().next().expect("nonempty");
                return Err(ParseError::Syntax {
                    pos: start,
                    expected: "a term".into(),
                    found: format!("character {found:?}"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Tok::Slash => {
                    let (_, pos) = self.bump();
                    let f = self.factor()?;
                    if !f.is_constant() {
                        return Err(ParseError::BadDivision {
                            pos,
                            msg: format!("divisor {f} is not a constant"),
                        });
                    }
                    let inv = f
                        .constant_term()
                        .inv()
                        .map_err(|_| ParseError::BadDivision {
                            pos,
                            msg: "division by zero".into(),
                        })?;
                    acc = acc.scale(&inv);
                }
                Tok::Ident(_) | Tok::Num(_) | Tok::LParen => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Num(n) => {
                let e = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| ParseError::BadExponent {
                        pos,
                        msg: format!("{n} exceeds the limit {MAX_EXPONENT}"),
                    })?;
                Ok(base.pow(e))
            }
            other => Err(ParseError::BadExponent {
                pos,
                msg: format!("expected a nonnegative integer, found {}", other.describe()),
            }),
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let ring = self.ring;
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.pos();
                self.bump();
                if let Some(i) = ring.var_index(&name) {
                    Ok(MPoly::var(ring, i))
                } else if let Some(c) = ring.field().symbol(&name) {
                    Ok(MPoly::constant(ring, c))
                } else {
                    Err(ParseError::UnknownVariable { name, pos })
                }
            }
            Tok::Num(n) => {
                self.bump();
                Ok(MPoly::constant(ring, ring.field().from_bigint(&n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.error("a variable, number or '('")),
        }
    }
}

/// Parses a polynomial in the variables of `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<MPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, i: 0, ring };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(out)
}

/// Parses a constant expression over `field` (field symbols allowed).
pub fn parse_scalar(text: &str, field: &Field) -> Result<FieldElem, ParseError> {
    let ring = Ring::new(field, &[] as &[&str]).expect("empty variable list is valid");
    let p = parse_poly(text, &ring)?;
    Ok(p.constant_term())
}

/// Parses a comma-separated list of constants, e.g. `2,0,0`.
pub fn parse_point(text: &str, field: &Field) -> Result<Vec<FieldElem>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let v = parse_scalar(part, field).map_err(|e| shift(e, offset))?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax {
            pos,
            expected,
            found,
        } => ParseError::Syntax {
            pos: pos + by,
            expected,
            found,
        },
        ParseError::UnknownVariable { name, pos } => ParseError::UnknownVariable {
            name,
            pos: pos + by,
        },
        ParseError::BadExponent { pos, msg } => ParseError::BadExponent { pos: pos + by, msg },
        ParseError::BadDivision { pos, msg } => ParseError::BadDivision { pos: pos + by, msg },
    }
}
