//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ('/' INT)? | VAR ('^' INT)? | '(' expr ')' ('^' INT)? | '-' factor
//! ```
//!
//! Whitespace is insignificant. `INT '/' INT` is a rational literal, which the
//! printer emits for non-integral rational coefficients.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use super::{check_vars, ExponentVector, PolyError, Polynomial};
use crate::field::{FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    Field(FieldError),
    Poly(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "syntax error at {}: unexpected character `{c}`", self.position)
            }
            ParseErrorKind::UnexpectedToken(t) => {
                write!(f, "syntax error at {}: unexpected `{t}`", self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "syntax error at {}: unexpected end of input", self.position)
            }
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable `{v}` at {}", self.position)
            }
            ParseErrorKind::Field(e) => write!(f, "{e} (at {})", self.position),
            ParseErrorKind::Poly(e) => write!(f, "{e} (at {})", self.position),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigUint),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigUint = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*^/()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::UnexpectedChar(c),
                position: i,
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    zero: Polynomial,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly_err(&self, at: usize, e: PolyError) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Poly(e.to_string()),
            position: at,
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.try_add(&t).map_err(|e| self.poly_err(at, e))?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.try_sub(&t).map_err(|e| self.poly_err(at, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let at = self.offset();
            if !self.eat('*') {
                return Ok(acc);
            }
            let f = self.factor()?;
            acc = acc.try_mul(&f).map_err(|e| self.poly_err(at, e))?;
        }
    }

    fn exponent(&mut self) -> Result<Option<BigUint>, ParseError> {
        if !self.eat('^') {
            return Ok(None);
        }
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Some(n))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        let field = self.zero.field().clone();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let num = BigInt::from(n);
                let c = if self.eat('/') {
                    let den = match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            BigInt::from(d)
                        }
                        _ => return Err(self.unexpected()),
                    };
                    field.from_ratio(&num, &den).map_err(|e| ParseError {
                        kind: ParseErrorKind::Field(e),
                        position: at,
                    })?
                } else {
                    field.from_bigint(&num)
                };
                Ok(self.zero.constant_like(c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let k = self.vars.iter().position(|v| *v == name).ok_or(ParseError {
                    kind: ParseErrorKind::UnknownVariable(name),
                    position: at,
                })?;
                let mut e = ExponentVector::zero(self.vars.len()).into_entries();
                e[k] = self.exponent()?.unwrap_or_else(|| BigUint::from(1u32));
                Ok(self.zero.monomial_like(ExponentVector::new(e), field.one()))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                match self.exponent()? {
                    Some(k) => inner.pow(&k).map_err(|e| self.poly_err(at, e)),
                    None => Ok(inner),
                }
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `text` as a polynomial in `vars` over `field`.
pub fn parse_polynomial(
    text: &str,
    vars: &[String],
    field: &FieldSpec,
) -> Result<Polynomial, ParseError> {
    check_vars(vars).map_err(|e| ParseError {
        kind: ParseErrorKind::Poly(e.to_string()),
        position: 0,
    })?;
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
        zero: Polynomial::zero(field.clone(), vars).expect("checked variables"),
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.unexpected());
    }
    Ok(p)
}

/// Identifiers appearing in `text`, in order of first appearance. Used when
/// no explicit variable list is given.
pub fn infer_variables(text: &str) -> Result<Vec<String>, ParseError> {
    let mut vars: Vec<String> = Vec::new();
    for (t, _) in tokenize(text)? {
        if let Tok::Ident(s) = t {
            if !vars.contains(&s) {
                vars.push(s);
            }
        }
    }
    Ok(vars)
}
