//! Text form of univariate rational functions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := ('+' | '-') factor | base ('^' integer)?
//! base     := rational | 'x' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is ignored and `*` may be omitted between a numeric literal
//! and `x`. A literal `p/q` binds as one number, so `2/3^2` is `(2/3)^2`.
//! Negative exponents are written as divisions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::Error;
use crate::laurent::LaurentPolynomial;
use crate::{Poly, RatFunc, Rational};

/// Exponents above this are rejected to keep parsing bounded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by the zero function at position {pos}")]
    DivisionByZeroFunction { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::DivisionByZeroFunction { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'x' => Tok::X,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let (mut acc, mut literal) = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?.0);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.factor()?.0;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| ParseError::DivisionByZeroFunction { pos })?;
                }
                // Implicit product: coefficient immediately followed by x.
                Tok::X if literal => {
                    acc = acc.mul(&self.factor()?.0);
                }
                _ => return Ok(acc),
            }
            literal = false;
        }
    }

    /// The flag reports whether the factor was a bare numeric literal.
    fn factor(&mut self) -> Result<(RatFunc, bool), ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                let (f, lit) = self.factor()?;
                return Ok((f.neg(), lit));
            }
            Tok::Plus => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let (base, literal) = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok((base, literal));
        }
        self.bump();
        let k = match self.peek().clone() {
            Tok::Int(n) => n,
            _ => return self.syntax("expected a non-negative integer exponent"),
        };
        let k: u32 = match u32::try_from(&k) {
            Ok(k) if k <= MAX_EXPONENT => k,
            _ => return self.syntax(format!("exponent exceeds {MAX_EXPONENT}")),
        };
        self.bump();
        Ok((base.pow(k), false))
    }

    fn base(&mut self) -> Result<(RatFunc, bool), ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                // `p/q` is a single literal only when q is a nonzero integer.
                if *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek2().clone() {
                        if !d.is_zero() {
                            self.bump();
                            self.bump();
                            return Ok((RatFunc::constant(Rational::new(n, d)), true));
                        }
                    }
                }
                Ok((RatFunc::constant(Rational::from_integer(n)), true))
            }
            Tok::X => {
                self.bump();
                Ok((RatFunc::x(), false))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump();
                Ok((inner, false))
            }
            Tok::End => self.syntax("unexpected end of input"),
            other => self.syntax(format!("unexpected token {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::X => "'x'",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

/// Parse to canonical form.
pub fn parse_function(text: &str) -> Result<RatFunc, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax(format!("unexpected {}", describe(p.peek())));
    }
    Ok(f)
}

/// A constant expression such as `5/12`, `-3` or `(1/2)^3`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let f = parse_function(text)?;
    if !f.is_constant() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "expected a constant".into(),
        });
    }
    Ok(f.numerator().coeff(0))
}

/// Exponent map of `f` when its denominator is a power of `x`.
pub fn laurent_of(f: &RatFunc) -> Result<LaurentPolynomial<Rational>, Error> {
    LaurentPolynomial::from_function(f).ok_or_else(|| Error::NotLaurent(format_function(f)))
}

/// Text that [`parse_function`] maps back to `f`.
pub fn format_function(f: &RatFunc) -> String {
    if f.denominator().is_one() {
        return format_poly(f.numerator());
    }
    let wrap = |p: &Poly| {
        let s = format_poly(p);
        if p.term_count() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}/{}", wrap(f.numerator()), wrap(f.denominator()))
}

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&format_monomial(&c.abs(), k));
    }
    out
}

fn format_monomial(m: &Rational, k: usize) -> String {
    let power = match k {
        0 => return m.to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    };
    if m.is_one() {
        power
    } else {
        format!("{m}*{power}")
    }
}

/// Wrapper giving a function its canonical textual `Display`.
pub struct Formatted<'a>(pub &'a RatFunc);

impl fmt::Display for Formatted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_function(self.0))
    }
}
