//! Text forms of a polynomial.
//!
//! Three styles are accepted and produced:
//!
//! * algebraic: `x^4+x^3+1`
//! * hex: `0x19`, bit `i` is the coefficient of `x^i`
//! * product: `x^2*(x+1)^1*M(1,1)^1`, where `M(a,b)` names `1 + x^a (x+1)^b`
//!
//! The parser reads one grammar that covers all three, so any mix of them
//! (`x^2(x+1)*0x7`) is also accepted. Juxtaposition multiplies, as does `*`
//! or `·`.

use std::fmt::Write as _;

use thiserror::Error;

use super::Poly;
use crate::factor::factorize;
use crate::mersenne::{mersenne_pair_of, MersennePair};

/// Cap on the degree of any intermediate value while parsing.
const MAX_PARSE_DEGREE: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Algebraic,
    Hex,
    Product,
}

pub fn parse(text: &str) -> Result<Poly, ParseError> {
    let mut parser = Parser { chars: text.chars().collect(), pos: 0 };
    let value = parser.expr()?;
    match parser.peek() {
        None => Ok(value),
        Some(c) => Err(parser.error(format!("unexpected character '{c}'"))),
    }
}

pub fn format(p: &Poly, style: Style) -> String {
    match style {
        Style::Algebraic => p.to_string(),
        Style::Hex => p.to_hex(),
        Style::Product => format_product(p),
    }
}

fn format_product(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let factors = factorize(p).expect("nonzero input");
    if factors.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    for (i, (prime, mult)) in factors.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        if *prime == Poly::x() {
            out.push('x');
        } else if let Some(MersennePair { a, b }) = mersenne_pair_of(prime) {
            let _ = write!(out, "M({a},{b})");
        } else {
            let _ = write!(out, "({prime})");
        }
        let _ = write!(out, "^{mult}");
    }
    out
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            acc += &self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                }
                Some('x') | Some('(') | Some('M') => {}
                _ => break,
            }
            let start = self.pos;
            let rhs = self.power()?;
            if acc.degree().unwrap_or(0) + rhs.degree().unwrap_or(0) > MAX_PARSE_DEGREE {
                self.pos = start;
                return Err(self.error("product degree too large"));
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.uint()?;
        let d = base.degree().unwrap_or(0) as u128;
        if d * e as u128 > MAX_PARSE_DEGREE as u128 {
            return Err(self.error("exponent too large"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('M') => {
                self.pos += 1;
                self.expect('(')?;
                let a = self.uint()?;
                self.expect(',')?;
                let b = self.uint()?;
                self.expect(')')?;
                let pair = u32::try_from(a)
                    .ok()
                    .zip(u32::try_from(b).ok())
                    .and_then(|(a, b)| MersennePair::new(a, b).ok())
                    .ok_or_else(|| self.error("M(a,b) needs positive exponents"))?;
                Ok(pair.poly())
            }
            Some('0')
                if matches!(self.chars.get(self.pos + 1), Some('x') | Some('X'))
                    && self.chars.get(self.pos + 2).is_some_and(|c| c.is_ascii_hexdigit()) =>
            {
                self.pos += 2;
                self.hex()
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                match self.uint()? {
                    0 => Ok(Poly::zero()),
                    1 => Ok(Poly::one()),
                    _ => {
                        self.pos = start;
                        Err(self.error("coefficients must be 0 or 1"))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let _ = self.peek();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.error("integer overflow"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        Ok(value)
    }

    fn hex(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_hexdigit()) {
            self.pos += 1;
        }
        let digits = &self.chars[start..self.pos];
        if digits.len() * 4 > MAX_PARSE_DEGREE {
            return Err(self.error("hex literal too long"));
        }
        let mut words = vec![0u64; digits.len().div_ceil(16)];
        for (i, c) in digits.iter().rev().enumerate() {
            let nibble = c.to_digit(16).expect("hex digit") as u64;
            words[i / 16] |= nibble << (4 * (i % 16));
        }
        Ok(Poly::from_words(words))
    }
}
