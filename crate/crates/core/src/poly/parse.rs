//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*'? factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! var    := 'x' uint
//! coeff  := int ('/' uint)?
//! ```
//!
//! Whitespace is ignored everywhere. A leading sign before the first term is
//! accepted as well, so every printed polynomial parses back.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{HomoPoly, Monomial, PolyError};
use crate::rational::Rational;

pub fn parse_poly(text: &str, num_vars: usize) -> Result<HomoPoly, PolyError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, num_vars, end: text.len() };
    let terms = p.poly()?;
    if p.pos < p.chars.len() {
        return Err(p.err("'+', '-', '*' or end of input"));
    }
    HomoPoly::from_terms(num_vars, terms)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    num_vars: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.end)
    }

    fn err(&self, expected: &str) -> PolyError {
        PolyError::SyntaxError { position: self.offset(), expected: expected.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Vec<(Monomial, Rational)>, PolyError> {
        let mut out = Vec::new();
        let mut sign = if self.eat('-') {
            -Rational::one()
        } else {
            self.eat('+');
            Rational::one()
        };
        loop {
            let (m, c) = self.term()?;
            out.push((m, c * &sign));
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = -Rational::one();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut mono = Monomial::one(self.num_vars);
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coeff()?;
                loop {
                    let star = self.eat('*');
                    if self.peek() == Some('x') {
                        mono = mono.mul(&self.factor()?);
                    } else if star {
                        return Err(self.err("variable 'x'"));
                    } else {
                        break;
                    }
                }
                Ok((mono, coeff))
            }
            Some('x') => {
                mono = mono.mul(&self.factor()?);
                while self.eat('*') {
                    mono = mono.mul(&self.factor()?);
                }
                Ok((mono, Rational::one()))
            }
            _ => Err(self.err("coefficient or variable")),
        }
    }

    fn factor(&mut self) -> Result<Monomial, PolyError> {
        let start = self.offset();
        if !self.eat('x') {
            return Err(self.err("variable 'x'"));
        }
        let idx = self.uint()?;
        let index: usize = idx
            .try_into()
            .map_err(|_| PolyError::VariableOutOfRange { index: usize::MAX, num_vars: self.num_vars })?;
        if index >= self.num_vars {
            return Err(PolyError::VariableOutOfRange { index, num_vars: self.num_vars });
        }
        let exp = if self.eat('^') {
            let e = self.uint()?;
            u32::try_from(e).map_err(|_| PolyError::SyntaxError {
                position: start,
                expected: "exponent below 2^32".into(),
            })?
        } else {
            1
        };
        Ok(Monomial::var(index, self.num_vars).pow(exp))
    }

    fn coeff(&mut self) -> Result<Rational, PolyError> {
        let num = self.digits()?;
        if self.eat('/') {
            let pos = self.offset();
            let den = self.digits()?;
            if den.is_zero() {
                return Err(PolyError::SyntaxError { position: pos, expected: "nonzero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn uint(&mut self) -> Result<u64, PolyError> {
        let pos = self.offset();
        let d = self.digits()?;
        u64::try_from(d).map_err(|_| PolyError::SyntaxError { position: pos, expected: "small integer".into() })
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("digit"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(BigInt::from_str(&s).expect("digits"))
    }
}
