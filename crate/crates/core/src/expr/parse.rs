//! Recursive-descent parser for the rational-function input language:
//!
//! ```text
//! expression := term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := base ('^' natural)?
//! base       := integer | variable | '(' expression ')'
//! ```
//!
//! A single top-level `/` separates numerator and denominator.

use super::{MultiPoly, RationalFunctionInput};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division is only allowed once, at top level (position {pos})")]
    NestedDivision { pos: usize },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("exponent at position {pos} does not fit in a machine word")]
    ExponentOverflow { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expression(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.syntax("expected a natural number after `^`"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| ParseError::ExponentOverflow { pos: start })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expression()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(e)
                    }
                    Some(b'/') => Err(ParseError::NestedDivision { pos: self.pos }),
                    _ => Err(self.syntax("expected `)`")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits parse as integer");
                Ok(MultiPoly::constant(self.vars, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, i)),
                    None => Err(ParseError::UnknownVariable { name, pos: start }),
                }
            }
            Some(b'/') => Err(ParseError::NestedDivision { pos: self.pos }),
            Some(_) => Err(self.syntax("expected an integer, a variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses a polynomial expression (no division).
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<MultiPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let e = p.expression()?;
    match p.peek() {
        None => Ok(e),
        Some(b'/') => Err(ParseError::NestedDivision { pos: p.pos }),
        Some(_) => Err(p.syntax("unexpected trailing input")),
    }
}

/// Parses `G/H` (or a bare polynomial `G`, meaning `G/1`), fully expanded.
/// The combinatorial flag is left unset.
pub fn parse_rational_function(text: &str, vars: &[String]) -> Result<RationalFunctionInput, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let numerator = p.expression()?;
    let denominator = match p.peek() {
        None => MultiPoly::one(vars),
        Some(b'/') => {
            p.pos += 1;
            let d = p.expression()?;
            match p.peek() {
                None => d,
                Some(b'/') => return Err(ParseError::NestedDivision { pos: p.pos }),
                Some(_) => return Err(p.syntax("unexpected trailing input")),
            }
        }
        Some(_) => return Err(p.syntax("unexpected trailing input")),
    };
    if denominator.is_zero() {
        return Err(ParseError::ZeroDenominator);
    }
    Ok(RationalFunctionInput {
        numerator,
        denominator,
        combinatorial_asserted: false,
    })
}
