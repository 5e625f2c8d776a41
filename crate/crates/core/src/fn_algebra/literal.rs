//! The textual polynomial syntax: `"c*x^e + ..."`.
//!
//! Coefficients are integers (mapped into the prime subfield) or bracketed
//! coordinate tuples for extension-field constants, e.g. `"x^9"`,
//! `"2*x^6 + [0,1]*x^2"`, `"x^5 - x"`. The `*` between coefficient and `x`
//! is optional.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::poly::PolyFn;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: i64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn unsigned(&mut self) -> Result<u64> {
        let v = self.integer()?;
        if v < 0 {
            return self.err("exponent must be nonnegative");
        }
        Ok(v as u64)
    }

    fn coefficient(&mut self) -> Result<FieldElement> {
        if self.eat(b'[') {
            let mut coords = vec![self.integer()?];
            while self.eat(b',') {
                coords.push(self.integer()?);
            }
            if !self.eat(b']') {
                return self.err("expected ']'");
            }
            if coords.len() > self.field.r() as usize {
                return self.err(format!(
                    "{} coordinates for a degree-{} field",
                    coords.len(),
                    self.field.r()
                ));
            }
            self.field.from_coeffs(&coords)
        } else {
            Ok(self.field.from_int(self.integer()?))
        }
    }

    /// `x` optionally followed by `^e`; returns the exponent.
    fn power(&mut self) -> Result<u64> {
        if !self.eat(b'x') {
            return self.err("expected 'x'");
        }
        if self.eat(b'^') {
            self.unsigned()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(u64, FieldElement)> {
        match self.peek() {
            Some(b'x') => Ok((self.power()?, self.field.one())),
            Some(b'[') | Some(b'0'..=b'9') => {
                let c = self.coefficient()?;
                let star = self.eat(b'*');
                if star || self.peek() == Some(b'x') {
                    Ok((self.power()?, c))
                } else {
                    Ok((0, c))
                }
            }
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<PolyFn> {
        let mut terms = Vec::new();
        let mut negate = self.eat(b'-');
        loop {
            let (e, c) = self.term()?;
            terms.push((e, if negate { -c } else { c }));
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        PolyFn::from_terms(self.field, terms)
    }
}

impl PolyFn {
    /// Parses a polynomial literal over `field`.
    pub fn parse(field: &Field, src: &str) -> Result<PolyFn> {
        let mut parser = Parser {
            src: src.as_bytes(),
            pos: 0,
            field,
        };
        if parser.peek().is_none() {
            return parser.err("empty polynomial");
        }
        parser.expr()
    }
}

/// Prints in the literal syntax, highest exponent first.
impl fmt::Display for PolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (i, (e, c)) in terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let unit = c.index() == 1;
            match (e, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFn({self} over {})", self.field().spec())
    }
}
