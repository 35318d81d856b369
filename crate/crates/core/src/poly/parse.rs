//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := base ("^" nat)?
//! base     := rational | var | "(" expr ")" | "-" factor
//! rational := int ("/" nat)?
//! ```
//!
//! Whitespace is insignificant. Positions in errors are byte offsets.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PolyRing, Polynomial};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat(b'^') {
            match self.peek() {
                Some(b'-') => return Err(self.error("negative exponent")),
                Some(c) if c.is_ascii_digit() => {}
                _ => return Err(self.error("expected a natural-number exponent")),
            }
            let n = self.digits()?;
            if self.peek() == Some(b'.') {
                return Err(self.error("non-integer exponent"));
            }
            let exp: u32 = n
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let value = if self.eat(b'/') {
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.error("expected a natural-number denominator"));
                    }
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                if self.peek() == Some(b'.') {
                    return Err(self.error("decimal literals are not supported"));
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.ring.var(name)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{polynomial::rational, Monomial};

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn fermat_cubic_terms() {
        let r = ring();
        let f = r.parse("x^3 + y^3 + z^3").unwrap();
        let expected = Polynomial::from_terms(
            &r,
            (0..3).map(|i| (Monomial::var(3, i, 3), rational(1))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn rational_coefficients() {
        let r = ring();
        let p = r.parse("2*x*y - 1/2*z^2").unwrap();
        let coeffs: Vec<_> = p.terms().iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs, vec![rational(2), BigRational::new(BigInt::from(-1), BigInt::from(2))]);
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring();
        assert!(matches!(r.parse("x^-1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(r.parse("x^1.5"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse("x + w"), Err(Error::UnknownVariable(v)) if v == "w"));
        assert!(matches!(r.parse("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(r.parse("(x + y"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unary_minus_and_parentheses() {
        let r = ring();
        assert_eq!(r.parse("-x^2").unwrap(), -r.parse("x^2").unwrap());
        assert_eq!(
            r.parse("(x - y)^2").unwrap(),
            r.parse("x^2 - 2*x*y + y^2").unwrap()
        );
        assert_eq!(r.parse(" 3 * - x ").unwrap(), r.parse("-3*x").unwrap());
    }
}
