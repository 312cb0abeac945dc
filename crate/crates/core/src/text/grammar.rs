//! Polynomial expressions: identifiers, integer and `p/q` literals,
//! `+ - * ^`, parentheses and unary minus. No implicit multiplication.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::polyring::{PolyRing, Polynomial};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(Error::parse(0, "empty expression"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::parse(p.pos, format!("unexpected character {:?}", p.src[p.pos] as char)));
    }
    Ok(f)
}

/// Comma-separated list of polynomials; empty text gives an empty list.
pub fn parse_polynomial_list(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                out.push(parse_at(&text[start..i], start, ring)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_at(&text[start..], start, ring)?);
    Ok(out)
}

fn parse_at(text: &str, base: usize, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    parse_polynomial(text, ring).map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse { position: position + base, message },
        other => other,
    })
}

pub fn print_polynomial(f: &Polynomial) -> String {
    f.to_string()
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
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
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            let msg = if self.peek() == Some(b'-') { "negative exponent" } else { "exponent must be a non-negative integer" };
            return Err(Error::parse(at, msg));
        }
        let e: u32 = digits.parse().map_err(|_| Error::parse(at, "exponent too large"))?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().map_err(|_| Error::parse(at, "malformed integer"))?;
                let mut q = BigRational::from_integer(num);
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let dat = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(Error::parse(dat, "malformed rational literal"));
                    }
                    let den: BigInt = den.parse().map_err(|_| Error::parse(dat, "malformed rational literal"))?;
                    if den == BigInt::from(0) {
                        return Err(Error::parse(dat, "zero denominator"));
                    }
                    q = BigRational::new(q.numer().clone(), den);
                } else {
                    self.pos = save;
                }
                let c = self.ring.field().from_rational(&q).map_err(|e| Error::parse(at, e.to_string()))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::parse(start, format!("unknown variable {name}"))),
                }
            }
            Some(c) => Err(Error::parse(at, format!("unexpected character {:?}", c as char))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let r = PolyRing::rational(&["x", "y"]);
        let f = parse_polynomial("(x - y)*(x + y)", &r).unwrap();
        assert_eq!(f.to_string(), "x^2 - y^2");
        let g = parse_polynomial("x^2 - x*y", &r).unwrap();
        assert_eq!(g.terms().len(), 2);
        assert_eq!(parse_polynomial("-3/6*x + 2", &r).unwrap().to_string(), "-1/2*x + 2");
    }

    #[test]
    fn rejects_negative_exponent_at_position() {
        let r = PolyRing::rational(&["x"]);
        assert_eq!(parse_polynomial("x^-1", &r), Err(Error::Parse { position: 2, message: "negative exponent".into() }));
        assert!(matches!(parse_polynomial("z", &r), Err(Error::Parse { position: 0, .. })));
        assert!(parse_polynomial("2x", &r).is_err());
        assert!(parse_polynomial("1/0", &r).is_err());
    }

    #[test]
    fn list_positions_are_absolute() {
        let r = PolyRing::rational(&["x", "y"]);
        let v = parse_polynomial_list("x, y^2, (x+y)*(x-y)", &r).unwrap();
        assert_eq!(v.len(), 3);
        assert!(matches!(parse_polynomial_list("x, q", &r), Err(Error::Parse { position: 3, .. })));
    }
}
