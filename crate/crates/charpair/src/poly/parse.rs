//! Text format for polynomials.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := ['+' | '-'] term { ('+' | '-') term }
//! term   := factor { '*' factor }
//! factor := atom [ '^' natural ]
//! atom   := natural | variable | 'g' | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit. Over a rational coefficient ring a
//! natural may be followed by `/ natural` to form a fraction. Over an
//! extension field the reserved name `g` denotes the canonical generator
//! (it is only reserved when not shadowed by an actual variable).

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{FqElem, Ring, Scalar};
use crate::error::{Error, Result};

use super::{Polynomial, VarSet};

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarSet>,
    ring: &'a Ring,
}

pub fn parse_polynomial(text: &str, vars: &Arc<VarSet>, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        vars,
        ring,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.eat(b'+') {
        } else if self.eat(b'-') {
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.natural()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let scalar = if *self.ring == Ring::Rat && self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.natural()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Scalar::Rat(num_rational::BigRational::new(
                        BigInt::from(n),
                        BigInt::from(d),
                    ))
                } else {
                    self.ring.from_bigint(&BigInt::from(n))
                };
                Ok(Polynomial::constant(self.vars, self.ring, scalar))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.identifier();
                if let Some(i) = self.vars.index_of(&name) {
                    return Ok(Polynomial::var(self.vars, self.ring, i));
                }
                if name == "g" {
                    if let Ring::Fq(field) = self.ring {
                        let gen = FqElem::generator(field);
                        return Ok(Polynomial::constant(
                            self.vars,
                            self.ring,
                            Scalar::Fq(gen),
                        ));
                    }
                }
                self.pos -= name.len();
                Err(self.err(format!("unknown variable '{name}'")))
            }
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn natural(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse().map_err(|_| self.err("number out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;

    #[test]
    fn rational_literals_only_over_q() {
        let vars = VarSet::new(&["x"]);
        let f = Polynomial::parse("1/2*x+3", &vars, &Ring::Rat).unwrap();
        assert_eq!(f.to_string(), "1/2*x+3");
        // Over Z the slash is trailing garbage.
        assert!(Polynomial::parse("1/2*x", &vars, &Ring::Int).is_err());
    }

    #[test]
    fn generator_is_reserved_only_over_extensions() {
        let vars = VarSet::new(&["x"]);
        let f4 = Ring::Fq(FqField::new(2, 2).unwrap());
        let f = Polynomial::parse("g*x+g^2", &vars, &f4).unwrap();
        assert_eq!(f.to_string(), "g*x+(g+1)");
        assert!(Polynomial::parse("g*x", &vars, &Ring::Int).is_err());
        // A variable named g shadows the generator.
        let gvars = VarSet::new(&["g"]);
        let h = Polynomial::parse("g^2", &gvars, &f4).unwrap();
        assert_eq!(h.to_string(), "g^2");
    }

    #[test]
    fn nested_parentheses_and_signs() {
        let vars = VarSet::new(&["u", "v"]);
        let f = Polynomial::parse("-(u-(v-u))^2", &vars, &Ring::Int).unwrap();
        assert_eq!(f.to_string(), "-4*u^2+4*u*v-v^2");
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        let vars = VarSet::new(&["u", "v"]);
        assert!(Polynomial::parse("2u", &vars, &Ring::Int).is_err());
        assert!(Polynomial::parse("u v", &vars, &Ring::Int).is_err());
    }
}
