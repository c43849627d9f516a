//! Text grammar for polynomials and rationals.
//!
//! ```text
//! poly     := ws [sign] monomial (sign monomial)* ws | "0"
//! sign     := "+" | "-"
//! monomial := factor ("*" factor)*
//! factor   := rational | ident ["^" uint]
//! rational := uint ["/" uint]
//! ```
//!
//! Whitespace is allowed between tokens. Identifiers must appear in the
//! variable list the polynomial is parsed against.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Rational, Vars};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            input: self.src.to_string(),
            position: self.pos,
            message: message.into(),
        }
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok = if first { c.is_alphabetic() || c == '_' } else { c.is_alphanumeric() || c == '_' };
            if !ok {
                break;
            }
            first = false;
            self.pos += c.len_utf8();
        }
        (start != self.pos).then(|| &self.src[start..self.pos])
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

fn rational_literal(cur: &mut Cursor<'_>) -> Result<Rational, PolyError> {
    let num = cur.uint()?;
    if cur.eat('/') {
        let den = cur.uint()?;
        if den.is_zero() {
            return Err(cur.err("zero denominator"));
        }
        Ok(Rational::new(num, den))
    } else {
        Ok(Rational::from_integer(num))
    }
}

/// Parses a rational literal such as `-3/4`, `7` or `0`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let mut cur = Cursor::new(s);
    let neg = cur.eat('-');
    if !neg {
        cur.eat('+');
    }
    let r = rational_literal(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input after rational"));
    }
    Ok(if neg { -r } else { r })
}

fn monomial(cur: &mut Cursor<'_>, vars: &Vars) -> Result<(Monomial, Rational), PolyError> {
    let mut coef = Rational::one();
    let mut exps = vec![0u32; vars.len()];
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => coef *= rational_literal(cur)?,
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = cur.ident().expect("peeked identifier start");
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| cur.err(format!("unknown variable '{name}'")))?;
                let e = if cur.eat('^') {
                    let e = cur.uint()?;
                    u32::try_from(e).map_err(|_| cur.err("exponent too large"))?
                } else {
                    1
                };
                exps[idx] += e;
            }
            _ => return Err(cur.err("expected a number or a variable")),
        }
        if !cur.eat('*') {
            break;
        }
    }
    Ok((Monomial::from_exponents(exps), coef))
}

/// Parses a polynomial over the given variable list.
pub fn parse_polynomial(s: &str, vars: &Vars) -> Result<Polynomial, PolyError> {
    let mut cur = Cursor::new(s);
    let mut terms = Vec::new();
    let mut sign = if cur.eat('-') {
        -Rational::one()
    } else {
        cur.eat('+');
        Rational::one()
    };
    loop {
        let (m, c) = monomial(&mut cur, vars)?;
        terms.push((m, c * &sign));
        if cur.eat('+') {
            sign = Rational::one();
        } else if cur.eat('-') {
            sign = -Rational::one();
        } else {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(Polynomial::from_terms(vars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{q, vars_from};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn polynomials_with_rational_coefficients() {
        let v = vars_from(["q1", "q2", "p1", "p2"]);
        let p = parse_polynomial("q1*p2 - q2*p1", &v).unwrap();
        assert_eq!(p.num_terms(), 2);
        let r = parse_polynomial("1/2*q1^2 + 1/2 * q2^2 - 1/2", &v).unwrap();
        assert_eq!(r.constant_term(), q(-1, 2));
        assert_eq!(parse_polynomial("0", &v).unwrap(), Polynomial::zero(&v));
        assert_eq!(parse_polynomial("2*3*q1*q1", &v).unwrap(), parse_polynomial("6*q1^2", &v).unwrap());
    }

    #[test]
    fn errors_carry_position() {
        let v = vars_from(["x"]);
        match parse_polynomial("x + y", &v) {
            Err(PolyError::Parse { position, message, .. }) => {
                assert_eq!(position, 5);
                assert!(message.contains("'y'"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("x +", &v).is_err());
        assert!(parse_polynomial("x x", &v).is_err());
    }
}
