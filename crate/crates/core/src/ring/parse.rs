//! Recursive-descent parser for polynomial expressions such as
//! `taul*xil^3*xi4^2 - 1/2*(a + b)^2`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' digits)?`,
//! `atom := number | identifier | '(' expr ')'`. Division is only by constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Polynomial, RingError};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> RingError {
        RingError::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
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

    fn expr(&mut self) -> Result<Polynomial, RingError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, RingError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = constant_value(&d).filter(|c| !c.is_zero()).ok_or(RingError::Parse {
                    position: at,
                    message: "division only by nonzero constants".to_string(),
                })?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, RingError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, RingError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let e: u32 = digits.parse().map_err(|_| self.error("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial, RingError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Polynomial::from(n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                Ok(Polynomial::var(name))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<BigRational> {
    match p.len() {
        0 => Some(BigRational::zero()),
        1 => p.terms().next().filter(|(m, _)| m.is_empty()).map(|(_, c)| c.clone()),
        _ => None,
    }
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial, RingError> {
    let mut p = Parser { src: s, pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_expressions() {
        let q = parse_polynomial("-(a*c^2 + b^3)").unwrap();
        assert_eq!(q.len(), 2);
        let r = parse_polynomial("x/2 + x/2").unwrap();
        assert_eq!(r, Polynomial::var("x"));
        assert_eq!(parse_polynomial("2^3").unwrap(), Polynomial::from(BigInt::from(8)));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "x +", "(x", "x / y", "x ^ -1", "x $ y", "x y"] {
            assert!(parse_polynomial(bad).is_err(), "{bad}");
        }
    }
}
