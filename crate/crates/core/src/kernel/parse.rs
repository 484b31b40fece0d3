//! Reader for rational-function text such as `(x1 - x2)/(12*x1*x2*(x1 + x2))`.
//!
//! Accepts the canonical output form and ordinary infix arithmetic with
//! `+ - * / ^`, parentheses, integer literals and variables `x1..x8`.

use alloc::format;
use alloc::string::{String, ToString};

use super::monomial::MAX_VARS;
use super::ratfun::RationalFunction;
use super::rational::Rational;
use crate::Error;

pub fn parse_ratfun(text: &str) -> Result<RationalFunction, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

pub(crate) struct Parser<'a> {
    pub(crate) src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
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

    pub(crate) fn uint(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// `x<n>` with `1 <= n <= MAX_VARS`; returns `n`.
    pub(crate) fn variable(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        let index = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok());
        match index {
            Some(n) if (1..=MAX_VARS).contains(&n) => Ok(n),
            _ => {
                self.pos = start;
                Err(Error::UnknownVariable(name))
            }
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<RationalFunction, Error> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?;
                acc = acc.div(&d).map_err(|_| Error::Syntax {
                    offset: at,
                    message: "division by zero".to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction, Error> {
        if self.eat(b'-') {
            return Ok(self.power()?.neg());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let digits = self.uint()?;
            let e: i32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| self.error("zero to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.uint()?;
                let r: Rational = digits.parse()?;
                Ok(RationalFunction::constant(r))
            }
            Some(c) if c.is_ascii_alphabetic() => Ok(RationalFunction::var(self.variable()?)),
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_text_round_trips() {
        for s in [
            "0",
            "1",
            "-1/2",
            "x1 + x2",
            "x1^2 - 2*x1*x2",
            "(1/12*x1 - 1/12*x2)/(x1^2*x2 + x1*x2^2)",
            "(-1/2)/(x1)",
        ] {
            let f = parse_ratfun(s).unwrap();
            assert_eq!(parse_ratfun(&f.to_string()).unwrap(), f, "{s}");
        }
        assert_eq!(parse_ratfun("(-1/2)/(x1)").unwrap().to_string(), "(-1/2)/(x1)");
    }

    #[test]
    fn infix_forms() {
        let f = parse_ratfun("(x1 - x2)/(12*x1*x2*(x1 + x2))").unwrap();
        assert_eq!(f.to_string(), "(1/12*x1 - 1/12*x2)/(x1^2*x2 + x1*x2^2)");
        assert_eq!(parse_ratfun("x1^-2").unwrap().to_string(), "(1)/(x1^2)");
        assert_eq!(parse_ratfun("-x1^2").unwrap().to_string(), "-x1^2");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_ratfun("x1 + @"),
            Err(Error::Syntax { offset: 5, message: "unexpected `@`".to_string() })
        );
        assert_eq!(parse_ratfun("y + 1"), Err(Error::UnknownVariable("y".to_string())));
        assert!(parse_ratfun("x9").is_err());
        assert!(parse_ratfun("1/(x1 - x1)").is_err());
    }
}
