//! Parser for the plain-text scalar grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'i' | 'p0' | 'p1' | 'p2' | 'p3' | 'mu' | '(' expr ')'
//! ```

use super::onshell::OnShellScalar;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().or_else(|_| self.err("integer too large"))
    }

    fn expr(&mut self) -> Result<OnShellScalar> {
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

    fn term(&mut self) -> Result<OnShellScalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = match acc.div(&d) {
                    Ok(v) => v,
                    Err(_) => return Err(Error::Parse { pos: at, msg: "division by zero".into() }),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<OnShellScalar> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<OnShellScalar> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if e > 64 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OnShellScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let n = i64::try_from(n).or_else(|_| self.err("integer too large"))?;
                Ok(OnShellScalar::from_i64(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"i" => Ok(OnShellScalar::i()),
                    b"p0" => Ok(OnShellScalar::p0()),
                    b"p1" => Ok(OnShellScalar::p(1)),
                    b"p2" => Ok(OnShellScalar::p(2)),
                    b"p3" => Ok(OnShellScalar::p(3)),
                    b"mu" => Ok(OnShellScalar::mu()),
                    other => {
                        self.pos = start;
                        self.err(format!("unknown symbol '{}'", String::from_utf8_lossy(other)))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a scalar such as `"(2*i*p1*p0 + mu^2)/(p1^2+p2^2+p3^2)"`.
pub fn parse_scalar(text: &str) -> Result<OnShellScalar> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

impl std::str::FromStr for OnShellScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let v = parse_scalar("(2*i*p1*p0 + mu^2)/(p1^2+p2^2+p3^2)").unwrap();
        let num = OnShellScalar::from_i64(2)
            .mul(&OnShellScalar::i())
            .mul(&OnShellScalar::p(1))
            .mul(&OnShellScalar::p0())
            .add(&OnShellScalar::mu().pow(2));
        let den = (1..=3).fold(OnShellScalar::zero(), |a, j| a.add(&OnShellScalar::p(j).pow(2)));
        assert_eq!(v, num.div(&den).unwrap());
    }

    #[test]
    fn render_round_trips() {
        for text in ["p1/p0", "1/(p0+mu)", "-3/2*i*p2 + mu", "(p1*p2 - mu)/(p3^2 + mu^2)^2", "p0^3"] {
            let v = parse_scalar(text).unwrap();
            let back = parse_scalar(&v.render()).unwrap();
            assert_eq!(v, back, "{} rendered as {}", text, v.render());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_scalar("p4"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("(p1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("p1 p2"), Err(Error::Parse { .. })));
    }
}
