use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rational};
use crate::{Error, Result};

impl Poly {
    /// Parses a polynomial expression over the given variable names.
    ///
    /// Accepts `+ - * ^`, parentheses, integer literals and division by an
    /// integer literal, e.g. `1/2*u - (X + Y)^2/3`.
    pub fn parse(text: &str, names: &[impl AsRef<str>]) -> Result<Poly> {
        let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            names: &names,
        };
        let f = p.sum()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidArgument(format!("{msg} at offset {}", self.pos))
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

    fn sum(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.product()?;
            if negate {
                acc -= &t;
            } else {
                acc += &t;
            }
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.error("division by zero"));
                }
                acc = acc.scale(&Rational::from_integer(d).recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(n, Rational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.names.iter().position(|&v| v == name) {
                    Some(i) => Ok(Poly::var(n, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable '{name}'")))
                    }
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_back() {
        let names = ["X", "Y", "Z"];
        let f = Poly::parse("X*Y - Z^2", &names).unwrap();
        assert_eq!(f.display(&names), "X*Y - Z^2");
        let g = Poly::parse("-(X + Y)^2/2 + 3", &names).unwrap();
        assert_eq!(Poly::parse(&g.display(&names), &names).unwrap(), g);
        assert_eq!(g.display(&names), "-1/2*X^2 - X*Y - 1/2*Y^2 + 3");
    }

    #[test]
    fn rejects_bad_input() {
        let names = ["X"];
        assert!(Poly::parse("X +", &names).is_err());
        assert!(Poly::parse("Q", &names).is_err());
        assert!(Poly::parse("X/0", &names).is_err());
        assert!(Poly::parse("X)", &names).is_err());
    }
}
