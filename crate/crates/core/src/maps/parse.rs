//! Recursive-descent parser for rational functions of `x`.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' uint)?
//! base   := 'x' | int | '(' expr ')'
//! ```

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::poly::PolyQ;

/// A rational function `num / den` before normalization.
#[derive(Clone, Debug)]
pub(crate) struct RatFun {
    pub num: PolyQ,
    pub den: PolyQ,
}

impl RatFun {
    fn constant(c: Rational) -> Self {
        RatFun { num: PolyQ::constant(c), den: PolyQ::one() }
    }

    fn add(&self, o: &RatFun) -> RatFun {
        RatFun {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    fn sub(&self, o: &RatFun) -> RatFun {
        RatFun {
            num: &(&self.num * &o.den) - &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    fn mul(&self, o: &RatFun) -> RatFun {
        RatFun { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(&self, o: &RatFun) -> Result<RatFun> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        Ok(RatFun { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    fn pow(&self, e: u32) -> RatFun {
        let mut out = RatFun::constant(Rational::from(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::SyntaxError { pos: self.pos, msg: msg.to_string() })
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

    fn digits(&mut self) -> Result<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn expr(&mut self) -> Result<RatFun> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = RatFun::constant(Rational::new()).sub(&acc);
        }
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

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.digits()?;
            match e.to_u32() {
                Some(e) if e <= 1000 => Ok(base.pow(e)),
                _ => self.err("exponent too large"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFun { num: PolyQ::x(), den: PolyQ::one() })
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFun::constant(Rational::from(self.digits()?))),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.err("expected `x`, an integer or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into an unreduced rational function.
pub(crate) fn parse_rational_function(text: &str) -> Result<RatFun> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let f = parse_rational_function("1 + 2*x^2 - x").unwrap();
        assert_eq!(f.num, PolyQ::from_ints(&[1, -1, 2]));
        let g = parse_rational_function("x/2/2").unwrap();
        assert_eq!(g.num, PolyQ::x());
        assert_eq!(g.den, PolyQ::from_ints(&[4]));
    }

    #[test]
    fn unary_minus_and_parens() {
        let f = parse_rational_function("-(x - 1)*3").unwrap();
        assert_eq!(f.num, PolyQ::from_ints(&[3, -3]));
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(
            parse_rational_function("x +"),
            Err(Error::SyntaxError { pos: 3, .. })
        ));
        assert!(matches!(
            parse_rational_function("x^y"),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_rational_function("(x"),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_rational_function("2x"),
            Err(Error::SyntaxError { .. })
        ));
    }

    #[test]
    fn division_by_zero_polynomial() {
        assert_eq!(
            parse_rational_function("x/(x-x)").unwrap_err(),
            Error::DivisionByZeroPolynomial
        );
    }
}
