//! Recursive-descent parser for scalar expressions.
//!
//! Grammar: `+ - * /`, `^` (or `**`) with signed integer exponents,
//! parentheses, integer literals and the field variable. Juxtaposition
//! such as `2q` is read as multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FieldSpec, Scalar, ScalarError};

pub fn parse_scalar(text: &str, field: &FieldSpec) -> Result<Scalar, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldSpec,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn arith(&self, r: Result<Scalar, ScalarError>, at: usize) -> Result<Scalar, ScalarError> {
        r.map_err(|e| match e {
            ScalarError::DivisionByZero => ScalarError::Parse { position: at, message: "division by zero".into() },
            other => other,
        })
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.try_add(&rhs)? } else { acc.try_sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') if self.src.get(self.pos + 1) != Some(&b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.try_mul(&rhs)?;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.arith(acc.try_div(&rhs), at)?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    let rhs = self.power()?;
                    acc = acc.try_mul(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        let at = self.pos;
        let is_pow = match self.peek() {
            Some(b'^') => {
                self.pos += 1;
                true
            }
            Some(b'*') if self.src.get(self.pos + 1) == Some(&b'*') => {
                self.pos += 2;
                true
            }
            _ => false,
        };
        if !is_pow {
            return Ok(base);
        }
        let e = self.exponent()?;
        self.arith(base.pow(e), at)
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.exponent()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')' after exponent"));
            }
            self.pos += 1;
            return Ok(e);
        }
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let e: i64 = digits.parse().map_err(|_| ScalarError::Parse { position: start, message: "exponent too large".into() })?;
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(self.field.from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.field.var() {
                    Some(v) if v == name => self.field.generator(),
                    _ => Err(ScalarError::Parse {
                        position: start,
                        message: format!("unknown symbol '{name}' for field {}", self.field),
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        let f = FieldSpec::Rationals;
        assert_eq!(parse_scalar("-2^2", &f).unwrap(), f.from_int(-4));
        assert_eq!(parse_scalar("1 + 2*3", &f).unwrap(), f.from_int(7));
        assert_eq!(parse_scalar("2^-1 * 4", &f).unwrap(), f.from_int(2));
        assert_eq!(parse_scalar("(2)**(-2)*8", &f).unwrap(), f.from_int(2));
    }

    #[test]
    fn juxtaposition() {
        let f = FieldSpec::rational_function("q");
        assert_eq!(parse_scalar("2q", &f).unwrap(), parse_scalar("2*q", &f).unwrap());
        assert_eq!(parse_scalar("(q+1)(q-1)", &f).unwrap(), parse_scalar("q^2-1", &f).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let f = FieldSpec::rational_function("q");
        match parse_scalar("q + x", &f) {
            Err(ScalarError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_scalar("1/(q-q)", &f) {
            Err(ScalarError::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("q^", &f).is_err());
        assert!(parse_scalar("(q", &f).is_err());
        assert!(parse_scalar("q", &FieldSpec::Rationals).is_err());
    }
}
