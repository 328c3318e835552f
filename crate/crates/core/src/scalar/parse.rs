//! Parsing of scalar literals such as `1/2 + 3*z^2` or `-z^-1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CycNumber;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Cursor<'a> {
    fn fail<T>(&self, reason: &str) -> Result<T> {
        Err(Error::ScalarParse { input: self.input.to_string(), reason: format!("{reason} at offset {}", self.pos) })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.integer().and_then(|b| i64::try_from(b).ok()) {
            Some(k) => Ok(if negative { -k } else { k }),
            None => self.fail("expected exponent"),
        }
    }

    /// One term without its sign: `c`, `c/d`, `z`, `z^k`, `c*z^k`, `c/d*z^k`.
    fn term(&mut self) -> Result<(BigRational, i64)> {
        let mut coeff = BigRational::one();
        let mut had_coeff = false;
        if let Some(n) = self.integer() {
            had_coeff = true;
            coeff = BigRational::from_integer(n);
            if self.peek() == Some('/') {
                self.pos += 1;
                match self.integer() {
                    Some(d) if !d.is_zero() => coeff = coeff / BigRational::from_integer(d),
                    _ => return self.fail("expected nonzero denominator"),
                }
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((coeff, 0));
            }
        }
        if self.peek() == Some('z') {
            self.pos += 1;
            let k = if self.peek() == Some('^') {
                self.pos += 1;
                self.signed_exponent()?
            } else {
                1
            };
            return Ok((coeff, k));
        }
        if had_coeff {
            self.fail("expected `z` after `*`")
        } else {
            self.fail("expected a number or `z`")
        }
    }
}

impl CycNumber {
    /// Parses a polynomial in `z` with rational coefficients as an element of Q(zeta_M).
    pub fn parse(modulus: u32, input: &str) -> Result<Self> {
        let mut cur = Cursor { chars: input.chars().collect(), pos: 0, input };
        let mut acc = CycNumber::zero(modulus);
        let mut first = true;
        loop {
            let sign = match cur.peek() {
                None if first => return cur.fail("empty scalar"),
                None => break,
                Some('+') if !first => {
                    cur.pos += 1;
                    1
                }
                Some('-') => {
                    cur.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return cur.fail("expected `+` or `-`"),
            };
            first = false;
            let (c, k) = cur.term()?;
            let c = if sign < 0 { -c } else { c };
            let term = &CycNumber::from_rational(modulus, &c) * &CycNumber::root_of_unity(modulus, k);
            acc = &acc + &term;
        }
        Ok(acc)
    }
}
