//! Recursive-descent parser for the textual scalar grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' '-'? digits)?
//! atom  := digits | 'i' | 'a' | 'α' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::field::Scalar;
use super::gauss::GaussRat;
use super::ScalarError;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(format!("{} at position {} in {:?}", msg, self.pos, self.src))
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.try_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let digits = self.digits().ok_or_else(|| self.err("expected integer exponent"))?;
            let e: i32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        self.peek()?;
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(self.chars[start..self.pos].iter().collect())
        }
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('i') => {
                self.pos += 1;
                Ok(Scalar::i())
            }
            Some('a') | Some('α') => {
                self.pos += 1;
                Ok(Scalar::alpha())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Scalar::from_gauss(GaussRat::from_bigint(n)))
            }
            Some(c) => Err(self.err(&format!("unexpected character {:?}", c))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a scalar from the textual grammar, e.g. `(1+2*i - a^2)/(1-a)`.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0, src: s };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses a Gaussian rational (an α-free scalar).
pub fn parse_gauss(s: &str) -> Result<GaussRat, ScalarError> {
    parse_scalar(s)?
        .as_gauss()
        .ok_or_else(|| ScalarError::Parse(format!("{:?} depends on a", s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_scalar("-a^2").unwrap(), -(&Scalar::alpha() * &Scalar::alpha()));
        assert_eq!(parse_scalar("1/2*a").unwrap(), &Scalar::from_frac(1, 2) * &Scalar::alpha());
        assert_eq!(parse_scalar("2^-1").unwrap(), Scalar::from_frac(1, 2));
        assert_eq!(parse_scalar(" ( 1 + i ) ^ 2 ").unwrap(), &Scalar::from_int(2) * &Scalar::i());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_scalar("1/0"), Err(ScalarError::DivisionByZero)));
        assert!(matches!(parse_scalar("1+"), Err(ScalarError::Parse(_))));
        assert!(matches!(parse_scalar("x"), Err(ScalarError::Parse(_))));
        assert!(matches!(parse_scalar("(1"), Err(ScalarError::Parse(_))));
    }
}
