//! Parser for complex numbers and polynomials in `z`.
//!
//! Accepted forms: `0.5`, `-0.3+0.2i`, `2i`, `i`, `3*z^2 - (1+i)z + 0.5`,
//! `z^4`. A term is an optional coefficient (a real literal, an imaginary
//! literal ending in `i`, or a parenthesized complex number) followed by an
//! optional `z` or `z^k`, with an optional `*` in between.

use std::fmt;

use wco_core::{Complex64, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse {:?} at position {}: {}",
            self.input, self.pos, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.src.to_string(),
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<f64> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            let after_exp = self.pos > start && matches!(self.chars[self.pos - 1], 'e' | 'E');
            if c.is_ascii_digit() || c == '.' || matches!(c, 'e' | 'E') || (after_exp && matches!(c, '+' | '-')) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return None;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }

    /// A real or imaginary literal, or a parenthesized complex number.
    fn coefficient(&mut self) -> Result<Option<Complex64>, ParseError> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.sum(false)?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(Some(inner.first().copied().unwrap_or_default()));
        }
        if let Some(v) = self.number() {
            if self.eat('i') {
                return Ok(Some(Complex64::new(0.0, v)));
            }
            return Ok(Some(Complex64::new(v, 0.0)));
        }
        if self.eat('i') {
            return Ok(Some(Complex64::new(0.0, 1.0)));
        }
        Ok(None)
    }

    fn power(&mut self) -> Result<Option<usize>, ParseError> {
        if !self.eat('z') {
            return Ok(None);
        }
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            return text
                .parse()
                .map(Some)
                .map_err(|_| self.error("expected a non-negative integer exponent"));
        }
        Ok(Some(1))
    }

    fn term(&mut self, allow_z: bool) -> Result<(usize, Complex64), ParseError> {
        let coef = self.coefficient()?;
        let explicit_mul = self.eat('*');
        let power = if allow_z { self.power()? } else { None };
        match (coef, power) {
            (None, None) => Err(self.error("expected a number or z")),
            (Some(_), None) if explicit_mul => Err(self.error("expected z after '*'")),
            (c, p) => Ok((p.unwrap_or(0), c.unwrap_or(Complex64::new(1.0, 0.0)))),
        }
    }

    /// Signed sum of terms, returned as dense coefficients.
    fn sum(&mut self, allow_z: bool) -> Result<Vec<Complex64>, ParseError> {
        let mut coeffs: Vec<Complex64> = Vec::new();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1.0
            } else if self.eat('+') || first {
                1.0
            } else {
                break;
            };
            let (p, c) = self.term(allow_z)?;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, Complex64::default());
            }
            coeffs[p] += sign * c;
            first = false;
            self.skip_ws();
            if self.pos >= self.chars.len() || self.peek() == Some(')') {
                break;
            }
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::default());
        }
        Ok(coeffs)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }
}

pub fn parse_complex(src: &str) -> Result<Complex64, ParseError> {
    let mut p = Parser::new(src);
    let coeffs = p.sum(false)?;
    p.finish()?;
    Ok(coeffs[0])
}

/// Parses a polynomial and returns it as a series of order `max(order, degree)`.
pub fn parse_poly(src: &str, order: usize) -> Result<TruncatedSeries, ParseError> {
    let mut p = Parser::new(src);
    let mut coeffs = p.sum(true)?;
    p.finish()?;
    if coeffs.len() < order + 1 {
        coeffs.resize(order + 1, Complex64::default());
    }
    Ok(TruncatedSeries::new(coeffs).expect("at least one coefficient"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("-0.3+0.2i").unwrap(), c(-0.3, 0.2));
        assert_eq!(parse_complex("0.3 - 0.2i").unwrap(), c(0.3, -0.2));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("1e-3").unwrap(), c(1e-3, 0.0));
        assert_eq!(parse_complex("(1+2i)").unwrap(), c(1.0, 2.0));
    }

    #[test]
    fn complex_rejects_z() {
        assert!(parse_complex("z").is_err());
        assert!(parse_complex("0.5x").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("3*z^2 - (1+i)z + 0.5", 0).unwrap();
        assert_eq!(p.coeffs(), &[c(0.5, 0.0), c(-1.0, -1.0), c(3.0, 0.0)]);
        let q = parse_poly("z^3", 5).unwrap();
        assert_eq!(q.order(), 5);
        assert_eq!(q.coeff(3), c(1.0, 0.0));
        let r = parse_poly("z + z + 2iz", 1).unwrap();
        assert_eq!(r.coeff(1), c(2.0, 2.0));
    }

    #[test]
    fn polynomial_errors() {
        assert!(parse_poly("z^", 2).is_err());
        assert!(parse_poly("3*", 2).is_err());
        assert!(parse_poly("z^2 z", 2).is_err());
    }
}
