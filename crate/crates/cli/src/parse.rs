//! Symbol expressions such as `z^3 - 1/2 z^5` or `2*z^-1 + 3`.
//!
//! ```text
//! expr  := term (('+'|'-') term)*
//! term  := coeff? '*'? 'z' ('^' int)? | coeff
//! coeff := int ('/' int)?
//! ```
//!
//! A sign may precede the first term and exponents may be negative.
//! Whitespace is ignored between tokens.

use std::fmt;

use hankelforge::{LaurentPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Zero-based character offset into the source text.
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolExpr {
    pub source: String,
    pub poly: LaurentPoly,
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.chars.get(self.pos) {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn digits(&mut self, what: &str) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, format!("expected {what}, found {}", self.describe()));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("ascii digits"))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits("integer")?;
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(num));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let den = self.digits("denominator")?;
        if den.is_zero() {
            return self.err(at, "zero denominator");
        }
        Ok(Rational::new(num, den))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let mut negative = false;
        if let Some(c @ ('-' | '+')) = self.peek() {
            negative = c == '-';
            self.pos += 1;
        }
        self.skip_ws();
        let at = self.pos;
        let mag = self.digits("integer exponent")?;
        let value = if negative { -mag } else { mag };
        i64::try_from(value).or_else(|_| self.err(at, "exponent out of range"))
    }

    /// One term, returned as `(exponent, coefficient)`.
    fn term(&mut self) -> Result<(i64, Rational), ParseError> {
        let c = match self.peek() {
            Some(d) if d.is_ascii_digit() => Some(self.coeff()?),
            Some('z') => None,
            _ => {
                return self.err(
                    self.pos,
                    format!("expected a term, found {}", self.describe()),
                )
            }
        };
        let mut star = false;
        if c.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            star = true;
        }
        if self.peek() != Some('z') {
            if star {
                return self.err(self.pos, format!("expected `z`, found {}", self.describe()));
            }
            return Ok((0, c.expect("constant term")));
        }
        self.pos += 1;
        let mut e = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            e = self.exponent()?;
        }
        Ok((e, c.unwrap_or_else(Rational::one)))
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        if self.peek().is_none() {
            return self.err(self.pos, "empty input");
        }
        let mut out = LaurentPoly::zero();
        let mut negative = false;
        if let Some(c @ ('-' | '+')) = self.peek() {
            negative = c == '-';
            self.pos += 1;
        }
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(c @ ('-' | '+')) => {
                    negative = c == '-';
                    self.pos += 1;
                }
                Some(other) => {
                    return self.err(self.pos, format!("unexpected `{other}`"));
                }
            }
        }
    }
}

pub fn parse_symbol(text: &str) -> Result<SymbolExpr, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let poly = p.expr()?;
    Ok(SymbolExpr {
        source: text.to_string(),
        poly,
    })
}
