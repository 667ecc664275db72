//! Text parser for bivariate integer polynomials.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')* power ('*'? power)*
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```

use super::biv::BivPoly;
use super::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: (&'a str, &'a str),
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: 1, column: self.pos + 1, message: message.into() }
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

    fn expr(&mut self) -> Result<BivPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivPoly, ParseError> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            match c {
                '+' => self.pos += 1,
                '-' => {
                    negate = !negate;
                    self.pos += 1
                }
                _ => break,
            }
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c.is_ascii_digit() || c.is_alphabetic() || c == '(' => {
                    acc = acc.mul(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn power(&mut self) -> Result<BivPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected a nonnegative integer exponent after '^'"));
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => {
                    self.pos = start;
                    return Err(self.err(format!("exponent too large (limit {MAX_EXPONENT})")));
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<BivPoly, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("digits parse");
                Ok(BivPoly::constant(v))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let rest: String = self.chars[self.pos..].iter().collect();
                // Longest matching variable name first so that e.g. `xy` splits as `x*y`.
                let (a, b) = self.vars;
                let mut cands = [(a, BivPoly::x()), (b, BivPoly::y())];
                cands.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
                for (name, p) in cands {
                    if rest.starts_with(name) {
                        self.pos += name.chars().count();
                        return Ok(p);
                    }
                }
                Err(self.err(format!("unknown variable '{c}' (expected '{a}' or '{b}')")))
            }
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
        }
    }
}

/// Parses `text` as a polynomial in the two named variables.
pub fn parse_poly(text: &str, vars: (&str, &str)) -> Result<BivPoly, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, vars };
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected character '{c}'")));
    }
    Ok(e)
}

/// Parses `n`, `n/d`, a decimal like `0.125`, or a power of two `2^-k`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let bad = |msg: &str| ParseError { line: 1, column: 1, message: format!("{msg}: '{t}'") };
    if let Some(rest) = t.strip_prefix("2^") {
        let k: i64 = rest.trim().parse().map_err(|_| bad("bad exponent"))?;
        return Ok(super::pow2(k));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((i, f)) = t.split_once('.') {
        let neg = i.trim_start().starts_with('-');
        let ip: BigInt = if i.is_empty() || i == "-" { BigInt::zero() } else { i.parse().map_err(|_| bad("bad number"))? };
        if f.is_empty() || !f.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad number"));
        }
        let fp: BigInt = f.parse().map_err(|_| bad("bad number"))?;
        let scale = num_traits::pow(BigInt::from(10), f.len());
        let frac = Rational::new(fp, scale);
        let whole = Rational::from_integer(ip);
        return Ok(if neg { whole - frac } else { whole + frac });
    }
    let n: BigInt = t.parse().map_err(|_| bad("bad number"))?;
    Ok(Rational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: &str) -> Result<BivPoly, ParseError> {
        parse_poly(s, ("x", "y"))
    }

    #[test]
    fn transcribes_terms() {
        let f = xy("x^2 + y^2 - 2").unwrap();
        let expect = BivPoly::from_terms([((2, 0), 1.into()), ((0, 2), 1.into()), ((0, 0), (-2).into())]);
        assert_eq!(f, expect);
    }

    #[test]
    fn implicit_products_and_parentheses() {
        assert_eq!(xy("2xy").unwrap(), xy("2*x*y").unwrap());
        assert_eq!(xy("(x - 1)^2").unwrap(), xy("x^2 - 2*x + 1").unwrap());
        assert_eq!(xy("-(x+y)").unwrap(), xy("-x - y").unwrap());
        assert_eq!(xy("- - x").unwrap(), xy("x").unwrap());
    }

    #[test]
    fn univariate_expression() {
        let f = xy("x^3 - 1").unwrap();
        assert_eq!(f.deg_y(), 0);
        assert_eq!(f.deg_x(), 3);
    }

    #[test]
    fn custom_variable_names() {
        let f = parse_poly("u^2 + 3*v", ("u", "v")).unwrap();
        assert_eq!(f, xy("x^2 + 3*y").unwrap());
    }

    #[test]
    fn error_positions() {
        let e = xy("x^2 + z").unwrap_err();
        assert_eq!(e.column, 7);
        let e = xy("x^ + 1").unwrap_err();
        assert_eq!(e.column, 4);
        let e = xy("(x + 1").unwrap_err();
        assert_eq!(e.column, 7);
        assert!(xy("   ").is_err());
        assert!(xy("x 1)").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("2^-16").unwrap(), Rational::new(1.into(), 65536.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
