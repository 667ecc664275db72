//! Exact integer polynomials in one and two variables.

mod biv;
mod dense;
mod parse;
mod uni;

pub use biv::{BivPoly, Var};
pub use dense::Poly;
pub use parse::{parse_poly, parse_rational, ParseError};
pub use uni::{from_rational_coeffs, linear_for, UniPoly};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Prints a rational as `n` or `n/d`.
pub fn rational_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn monomial_text(vars: &[(&str, u32)]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

/// Joins signed terms `(coefficient, monomial)` already in output order.
pub(crate) fn terms_text(terms: &[(BigInt, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(m);
        } else {
            out.push_str(&format!("{a}*{m}"));
        }
    }
    out
}

/// `2^k` as a rational, `k` may be negative.
pub fn pow2(k: i64) -> Rational {
    let two = BigInt::from(2);
    if k >= 0 {
        Rational::from_integer(num_traits::pow(two, k as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(two, (-k) as usize))
    }
}

/// Smallest integer `>= q`.
pub fn ceil_rational(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn is_zero_rational(q: &Rational) -> bool {
    q.is_zero()
}
