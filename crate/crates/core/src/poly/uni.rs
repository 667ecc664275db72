//! Integer univariate polynomials: content, gcd, square-free parts and exact evaluation.

use super::dense::Poly;
use super::Rational;
use crate::ring::int_sign;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Univariate polynomial with integer coefficients.
pub type UniPoly = Poly<BigInt>;

impl Poly<BigInt> {
    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        self.exact_div_scalar(&c).expect("content divides")
    }

    /// Primitive part with a positive leading coefficient.
    pub fn normalize(&self) -> Self {
        let p = self.primitive_part();
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Monic-up-to-content gcd: primitive with positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalize();
        let mut b = other.normalize();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.prem(&b);
            a = b;
            b = r.normalize();
        }
        a
    }

    /// `f / gcd(f, f')`, normalized. Constants map to 1, zero to zero.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        if self.deg() <= 0 {
            return Poly::constant(BigInt::one());
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").normalize()
    }

    /// Square-free decomposition by repeated gcds. Returns `(a_1, .., a_m)` with
    /// `f = c * a_1 * a_2^2 * .. * a_m^m`, each `a_i` square-free, normalized,
    /// pairwise coprime; trailing constants dropped.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        // f = prod a_i^i; `prev` holds prod_{j >= i} a_j at step i.
        let mut w = self.normalize();
        let mut prev = w.squarefree_part();
        loop {
            let next_w = w.exact_div(&prev).expect("square-free part divides");
            let next_prev = if next_w.deg() <= 0 {
                Poly::constant(BigInt::one())
            } else {
                prev.gcd(&next_w)
            };
            out.push(prev.exact_div(&next_prev).expect("gcd divides").normalize());
            if next_w.deg() <= 0 {
                break;
            }
            w = next_w;
            prev = next_prev;
        }
        while out.last().is_some_and(|p| p.deg() <= 0) {
            out.pop();
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, a: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs().iter().rev() {
            acc = acc * a + Rational::from_integer(c.clone());
        }
        acc
    }

    /// `d^deg * f(n/d)` for `a = n/d` with `d > 0`; same sign as `f(a)`.
    pub fn eval_homogeneous(&self, a: &Rational) -> BigInt {
        let n = a.numer();
        let d = a.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Horner on the homogenized form: acc = acc*n + c_i * d^(deg-i)
        for c in self.coeffs().iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc
    }

    pub fn sign_at_rational(&self, a: &Rational) -> i8 {
        int_sign(&self.eval_homogeneous(a))
    }

    /// Sign of `f(a + eps)` for infinitesimal `eps > 0` (`right = true`) or `eps < 0`.
    pub fn sign_near_rational(&self, a: &Rational, right: bool) -> i8 {
        let mut p = self.clone();
        let mut k = 0u32;
        while !p.is_zero() {
            let s = p.sign_at_rational(a);
            if s != 0 {
                return if right || k.is_multiple_of(2) { s } else { -s };
            }
            p = p.derivative();
            k += 1;
        }
        0
    }

    /// Cauchy root bound `1 + max |c_i| / |lc|`; every complex root has modulus below it.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let n = self.coeffs().len();
        let m = self.coeffs().iter().take(n.saturating_sub(1)).map(|c| c.abs()).max().unwrap_or_default();
        Rational::one() + Rational::new(m, lc)
    }

    /// Maximum coefficient bit length.
    pub fn bitsize(&self) -> u64 {
        self.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Canonical text with the given variable name.
    pub fn to_text(&self, var: &str) -> String {
        let terms: Vec<(BigInt, String)> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), super::monomial_text(&[(var, i as u32)])))
            .collect();
        super::terms_text(&terms)
    }

    /// Substitutes `X -> X + c`.
    pub fn translate(&self, c: &BigInt) -> Self {
        self.compose(&Poly::new(vec![c.clone(), BigInt::one()]))
    }
}

/// Clears denominators of a rational polynomial: returns the primitive integer
/// polynomial with a positive multiple of the input.
pub fn from_rational_coeffs(cs: &[Rational]) -> UniPoly {
    let mut l = BigInt::one();
    for c in cs {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = cs.iter().map(|c| (c.numer() * &l) / c.denom()).collect();
    Poly::new(ints)
}

/// The integer polynomial `d*X - n` for the rational `n/d`.
pub fn linear_for(a: &Rational) -> UniPoly {
    Poly::new(vec![-a.numer().clone(), a.denom().clone()])
}

impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}
