//! Outward-rounded interval arithmetic on dyadic numbers `m * 2^e` with a bounded
//! mantissa length. Used only as a filter in front of exact sign computations.

use crate::poly::{BivPoly, Rational, UniPoly, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    fn int(m: BigInt) -> Self {
        Dyadic { mant: m, exp: 0 }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        ((&a.mant) << (a.exp - e) as usize, (&b.mant) << (b.exp - e) as usize, e)
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, o);
        Dyadic { mant: a + b, exp: e }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic { mant: &self.mant * &o.mant, exp: self.exp + o.exp }
    }

    /// Rounds to at most `prec` mantissa bits, down or up.
    fn round(&self, prec: u32, up: bool) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let d = BigInt::one() << shift as usize;
        let m = if up { -((-&self.mant).div_floor(&d)) } else { self.mant.div_floor(&d) };
        Dyadic { mant: m, exp: self.exp + shift as i64 }
    }

    fn sign(&self) -> i8 {
        crate::ring::int_sign(&self.mant)
    }

    fn cmp(&self, o: &Dyadic) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, o);
        a.cmp(&b)
    }
}

/// A closed interval with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn point_int(c: &BigInt) -> Self {
        Interval { lo: Dyadic::int(c.clone()), hi: Dyadic::int(c.clone()) }
    }

    /// An interval containing `q`, with endpoints of about `prec` significant bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_integer() {
            return Interval::point_int(q.numer());
        }
        // scale so the quotient has about prec bits
        let k = prec as i64 + q.denom().bits() as i64 - q.numer().abs().bits() as i64;
        let k = k.max(0);
        let scaled = q.numer() << k as usize;
        let (fl, rem) = scaled.div_mod_floor(q.denom());
        let ce = if rem.is_zero() { fl.clone() } else { &fl + 1 };
        Interval { lo: Dyadic { mant: fl, exp: -k }, hi: Dyadic { mant: ce, exp: -k } }
    }

    pub fn hull(a: &Rational, b: &Rational, prec: u32) -> Self {
        let ia = Interval::from_rational(a, prec);
        let ib = Interval::from_rational(b, prec);
        Interval { lo: ia.lo, hi: ib.hi }
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Interval {
        Interval { lo: self.lo.add(&o.lo).round(prec, false), hi: self.hi.add(&o.hi).round(prec, true) }
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Interval {
        let ps = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let mut lo = &ps[0];
        let mut hi = &ps[0];
        for p in &ps[1..] {
            if p.cmp(lo) == Ordering::Less {
                lo = p;
            }
            if p.cmp(hi) == Ordering::Greater {
                hi = p;
            }
        }
        Interval { lo: lo.round(prec, false), hi: hi.round(prec, true) }
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.sign() > 0 {
            Some(1)
        } else if self.hi.sign() < 0 {
            Some(-1)
        } else {
            None
        }
    }
}

/// Horner evaluation of `p` over `x`.
pub fn eval_uni(p: &UniPoly, x: &Interval, prec: u32) -> Interval {
    let mut acc = Interval::point_int(&BigInt::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x, prec).add(&Interval::point_int(c), prec);
    }
    acc
}

/// Evaluation of `f` over the box `x * y`.
pub fn eval_biv(f: &BivPoly, x: &Interval, y: &Interval, prec: u32) -> Interval {
    let rec = f.to_rec(Var::Y);
    let mut acc = Interval::point_int(&BigInt::zero());
    for c in rec.coeffs().iter().rev() {
        acc = acc.mul(y, prec).add(&eval_uni(c, x, prec), prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn encloses_rationals() {
        for (n, d) in [(1, 3), (-7, 5), (22, 7), (-1, 1024), (123456789, 1000)] {
            let i = Interval::from_rational(&q(n, d), 53);
            assert!(i.sign() == Some(if n > 0 { 1 } else { -1 }));
            let lo = Rational::new(i.lo.mant.clone(), BigInt::one()) * crate::poly::pow2(i.lo.exp);
            let hi = Rational::new(i.hi.mant.clone(), BigInt::one()) * crate::poly::pow2(i.hi.exp);
            assert!(lo <= q(n, d) && q(n, d) <= hi);
        }
    }

    #[test]
    fn evaluation_decides_clear_signs() {
        let p = UniPoly::from_i64s(&[-3, 0, 1]);
        let x = Interval::hull(&q(1414, 1000), &q(1415, 1000), 53);
        assert_eq!(eval_uni(&p, &x, 53).sign(), Some(-1));
        let p = UniPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(eval_uni(&p, &x, 53).sign(), None);
    }
}
