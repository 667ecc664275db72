//! Minimal commutative ring abstraction used by the generic dense polynomial type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// An integral domain with exact division.
pub trait Ring: Clone + PartialEq + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` when the quotient exists in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Sign of an integer as -1, 0 or 1.
pub fn int_sign(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
