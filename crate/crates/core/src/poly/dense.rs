//! Dense univariate polynomials over a generic ring.

use crate::ring::Ring;
use std::fmt::Debug;

/// Dense polynomial, `coeffs[i]` is the coefficient of degree `i`.
/// Trailing zeros are always trimmed so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c * X^d`.
    pub fn monomial(c: R, d: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); d + 1];
        v[d] = c;
        Poly { coeffs: v }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    /// Keeps only the coefficients of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn exact_div_scalar(&self, c: &R) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.exact_div(c)?);
        }
        Some(Poly::new(out))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|a| a.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Poly::new(v)
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(R::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(b)^e * self = q*b + r` with `e = deg self - deg b + 1`
    /// and `deg r < deg b`. Returns `(r, e)`; when `deg self < deg b` it is `(self, 0)`.
    pub fn prem(&self, b: &Self) -> (Self, u32) {
        let (_, r, e) = self.pseudo_divrem(b);
        (r, e)
    }

    /// Pseudo-division returning `(q, r, e)` with `lc(b)^e * self = q*b + r`.
    pub fn pseudo_divrem(&self, b: &Self) -> (Self, Self, u32) {
        assert!(!b.is_zero(), "pseudo-division by the zero polynomial");
        let db = b.coeffs.len() - 1;
        if self.deg() < db as i64 {
            return (Poly::zero(), self.clone(), 0);
        }
        let e = (self.coeffs.len() - 1 - db + 1) as u32;
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); r.len() - db];
        // Each step multiplies the running remainder and quotient by lc(b).
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            for qc in q.iter_mut() {
                *qc = qc.mul(&lb);
            }
            q[k] = top.clone();
            for c in r.iter_mut().take(k + db) {
                *c = c.mul(&lb);
            }
            r[k + db] = R::zero();
            if !top.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate().take(db) {
                    r[k + i] = r[k + i].sub(&top.mul(bc));
                }
            }
        }
        r.truncate(db);
        (Poly::new(q), Poly::new(r), e)
    }

    /// Exact division; `None` when `o` does not divide `self` in `R[X]`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dn = self.coeffs.len() - 1;
        let dd = o.coeffs.len() - 1;
        if dn < dd {
            return None;
        }
        let lo = o.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); dn - dd + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].exact_div(&lo)?;
            if !c.is_zero() {
                for (i, oc) in o.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].sub(&c.mul(oc));
                }
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(q))
    }

    /// Evaluates at a ring element by Horner's rule.
    pub fn eval(&self, v: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add(c);
        }
        acc
    }

    /// Evaluates at a point `p` of a polynomial ring over `R` (composition).
    pub fn compose(&self, p: &Poly<R>) -> Poly<R> {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(p).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Poly::exact_div(self, other)
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
}
