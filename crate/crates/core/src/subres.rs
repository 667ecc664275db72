//! Signed subresultant sequences, resultants and Sturm-type sign variation counts.
//!
//! Sign convention. For `P` of degree `p >= 1` and `Q` with `deg Q < p` the entry
//! `SR_j` (`0 <= j <= p-2`) is `eps_{p-j}` times the determinant polynomial of the
//! matrix with rows `X^{p-2-j} P, .., P` followed by `X^{p-1-j} Q, .., Q`, where `Q`
//! is read with formal degree `p-1`, and
//! `eps_i = (-1)^{i(i-1)/2}`; `SR_p = P` and `SR_{p-1} = Q`. Entries indexed `j <= deg Q`
//! therefore carry a factor `lc(P)^{p-1-deg Q}` relative to the classical subresultants.
//! Because the definition only involves `P`, `Q` and the formal degree, it commutes with
//! any ring morphism that keeps `lc(P)` nonzero.
//!
//! When `deg g >= deg f` the sequence of `(f, g)` is taken to be that of
//! `(f, prem(g, f))`; `prem(g, f) = lc(f)^e g mod f`, so Cauchy indices pick up the sign
//! of `lc(f)^e`, which [`SubresSeq::input_scale`] records.

use crate::poly::{BivPoly, Poly, Rational, UniPoly, Var};
use crate::ring::Ring;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubresError {
    #[error("both polynomials are zero")]
    BothZero,
    #[error("the first polynomial is zero")]
    FirstZero,
    #[error("endpoint {0} is a root of the first polynomial")]
    EndpointRoot(String),
    #[error("empty interval: left endpoint is not below the right endpoint")]
    EmptyInterval,
}

fn eps(i: usize) -> bool {
    // true when eps_i = -1
    (i * (i.wrapping_sub(1)) / 2) % 2 == 1
}

/// Signed subresultant sequence of two polynomials over a ring `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubresSeq<R: Ring> {
    /// `entries[j] = SR_j` for `0 <= j <= p`.
    entries: Vec<Poly<R>>,
    /// The unscaled entries produced by the fraction-free recurrence, equal up to sign to
    /// the classical subresultants.
    raw: Vec<Poly<R>>,
    /// Factor `c` with `SR_{p-1} = c*g mod f` when `g` was reduced; one otherwise.
    input_scale: R,
    main_variable: Option<Var>,
}

impl<R: Ring> SubresSeq<R> {
    /// Sequence of `f` and `g`; `g` is reduced by pseudo-remainder when `deg g >= deg f`.
    pub fn new(f: &Poly<R>, g: &Poly<R>) -> Result<Self, SubresError> {
        if f.is_zero() && g.is_zero() {
            return Err(SubresError::BothZero);
        }
        if f.is_zero() {
            return Err(SubresError::FirstZero);
        }
        let (q, scale) = if g.deg() >= f.deg() {
            let (r, e) = g.prem(f);
            (r, f.lc().pow(e))
        } else {
            (g.clone(), R::one())
        };
        let (entries, raw) = signed_subresultants(f, &q);
        Ok(SubresSeq { entries, raw, input_scale: scale, main_variable: None })
    }

    /// Index of the first entry (`deg f`).
    pub fn top(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, j: usize) -> &Poly<R> {
        &self.entries[j]
    }

    /// `(j, SR_j)` in decreasing `j`.
    pub fn entries(&self) -> Vec<(usize, &Poly<R>)> {
        (0..self.entries.len()).rev().map(|j| (j, &self.entries[j])).collect()
    }

    /// `sr_j`, the coefficient of degree `j` in `SR_j`.
    pub fn principal(&self, j: usize) -> R {
        self.entries[j].coeff(j)
    }

    pub fn principal_coeffs(&self) -> Vec<R> {
        (0..self.entries.len()).rev().map(|j| self.principal(j)).collect()
    }

    /// `sr_{j,i}`, the coefficient of degree `i` in `SR_j`.
    pub fn coeff(&self, j: usize, i: usize) -> R {
        self.entries[j].coeff(i)
    }

    pub fn input_scale(&self) -> &R {
        &self.input_scale
    }

    pub fn main_variable(&self) -> Option<Var> {
        self.main_variable
    }

    /// Classical subresultant `j` up to sign (no `lc(f)` power).
    pub fn raw(&self, j: usize) -> &Poly<R> {
        &self.raw[j]
    }

    /// Last nonzero entry: the gcd of the inputs up to a factor in `R`.
    pub fn last_nonzero(&self) -> (usize, &Poly<R>) {
        for j in 0..self.entries.len() {
            if !self.entries[j].is_zero() {
                return (j, &self.entries[j]);
            }
        }
        unreachable!("the first entry is nonzero")
    }
}

impl SubresSeq<UniPoly> {
    /// Sequence of two bivariate polynomials with respect to `v`.
    pub fn bivariate(f: &BivPoly, g: &BivPoly, v: Var) -> Result<Self, SubresError> {
        let mut s = SubresSeq::new(&f.to_rec(v), &g.to_rec(v))?;
        s.main_variable = Some(v);
        Ok(s)
    }

    /// Each entry with the non-main variable set to `a`, scaled by a positive factor.
    pub fn eval_at(&self, a: &Rational) -> Vec<UniPoly> {
        self.entries.iter().rev().map(|e| specialize_coeffs(e, a)).collect()
    }

    /// Entry `j` as a bivariate polynomial.
    pub fn entry_biv(&self, j: usize) -> BivPoly {
        BivPoly::from_rec(self.main_variable.unwrap_or(Var::Y), &self.entries[j])
    }
}

/// Specializes every coefficient of a recursive polynomial at `a`, scaling by the positive
/// factor `denom(a)^d` with `d` the largest coefficient degree.
pub fn specialize_coeffs(p: &Poly<UniPoly>, a: &Rational) -> UniPoly {
    let d = p.coeffs().iter().map(|c| c.deg()).max().unwrap_or(0).max(0) as u32;
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                if c.is_zero() {
                    return BigInt::from(0);
                }
                let extra = d - c.deg() as u32;
                c.eval_homogeneous(a) * a.denom().pow(extra)
            })
            .collect(),
    )
}

/// Substitutes `a` for the main variable of a recursive polynomial of degree at most `d`,
/// scaled by `denom(a)^d`; the result is a polynomial in the coefficient variable.
pub fn specialize_main(p: &Poly<UniPoly>, a: &Rational, d: usize) -> UniPoly {
    let n = a.numer();
    let den = a.denom();
    let mut acc = UniPoly::zero();
    let mut dpow = BigInt::from(1);
    let top = p.coeffs().len();
    // Horner over the homogenized form.
    for k in 0..=d {
        let i = d - k;
        let c = if i < top { p.coeff(i) } else { UniPoly::zero() };
        acc = acc.scale(n).add(&c.scale(&dpow));
        dpow *= den;
    }
    acc
}

/// Signed subresultants of `P` (`deg P >= 1`) and `Q` (`deg Q < deg P`).
/// Returns `(formal, raw)` as in [`SubresSeq`].
fn signed_subresultants<R: Ring>(p_in: &Poly<R>, q_in: &Poly<R>) -> (Vec<Poly<R>>, Vec<Poly<R>>) {
    let p = p_in.degree().expect("nonzero");
    let mut s_ent: Vec<Poly<R>> = vec![Poly::zero(); p + 1];
    s_ent[p] = p_in.clone();
    if p == 0 {
        return (s_ent.clone(), s_ent);
    }
    s_ent[p - 1] = q_in.clone();
    if q_in.is_zero() {
        return (s_ent.clone(), s_ent);
    }
    let mut s: Vec<R> = vec![R::zero(); p + 1];
    let mut t: Vec<R> = vec![R::zero(); p + 1];
    s[p] = R::one();
    t[p] = R::one();
    t[p - 1] = q_in.lc();
    let mut i = p + 1;
    let mut j = p;
    loop {
        let prev = &s_ent[j - 1];
        if prev.is_zero() {
            break;
        }
        let k = prev.degree().unwrap();
        let num_scale;
        if k == j - 1 {
            s[j - 1] = t[j - 1].clone();
            if k == 0 {
                break;
            }
            num_scale = s[j - 1].mul(&s[j - 1]);
        } else {
            s[j - 1] = R::zero();
            for d in 1..=(j - k - 1) {
                let v = t[j - 1].mul(&t[j - d]).exact_div(&s[j]).expect("exact subresultant division");
                t[j - d - 1] = if d % 2 == 1 { v.neg() } else { v };
            }
            s[k] = t[k].clone();
            let scaled = s_ent[j - 1].scale(&s[k]).exact_div_scalar(&t[j - 1]).expect("exact subresultant division");
            s_ent[k] = scaled;
            for l in (k + 1)..=(j - 2) {
                s_ent[l] = Poly::zero();
                s[l] = R::zero();
            }
            if k == 0 {
                break;
            }
            num_scale = t[j - 1].mul(&s[k]);
        }
        // S_{k-1} = -Rem(num_scale * S_{i-1}, S_{j-1}) / (s_j t_{i-1}); Rem via prem.
        let divisor_poly = s_ent[j - 1].clone();
        let (r, e) = s_ent[i - 1].prem(&divisor_poly);
        let denom = divisor_poly.lc().pow(e).mul(&s[j]).mul(&t[i - 1]);
        let next = r.scale(&num_scale).neg().exact_div_scalar(&denom).expect("exact subresultant division");
        t[k - 1] = next.lc();
        s_ent[k - 1] = next;
        i = j;
        j = k;
    }
    let raw = s_ent.clone();
    let q = q_in.degree().unwrap();
    if q + 1 < p {
        let f = p_in.lc().pow((p - 1 - q) as u32);
        for e in s_ent.iter_mut().take(q + 1) {
            *e = e.scale(&f);
        }
    }
    (s_ent, raw)
}

/// Classical subresultant chain of `f` and `g` with `deg f >= deg g >= 0`, up to sign.
/// Entry `j < deg g` is `+-S_j(f, g)`; entry `deg g` is `g` itself.
pub fn subresultant_chain<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Poly<R>> {
    let p = f.degree().expect("nonzero");
    let q = g.degree().expect("nonzero");
    assert!(q <= p, "subresultant_chain expects deg f >= deg g");
    let mut out = vec![Poly::zero(); q + 1];
    out[q] = g.clone();
    if q == 0 {
        return out;
    }
    if q < p {
        let (_, raw) = signed_subresultants(f, g);
        out[..q].clone_from_slice(&raw[..q]);
        return out;
    }
    // Equal degrees: S_j(f, g) = S_j(f, g') / lc(f)^{deg g' - j} with g' = lc(f) g - lc(g) f.
    let (gp, _) = g.prem(f);
    if gp.is_zero() {
        return out;
    }
    let qp = gp.degree().unwrap();
    let (_, raw) = signed_subresultants(f, &gp);
    let lf = f.lc();
    for (jj, slot) in out.iter_mut().enumerate().take(q) {
        if jj > qp {
            continue;
        }
        let d = lf.pow((qp - jj) as u32);
        *slot = raw[jj].exact_div_scalar(&d).expect("exact subresultant division");
    }
    out
}

/// Resultant of `f` and `g` (Sylvester determinant with actual degrees).
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<R, SubresError> {
    if f.is_zero() && g.is_zero() {
        return Err(SubresError::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(R::zero());
    }
    let p = f.degree().unwrap();
    let q = g.degree().unwrap();
    if q == 0 {
        return Ok(g.lc().pow(p as u32));
    }
    if p == 0 {
        return Ok(f.lc().pow(q as u32));
    }
    if p < q {
        let r = resultant(g, f)?;
        return Ok(if (p * q) % 2 == 1 { r.neg() } else { r });
    }
    if p > q {
        let (_, raw) = signed_subresultants(f, g);
        let r = raw[0].coeff(0);
        return Ok(if eps(p) { r.neg() } else { r });
    }
    let (gp, _) = g.prem(f);
    if gp.is_zero() {
        return Ok(R::zero());
    }
    let qp = gp.degree().unwrap();
    let r = resultant(f, &gp)?;
    Ok(r.exact_div(&f.lc().pow(qp as u32)).expect("exact resultant division"))
}

/// Resultant of two bivariate polynomials with respect to `v`, a polynomial in the other variable.
pub fn resultant_biv(f: &BivPoly, g: &BivPoly, v: Var) -> Result<UniPoly, SubresError> {
    resultant(&f.to_rec(v), &g.to_rec(v))
}

/// Sign variations after deleting zeros.
pub fn var_count(signs: &[i8]) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// The part of the modified sign-variation rule that depends only on principal
/// coefficients: which indices are nondefective and the sign correction applied to each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmShape {
    /// Nondefective indices in decreasing order, starting with the top index.
    pub indices: Vec<usize>,
    /// Sign multiplier per nondefective index.
    pub factors: Vec<i8>,
}

impl SturmShape {
    /// `principal(j)` is the sign of `sr_j`; `coeff(j, i)` the sign of the degree-`i`
    /// coefficient of `SR_j` (only queried for `j` just below a nondefective index).
    pub fn new(top: usize, mut principal: impl FnMut(usize) -> i8, mut coeff: impl FnMut(usize, usize) -> i8) -> Self {
        let top_sign = principal(top);
        assert!(top_sign != 0, "leading coefficient of the first entry vanishes");
        let mut indices = vec![top];
        let mut prin = vec![top_sign];
        for j in (0..top).rev() {
            let s = principal(j);
            if s != 0 {
                indices.push(j);
                prin.push(s);
            }
        }
        let mut factors = vec![1i8];
        let mut c = 1i8;
        for w in 1..indices.len() {
            let (d0, d1) = (indices[w - 1], indices[w]);
            let gap = d0 - d1;
            let rel = if gap % 2 == 1 {
                if ((gap - 1) / 2) % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let t = coeff(d0 - 1, d1);
                let base = if (gap / 2) % 2 == 0 { 1 } else { -1 };
                base * prin[w - 1] * t
            };
            c *= rel;
            factors.push(c);
        }
        SturmShape { indices, factors }
    }

    /// Modified variation count given `value(j)`, the sign of `SR_j` at the point.
    pub fn var(&self, mut value: impl FnMut(usize) -> i8) -> usize {
        let signs: Vec<i8> = self.indices.iter().zip(&self.factors).map(|(&j, &c)| c * value(j)).collect();
        var_count(&signs)
    }

    /// Variation count at `+oo` (`positive`) or `-oo`, from the principal signs.
    pub fn var_at_infinity(&self, positive: bool, mut principal: impl FnMut(usize) -> i8) -> usize {
        self.var(|j| {
            let s = principal(j);
            if positive || j % 2 == 0 {
                s
            } else {
                -s
            }
        })
    }

    /// Index of the last nondefective entry, the degree of the gcd.
    pub fn gcd_degree(&self) -> usize {
        *self.indices.last().unwrap()
    }
}

/// An endpoint of a Sturm query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    At(Rational),
}

impl SubresSeq<BigInt> {
    pub fn shape(&self) -> SturmShape {
        SturmShape::new(self.top(), |j| crate::ring::int_sign(&self.principal(j)), |j, i| crate::ring::int_sign(&self.coeff(j, i)))
    }

    /// Modified variation count at an endpoint.
    pub fn var_at(&self, shape: &SturmShape, e: &Endpoint) -> usize {
        match e {
            Endpoint::NegInf => shape.var_at_infinity(false, |j| crate::ring::int_sign(&self.principal(j))),
            Endpoint::PosInf => shape.var_at_infinity(true, |j| crate::ring::int_sign(&self.principal(j))),
            Endpoint::At(a) => shape.var(|j| self.entries[j].sign_at_rational(a)),
        }
    }

    /// Variation count just right (`right = true`) or left of `a`.
    pub fn var_near(&self, shape: &SturmShape, a: &Rational, right: bool) -> usize {
        shape.var(|j| self.entries[j].sign_near_rational(a, right))
    }
}

/// `VAR(SR(f, g; a)) - VAR(SR(f, g; b))`, the Cauchy index of `g/f` on `(a, b)`.
/// With `g = f'` this counts the distinct real roots of `f` in `(a, b)`.
pub fn sturm_query(f: &UniPoly, g: &UniPoly, a: &Endpoint, b: &Endpoint) -> Result<i64, SubresError> {
    for e in [a, b] {
        if let Endpoint::At(v) = e {
            if f.sign_at_rational(v) == 0 {
                return Err(SubresError::EndpointRoot(crate::poly::rational_text(v)));
            }
        }
    }
    let ordered = match (a, b) {
        (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => false,
        (Endpoint::At(x), Endpoint::At(y)) => x < y,
        _ => true,
    };
    if !ordered {
        return Err(SubresError::EmptyInterval);
    }
    let seq = SubresSeq::new(f, g)?;
    if f.deg() == 0 {
        return Ok(0);
    }
    let shape = seq.shape();
    let d = seq.var_at(&shape, a) as i64 - seq.var_at(&shape, b) as i64;
    Ok(d * crate::ring::int_sign(seq.input_scale()) as i64)
}
