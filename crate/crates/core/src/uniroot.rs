//! Real root isolation of integer polynomials by Sturm bisection on dyadic intervals.

use crate::poly::{linear_for, pow2, rational_text, Rational, UniPoly};
use crate::subres::{SturmShape, SubresSeq};
use crate::ring::int_sign;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("refinement width must be positive")]
    NonPositiveWidth,
}

/// A real algebraic number: the unique root of a square-free integer polynomial in an
/// interval `[lo, hi]`. Either `lo = hi` is a rational root, or the polynomial has
/// opposite nonzero signs at the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealAlgNum {
    defining: UniPoly,
    lo: Rational,
    hi: Rational,
    sign_lo: i8,
}

impl RealAlgNum {
    /// Root of `defining` in `[lo, hi]`. The caller guarantees the isolation property;
    /// it is checked in debug builds.
    pub fn new(defining: UniPoly, lo: Rational, hi: Rational) -> Self {
        let sign_lo = defining.sign_at_rational(&lo);
        debug_assert!(lo <= hi);
        debug_assert!(if lo == hi { sign_lo == 0 } else { sign_lo * defining.sign_at_rational(&hi) < 0 });
        RealAlgNum { defining, lo, hi, sign_lo }
    }

    /// The rational `q` as the root of `d*x - n`.
    pub fn rational(q: Rational) -> Self {
        RealAlgNum { defining: linear_for(&q), lo: q.clone(), hi: q, sign_lo: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        RealAlgNum::rational(Rational::from_integer(n.into()))
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Sign of the defining polynomial at the left endpoint (0 for point intervals).
    pub fn sign_lo(&self) -> i8 {
        self.sign_lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value when it is rational and already isolated as a point.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_point() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// One bisection step.
    pub fn bisect(&self) -> RealAlgNum {
        if self.is_point() {
            return self.clone();
        }
        let m = self.midpoint();
        let s = self.defining.sign_at_rational(&m);
        let mut out = self.clone();
        if s == 0 {
            out.lo = m.clone();
            out.hi = m;
            out.sign_lo = 0;
        } else if s == self.sign_lo {
            out.lo = m;
        } else {
            out.hi = m;
        }
        out
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&self, width: &Rational) -> Result<RealAlgNum, RootError> {
        if !width.is_positive() {
            return Err(RootError::NonPositiveWidth);
        }
        let mut a = self.clone();
        while a.width() > *width {
            a = a.bisect();
        }
        Ok(a)
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        let m = self.midpoint();
        m.numer().to_f64().unwrap_or(f64::NAN) / m.denom().to_f64().unwrap_or(f64::NAN)
    }

    /// Whether `q` lies in the closed isolating interval.
    pub fn interval_contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if q < &self.lo {
            return Ordering::Greater;
        }
        if q > &self.hi {
            return Ordering::Less;
        }
        if self.is_point() {
            return self.lo.cmp(q);
        }
        let s = self.defining.sign_at_rational(q);
        if s == 0 {
            // q is a root of the defining polynomial inside the isolating interval
            Ordering::Equal
        } else if s == self.sign_lo {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// `"[lo, hi]"` with exact rationals.
    pub fn interval_text(&self) -> String {
        format!("[{}, {}]", rational_text(&self.lo), rational_text(&self.hi))
    }
}

/// Distinct real roots of a polynomial in ascending order with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootList {
    pub roots: Vec<RealAlgNum>,
    pub multiplicities: Vec<u32>,
    /// Cauchy bound of the square-free part; every root lies strictly inside `(-bound, bound)`.
    pub bound: Rational,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sum of endpoint bit sizes, a diagnostic for the aggregate separation bound.
    pub fn endpoint_bits(&self) -> u64 {
        self.roots
            .iter()
            .map(|r| r.lo.numer().bits() + r.lo.denom().bits() + r.hi.numer().bits() + r.hi.denom().bits())
            .sum()
    }
}

/// Sturm machinery for a square-free polynomial: the sequence of `(f, f')`.
struct Counter {
    seq: SubresSeq<BigInt>,
    shape: SturmShape,
}

impl Counter {
    fn new(f: &UniPoly) -> Self {
        let seq = SubresSeq::new(f, &f.derivative()).expect("nonzero");
        let shape = seq.shape();
        Counter { seq, shape }
    }

    /// Number of distinct roots in the open interval `(a, b)`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        let va = self.seq.var_near(&self.shape, a, true);
        let vb = self.seq.var_near(&self.shape, b, false);
        va - vb
    }
}

/// Isolates the real roots of `f`.
pub fn isolate(f: &UniPoly) -> Result<RootList, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let fred = f.squarefree_part();
    let bound = fred.cauchy_bound();
    if fred.deg() <= 0 {
        return Ok(RootList { roots: Vec::new(), multiplicities: Vec::new(), bound });
    }
    let counter = Counter::new(&fred);
    let mut k = 0i64;
    while pow2(k) < bound {
        k += 1;
    }
    let b = pow2(k);
    let lo = -b.clone();
    let n = counter.count(&lo, &b);
    let mut roots = Vec::with_capacity(n);
    isolate_rec(&fred, &counter, lo, b, n, &mut roots);
    separate(&mut roots);

    let factors = f.squarefree_decomposition();
    let multiplicities = roots
        .iter()
        .map(|r| {
            let m = factors.iter().position(|a| vanishes_in(a, r)).expect("every root belongs to one factor");
            (m + 1) as u32
        })
        .collect();
    Ok(RootList { roots, multiplicities, bound })
}

/// Whether the square-free factor `a` vanishes at the isolated root `r`.
fn vanishes_in(a: &UniPoly, r: &RealAlgNum) -> bool {
    if a.deg() <= 0 {
        return false;
    }
    if r.is_point() {
        return a.sign_at_rational(&r.lo) == 0;
    }
    a.sign_at_rational(&r.lo) * a.sign_at_rational(&r.hi) < 0
}

fn isolate_rec(f: &UniPoly, c: &Counter, lo: Rational, hi: Rational, n: usize, out: &mut Vec<RealAlgNum>) {
    if n == 0 {
        return;
    }
    if n == 1 && &hi - &lo <= Rational::one() && f.sign_at_rational(&lo) != 0 && f.sign_at_rational(&hi) != 0 {
        out.push(RealAlgNum::new(f.clone(), lo, hi));
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    let left = c.count(&lo, &mid);
    let at_mid = f.sign_at_rational(&mid) == 0;
    let right = n - left - usize::from(at_mid);
    isolate_rec(f, c, lo, mid.clone(), left, out);
    if at_mid {
        out.push(RealAlgNum::new(f.clone(), mid.clone(), mid.clone()));
    }
    isolate_rec(f, c, mid, hi, right, out);
}

/// Refines neighbours until consecutive closed intervals are disjoint.
fn separate(roots: &mut [RealAlgNum]) {
    for i in 1..roots.len() {
        while roots[i - 1].hi >= roots[i].lo {
            if roots[i - 1].width() >= roots[i].width() {
                roots[i - 1] = roots[i - 1].bisect();
            } else {
                roots[i] = roots[i].bisect();
            }
        }
    }
}

/// Rationals `q_0 < r_1 < q_1 < .. < r_l < q_l` separating the roots: outer points at
/// `-+ceil(bound)`, inner points at the midpoints of the gaps between neighbouring intervals.
pub fn intermediate_points(roots: &RootList) -> Vec<Rational> {
    if roots.is_empty() {
        return vec![Rational::zero()];
    }
    let mut rs = roots.roots.clone();
    separate(&mut rs);
    let c = Rational::from_integer(roots.bound.ceil().to_integer());
    let mut out = vec![-c.clone()];
    for w in rs.windows(2) {
        out.push((&w[0].hi + &w[1].lo) / Rational::from_integer(2.into()));
    }
    out.push(c);
    out
}

/// Exact sign of `g` at a root of the square-free `a` isolated by `(lo, hi)`, using a
/// prepared sequence of `(a, g)`.
pub(crate) fn sign_with_sequence(seq: &SubresSeq<BigInt>, shape: &SturmShape, r: &RealAlgNum) -> i8 {
    if let Some(q) = r.as_rational() {
        // callers handle point roots directly; kept for completeness
        let top = seq.entry(seq.top());
        debug_assert_eq!(top.sign_at_rational(q), 0);
    }
    let d = shape.gcd_degree();
    if d > 0 {
        let n = seq.entry(d);
        if n.sign_at_rational(&r.lo) * n.sign_at_rational(&r.hi) < 0 {
            return 0;
        }
    }
    let va = seq.var_at(shape, &crate::subres::Endpoint::At(r.lo.clone())) as i64;
    let vb = seq.var_at(shape, &crate::subres::Endpoint::At(r.hi.clone())) as i64;
    let ind = (va - vb) * int_sign(seq.input_scale()) as i64;
    let slope = r.defining.sign_at_rational(&r.hi) as i64;
    (ind * slope) as i8
}

/// Exact sign of `g` at `r` without any filtering.
pub fn sign_at_exact(g: &UniPoly, r: &RealAlgNum) -> i8 {
    if g.is_zero() {
        return 0;
    }
    if g.deg() == 0 {
        return int_sign(&g.lc());
    }
    if let Some(q) = r.as_rational() {
        return g.sign_at_rational(q);
    }
    let seq = SubresSeq::new(&r.defining, g).expect("defining polynomial is nonzero");
    let shape = seq.shape();
    sign_with_sequence(&seq, &shape, r)
}

/// Sign of `g` at every real root of `f`, in ascending order, from one sequence of
/// `(squarefree(f), g)` evaluated at all isolating endpoints.
pub fn sign_over_all_roots(f: &UniPoly, g: &UniPoly) -> Result<Vec<i8>, RootError> {
    let roots = isolate(f)?;
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    if g.is_zero() {
        return Ok(vec![0; roots.len()]);
    }
    let fred = roots.roots[0].defining.clone();
    let seq = SubresSeq::new(&fred, g).expect("nonzero");
    let shape = seq.shape();
    Ok(roots
        .roots
        .iter()
        .map(|r| match r.as_rational() {
            Some(q) => g.sign_at_rational(q),
            None => sign_with_sequence(&seq, &shape, r),
        })
        .collect())
}

/// Cauchy bound helper exposed for callers that need `ceil(bound)` of a polynomial.
pub fn ceil_bound(f: &UniPoly) -> BigInt {
    f.squarefree_part().cauchy_bound().ceil().to_integer()
}
