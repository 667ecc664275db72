//! Exact sign evaluation, comparison and fiber root counting at real algebraic numbers,
//! each guarded by an interval filter.

use crate::interval::{eval_biv, eval_uni, Interval};
use crate::poly::{pow2, BivPoly, Poly, Rational, UniPoly, Var};
use crate::ring::int_sign;
use crate::subres::{specialize_main, SturmShape, SubresSeq};
use crate::uniroot::{isolate, sign_at_exact, RealAlgNum};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("invalid precision ladder: {0}")]
    InvalidLadder(String),
    #[error("F(alpha, y) vanishes identically")]
    FiberVanishes,
    #[error("leading coefficient in y vanishes at alpha; shear the input or truncate the sequence")]
    LeadingCoefficientVanishes,
}

/// Interval filter settings: binary precisions tried in order before the exact path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterConfig {
    pub precision_ladder: Vec<u32>,
    pub enabled: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig { precision_ladder: vec![53, 128, 256], enabled: true }
    }
}

impl FilterConfig {
    pub fn new(precision_ladder: Vec<u32>, enabled: bool) -> Result<Self, AlgError> {
        if precision_ladder.iter().any(|&p| p < 24) {
            return Err(AlgError::InvalidLadder("precisions must be at least 24".into()));
        }
        if precision_ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgError::InvalidLadder("precisions must increase strictly".into()));
        }
        Ok(FilterConfig { precision_ladder, enabled })
    }

    pub fn disabled() -> Self {
        FilterConfig { enabled: false, ..FilterConfig::default() }
    }
}

/// Target isolating width used at a given precision.
fn width_for(prec: u32) -> Rational {
    pow2(-(prec as i64 / 4))
}

fn filter_uni(g: &UniPoly, a: &RealAlgNum, cfg: &FilterConfig) -> Option<i8> {
    if !cfg.enabled {
        return None;
    }
    let mut a = a.clone();
    for &prec in &cfg.precision_ladder {
        a = a.refine(&width_for(prec)).expect("positive width");
        if let Some(q) = a.as_rational() {
            return Some(g.sign_at_rational(q));
        }
        let x = Interval::hull(a.lo(), a.hi(), prec);
        if let Some(s) = eval_uni(g, &x, prec).sign() {
            return Some(s);
        }
    }
    None
}

fn filter_biv(f: &BivPoly, a: &RealAlgNum, b: &RealAlgNum, cfg: &FilterConfig) -> Option<i8> {
    if !cfg.enabled {
        return None;
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    for &prec in &cfg.precision_ladder {
        let w = width_for(prec);
        a = a.refine(&w).expect("positive width");
        b = b.refine(&w).expect("positive width");
        let x = Interval::hull(a.lo(), a.hi(), prec);
        let y = Interval::hull(b.lo(), b.hi(), prec);
        if let Some(s) = eval_biv(f, &x, &y, prec).sign() {
            return Some(s);
        }
    }
    None
}

pub(crate) fn sign_at_i8(g: &UniPoly, a: &RealAlgNum, cfg: &FilterConfig) -> i8 {
    if g.deg() <= 0 {
        return if g.is_zero() { 0 } else { int_sign(&g.lc()) };
    }
    if let Some(q) = a.as_rational() {
        return g.sign_at_rational(q);
    }
    if let Some(s) = filter_uni(g, a, cfg) {
        return s;
    }
    sign_at_exact(g, a)
}

/// Exact sign of `g(alpha)`.
pub fn sign_at(g: &UniPoly, alpha: &RealAlgNum, cfg: &FilterConfig) -> Sign {
    Sign::from_i8(sign_at_i8(g, alpha, cfg))
}

fn contains(outer: &RealAlgNum, a: &RealAlgNum) -> bool {
    a.cmp_rational(outer.lo()) != Ordering::Less && a.cmp_rational(outer.hi()) != Ordering::Greater
}

/// Exact order of two real algebraic numbers.
pub fn compare(alpha: &RealAlgNum, beta: &RealAlgNum, cfg: &FilterConfig) -> Ordering {
    if alpha.hi() < beta.lo() {
        return Ordering::Less;
    }
    if beta.hi() < alpha.lo() {
        return Ordering::Greater;
    }
    if let Some(q) = alpha.as_rational() {
        return beta.cmp_rational(q).reverse();
    }
    if let Some(q) = beta.as_rational() {
        return alpha.cmp_rational(q);
    }
    if alpha == beta {
        return Ordering::Equal;
    }
    // alpha equals beta iff alpha is a root of beta's polynomial inside beta's interval
    if sign_at_i8(beta.defining(), alpha, cfg) == 0 && contains(beta, alpha) {
        return Ordering::Equal;
    }
    let (mut a, mut b) = (alpha.clone(), beta.clone());
    loop {
        a = a.bisect();
        b = b.bisect();
        if a.hi() < b.lo() {
            return Ordering::Less;
        }
        if b.hi() < a.lo() {
            return Ordering::Greater;
        }
        if let Some(q) = a.as_rational() {
            return b.cmp_rational(q).reverse();
        }
        if let Some(q) = b.as_rational() {
            return a.cmp_rational(q);
        }
    }
}

/// Exact sign of `F(alpha, beta)`.
pub fn sign_at_biv(f: &BivPoly, alpha: &RealAlgNum, beta: &RealAlgNum, cfg: &FilterConfig) -> Sign {
    Sign::from_i8(sign_at_biv_i8(f, alpha, beta, cfg))
}

pub(crate) fn sign_at_biv_i8(f: &BivPoly, alpha: &RealAlgNum, beta: &RealAlgNum, cfg: &FilterConfig) -> i8 {
    if f.is_zero() {
        return 0;
    }
    if let Some(q) = alpha.as_rational() {
        return sign_at_i8(&f.specialize(Var::X, q), beta, cfg);
    }
    if let Some(q) = beta.as_rational() {
        return sign_at_i8(&f.specialize(Var::Y, q), alpha, cfg);
    }
    if let Some(s) = filter_biv(f, alpha, beta, cfg) {
        return s;
    }
    sign_at_biv_exact(f, alpha, beta, cfg)
}

/// Sturm query over `x` with coefficients in `Z[y]` whose signs are taken at `beta`.
fn sign_at_biv_exact(f: &BivPoly, alpha: &RealAlgNum, beta: &RealAlgNum, cfg: &FilterConfig) -> i8 {
    let defining: Poly<UniPoly> = alpha.defining().map(|c| UniPoly::constant(c.clone()));
    let seq = SubresSeq::new(&defining, &f.to_rec(Var::X)).expect("defining polynomial is nonzero");
    let shape = SturmShape::new(
        seq.top(),
        |j| sign_at_i8(&seq.principal(j), beta, cfg),
        |j, i| sign_at_i8(&seq.coeff(j, i), beta, cfg),
    );
    let at = |j: usize, x: &Rational| sign_at_i8(&specialize_main(seq.entry(j), x, j), beta, cfg);
    let d = shape.gcd_degree();
    if d > 0 && at(d, alpha.lo()) * at(d, alpha.hi()) < 0 {
        return 0;
    }
    let v_lo = shape.var(|j| at(j, alpha.lo())) as i64;
    let v_hi = shape.var(|j| at(j, alpha.hi())) as i64;
    let scale = int_sign(&seq.input_scale().lc()) as i64;
    let slope = alpha.defining().sign_at_rational(alpha.hi()) as i64;
    ((v_lo - v_hi) * scale * slope) as i8
}

/// Which roots of a fiber `F(alpha, y)` to count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberRange {
    All,
    AboveRational(Rational),
    AboveAlg(RealAlgNum),
}

/// Number of distinct real roots of `F(alpha, y)` in `range`.
pub fn count_fiber_roots(f: &BivPoly, alpha: &RealAlgNum, range: &FiberRange, cfg: &FilterConfig) -> Result<usize, AlgError> {
    if let Some(a) = alpha.as_rational() {
        let fiber = f.specialize(Var::X, a);
        if fiber.is_zero() {
            return Err(AlgError::FiberVanishes);
        }
        let roots = isolate(&fiber).expect("nonzero fiber");
        return Ok(match range {
            FiberRange::All => roots.len(),
            FiberRange::AboveRational(c) => roots.roots.iter().filter(|r| r.cmp_rational(c) == Ordering::Greater).count(),
            FiberRange::AboveAlg(b) => roots.roots.iter().filter(|r| compare(r, b, cfg) == Ordering::Greater).count(),
        });
    }
    if let FiberRange::AboveAlg(b) = range {
        if let Some(q) = b.as_rational() {
            return count_fiber_roots(f, alpha, &FiberRange::AboveRational(q.clone()), cfg);
        }
    }
    let sturm = FiberSturm::new(f, alpha, cfg)?;
    Ok(match range {
        FiberRange::All => sturm.count_all(),
        FiberRange::AboveRational(c) => sturm.count_above_rational(c),
        FiberRange::AboveAlg(b) => sturm.count_above_alg(b),
    })
}

/// The Sturm sequence of `F(alpha, y)`, prepared once for repeated counting on one fiber.
pub struct FiberSturm<'a> {
    seq: Option<SubresSeq<UniPoly>>,
    principal: Vec<i8>,
    shape: Option<SturmShape>,
    alpha: &'a RealAlgNum,
    cfg: &'a FilterConfig,
}

impl<'a> FiberSturm<'a> {
    /// Fails when the fiber vanishes or its leading coefficient does.
    pub fn new(f: &BivPoly, alpha: &'a RealAlgNum, cfg: &'a FilterConfig) -> Result<Self, AlgError> {
        let rec = f.to_rec(Var::Y);
        if rec.coeffs().iter().all(|c| sign_at_i8(c, alpha, cfg) == 0) {
            return Err(AlgError::FiberVanishes);
        }
        if sign_at_i8(&rec.lc(), alpha, cfg) == 0 {
            return Err(AlgError::LeadingCoefficientVanishes);
        }
        if f.deg_y() == 0 {
            return Ok(FiberSturm { seq: None, principal: Vec::new(), shape: None, alpha, cfg });
        }
        let seq = SubresSeq::bivariate(f, &f.derivative(Var::Y), Var::Y).expect("nonzero");
        let principal: Vec<i8> = (0..=seq.top()).map(|j| sign_at_i8(&seq.principal(j), alpha, cfg)).collect();
        let shape = SturmShape::new(seq.top(), |j| principal[j], |j, i| sign_at_i8(&seq.coeff(j, i), alpha, cfg));
        Ok(FiberSturm { seq: Some(seq), principal, shape: Some(shape), alpha, cfg })
    }

    fn at_infinity(&self, positive: bool) -> i64 {
        match &self.shape {
            Some(shape) => shape.var_at_infinity(positive, |j| self.principal[j]) as i64,
            None => 0,
        }
    }

    /// Distinct real roots of the fiber.
    pub fn count_all(&self) -> usize {
        (self.at_infinity(false) - self.at_infinity(true)).max(0) as usize
    }

    /// Roots strictly above a point, given `sign_of(e)`: the sign of a sequence entry
    /// (a polynomial in `y` over `Z[x]`) at that point. Zero values are resolved by
    /// derivatives in `y`, giving the sign just above the point.
    pub fn count_above_by(&self, mut sign_of: impl FnMut(&Poly<UniPoly>) -> i8) -> usize {
        let (Some(seq), Some(shape)) = (&self.seq, &self.shape) else { return 0 };
        let lower = shape.var(|j| {
            let mut e = seq.entry(j).clone();
            while !e.is_zero() {
                let s = sign_of(&e);
                if s != 0 {
                    return s;
                }
                e = e.derivative();
            }
            0
        }) as i64;
        (lower - self.at_infinity(true)).max(0) as usize
    }

    pub fn count_above_rational(&self, c: &Rational) -> usize {
        self.count_above_by(|e| sign_at_i8(&specialize_main(e, c, e.deg().max(0) as usize), self.alpha, self.cfg))
    }

    pub fn count_above_alg(&self, b: &RealAlgNum) -> usize {
        if let Some(c) = b.as_rational() {
            return self.count_above_rational(c);
        }
        self.count_above_by(|e| sign_at_biv_i8(&BivPoly::from_rec(Var::Y, e), self.alpha, b, self.cfg))
    }
}
