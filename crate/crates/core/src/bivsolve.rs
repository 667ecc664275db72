//! Real solutions of bivariate systems `F = G = 0`: the grid, m_rur and g_rur solvers,
//! the shear search and intersection multiplicities.

use crate::algnum::{compare, sign_at_biv_i8, sign_at_i8, FilterConfig};
use crate::poly::{BivPoly, Poly, Rational, UniPoly, Var};
use crate::subres::{resultant_biv, specialize_main, subresultant_chain, SturmShape, SubresSeq};
use crate::uniroot::{intermediate_points, isolate, RealAlgNum};
use num_bigint::BigInt;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// One real solution: isolating intervals for both coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBox {
    pub alpha: RealAlgNum,
    pub beta: RealAlgNum,
    pub multiplicity: Option<u32>,
}

impl SolutionBox {
    pub fn new(alpha: RealAlgNum, beta: RealAlgNum) -> Self {
        SolutionBox { alpha, beta, multiplicity: None }
    }

    /// Both coordinates refined to at most `width`.
    pub fn refined(&self, width: &Rational) -> SolutionBox {
        SolutionBox {
            alpha: self.alpha.refine(width).expect("positive width"),
            beta: self.beta.refine(width).expect("positive width"),
            multiplicity: self.multiplicity,
        }
    }

    pub fn cmp_with(&self, o: &SolutionBox, cfg: &FilterConfig) -> Ordering {
        compare(&self.alpha, &o.alpha, cfg).then_with(|| compare(&self.beta, &o.beta, cfg))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solver {
    Grid,
    Mrur,
    Grur,
}

impl Solver {
    pub const ALL: [Solver; 3] = [Solver::Grid, Solver::Mrur, Solver::Grur];
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Grid => "grid",
            Solver::Mrur => "mrur",
            Solver::Grur => "grur",
        })
    }
}

impl FromStr for Solver {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grid" => Ok(Solver::Grid),
            "mrur" => Ok(Solver::Mrur),
            "grur" => Ok(Solver::Grur),
            _ => Err(format!("unknown solver '{s}' (expected grid, mrur or grur)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericityCondition {
    /// Two solutions share an abscissa.
    DistinctAbscissae,
    /// `lc_y(F)` and `lc_y(G)` have a common real root.
    LeadingCoefficients,
}

impl fmt::Display for GenericityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenericityCondition::DistinctAbscissae => "distinct solutions must have distinct x-coordinates",
            GenericityCondition::LeadingCoefficients => "leading coefficients in y must not vanish together at a real x",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BivError {
    #[error("input polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomials share a nonconstant common factor")]
    NotCoprime,
    #[error("system is not in generic position: {condition} ({detail})")]
    GenericityViolation { condition: GenericityCondition, detail: String },
    #[error("fiber gcd degree {k} exceeds the y-degree bound {bound}")]
    KExceedsBound { k: usize, bound: usize },
    #[error("no valid shear among the first {0} candidates")]
    NoShearFound(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Outcome of the shear search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearReport {
    pub t0: i64,
    pub sheared_f: BivPoly,
    pub sheared_g: BivPoly,
    pub tried: Vec<i64>,
}

/// Square-free resultant split by the index of the first nonvanishing principal
/// subresultant coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDecomposition {
    /// `(gamma, k)`: roots of `gamma` have `sr_0 = .. = sr_{k-1} = 0 != sr_k`.
    pub gammas: Vec<(UniPoly, usize)>,
    pub phi0: UniPoly,
    /// Roots where every principal coefficient vanishes, all of them roots of the lower
    /// polynomial's leading coefficient; their fibers are handled by truncation.
    pub defective: UniPoly,
}

impl KDecomposition {
    /// The `k` of a root of `phi0`, if it belongs to one of the factors.
    pub fn k_of(&self, alpha: &RealAlgNum, cfg: &FilterConfig) -> Option<usize> {
        self.gammas.iter().find(|(g, _)| sign_at_i8(g, alpha, cfg) == 0).map(|(_, k)| *k)
    }
}

/// Both resultants, checked for coprimality.
struct Projection {
    rx: UniPoly,
    ry: UniPoly,
}

fn project(f: &BivPoly, g: &BivPoly) -> Result<Projection, BivError> {
    if f.is_zero() || g.is_zero() {
        return Err(BivError::ZeroPolynomial);
    }
    let rx = resultant_biv(f, g, Var::Y).map_err(|e| BivError::Internal(e.to_string()))?;
    let ry = resultant_biv(f, g, Var::X).map_err(|e| BivError::Internal(e.to_string()))?;
    if rx.is_zero() || ry.is_zero() {
        return Err(BivError::NotCoprime);
    }
    Ok(Projection { rx, ry })
}

/// Classical chain in `y` of the pair ordered by decreasing `y`-degree.
struct Chain {
    high: Poly<UniPoly>,
    low: Poly<UniPoly>,
    entries: Vec<Poly<UniPoly>>,
}

impl Chain {
    fn new(f: Poly<UniPoly>, g: Poly<UniPoly>) -> Chain {
        let (high, low) = if f.deg() >= g.deg() { (f, g) } else { (g, f) };
        let entries = subresultant_chain(&high, &low);
        Chain { high, low, entries }
    }

    fn of(f: &BivPoly, g: &BivPoly) -> Chain {
        Chain::new(f.to_rec(Var::Y), g.to_rec(Var::Y))
    }

    fn principal(&self, j: usize) -> UniPoly {
        self.entries[j].coeff(j)
    }
}

/// Drops leading coefficients that vanish at `alpha`.
fn truncate_at(p: &Poly<UniPoly>, alpha: &RealAlgNum, cfg: &FilterConfig) -> Poly<UniPoly> {
    let mut n = p.coeffs().len();
    while n > 0 && sign_at_i8(&p.coeffs()[n - 1], alpha, cfg) == 0 {
        n -= 1;
    }
    p.truncate(n)
}

/// `(k, S)`: `S(alpha, y)` is a gcd of `F(alpha, y)` and `G(alpha, y)` of degree `k`.
fn fiber_gcd(chain: &Chain, alpha: &RealAlgNum, cfg: &FilterConfig) -> (usize, Poly<UniPoly>) {
    let high = truncate_at(&chain.high, alpha, cfg);
    let low = truncate_at(&chain.low, alpha, cfg);
    if low.is_zero() {
        return (high.deg().max(0) as usize, high);
    }
    if high.is_zero() {
        return (low.deg().max(0) as usize, low);
    }
    let local;
    let chain = if high.deg() == chain.high.deg() && low.deg() == chain.low.deg() {
        chain
    } else {
        local = Chain::new(high, low);
        &local
    };
    let q = chain.low.deg() as usize;
    for k in 0..=q {
        if sign_at_i8(&chain.principal(k), alpha, cfg) != 0 {
            return (k, chain.entries[k].clone());
        }
    }
    unreachable!("the lower polynomial keeps its leading coefficient at alpha")
}

/// `(k sr_k)^k S - sr_k (k sr_k y + sr_{k,k-1})^k`, zero exactly where `S` is a perfect
/// `k`-th power of a linear polynomial in `y`.
fn power_defect(s: &Poly<UniPoly>, k: usize) -> Poly<UniPoly> {
    let sr = s.coeff(k);
    let ksr = sr.scale(&BigInt::from(k));
    let lin = Poly::new(vec![s.coeff(k - 1), ksr.clone()]);
    s.scale(&ksr.pow(k as u32)).sub(&lin.pow(k as u32).scale(&sr))
}

fn decompose(chain: &Chain, rx: &UniPoly) -> Result<KDecomposition, BivError> {
    let phi0 = rx.squarefree_part();
    let bound = chain.low.deg().max(0) as usize;
    let mut gammas = Vec::new();
    let mut phi = phi0.clone();
    for j in 1..=bound {
        if phi.deg() <= 0 {
            break;
        }
        let next = phi.gcd(&chain.principal(j));
        let gamma = phi.exact_div(&next).ok_or_else(|| BivError::Internal("gcd does not divide".into()))?;
        if gamma.deg() > 0 {
            gammas.push((gamma.normalize(), j));
        }
        phi = next;
    }
    if phi.deg() > 0 && phi.gcd(&chain.low.lc()).deg() < phi.deg() {
        return Err(BivError::KExceedsBound { k: bound + 1, bound });
    }
    let defective = if phi.deg() > 0 { phi } else { UniPoly::constant(BigInt::from(1)) };
    Ok(KDecomposition { gammas, phi0, defective })
}

/// Splits the square-free part of `res_y(F, G)` by the `k` of its roots.
pub fn compute_k(f: &BivPoly, g: &BivPoly) -> Result<KDecomposition, BivError> {
    let proj = project(f, g)?;
    decompose(&Chain::of(f, g), &proj.rx)
}

/// All real solutions by validating every pair of projected roots.
pub fn solve_grid(f: &BivPoly, g: &BivPoly, cfg: &FilterConfig) -> Result<Vec<SolutionBox>, BivError> {
    let proj = project(f, g)?;
    let xs = isolate(&proj.rx).expect("nonzero").roots;
    let ys = isolate(&proj.ry).expect("nonzero").roots;
    let per_x: Vec<Vec<SolutionBox>> = xs
        .par_iter()
        .map(|a| {
            ys.iter()
                .filter(|b| sign_at_biv_i8(f, a, b, cfg) == 0 && sign_at_biv_i8(g, a, b, cfg) == 0)
                .map(|b| SolutionBox::new(a.clone(), b.clone()))
                .collect()
        })
        .collect();
    Ok(per_x.into_iter().flatten().collect())
}

/// Index `j` of the slot `(qs[j], qs[j+1])` containing `num(alpha) / den(alpha)`.
fn locate_ratio(num: &UniPoly, den: &UniPoly, alpha: &RealAlgNum, qs: &[Rational], cfg: &FilterConfig) -> Option<usize> {
    let den_sign = sign_at_i8(den, alpha, cfg);
    if den_sign == 0 {
        return None;
    }
    // sign(ratio - q) = sign(d*num - n*den) * sign(den)
    let above = |q: &Rational| {
        let b = num.scale(q.denom()).sub(&den.scale(q.numer()));
        sign_at_i8(&b, alpha, cfg) * den_sign
    };
    if above(&qs[0]) <= 0 || above(&qs[qs.len() - 1]) >= 0 {
        return None;
    }
    let (mut lo, mut hi) = (0, qs.len() - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if above(&qs[mid]) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Solutions through a rational parametrization `y = A1(x)/A2(x)` per root.
/// Requires generic position, which is verified.
pub fn solve_mrur(f: &BivPoly, g: &BivPoly, cfg: &FilterConfig) -> Result<Vec<SolutionBox>, BivError> {
    Ok(solve_mrur_rur(f, g, cfg)?.into_iter().map(|r| r.solution).collect())
}

/// A solution with its ordinate `numerator(alpha) / denominator(alpha)`.
#[derive(Clone, Debug)]
pub struct RurSolution {
    pub solution: SolutionBox,
    pub numerator: UniPoly,
    pub denominator: UniPoly,
}

/// [`solve_mrur`] keeping the rational parametrization of each ordinate.
pub fn solve_mrur_rur(f: &BivPoly, g: &BivPoly, cfg: &FilterConfig) -> Result<Vec<RurSolution>, BivError> {
    let proj = project(f, g)?;
    let common_lc = f.lc(Var::Y).gcd(&g.lc(Var::Y));
    if common_lc.deg() > 0 && !isolate(&common_lc).expect("nonzero").is_empty() {
        return Err(BivError::GenericityViolation {
            condition: GenericityCondition::LeadingCoefficients,
            detail: format!("gcd of leading coefficients {common_lc} has a real root"),
        });
    }
    let chain = Chain::of(f, g);
    let kdec = decompose(&chain, &proj.rx)?;
    let xs = isolate(&proj.rx).expect("nonzero").roots;
    let ys = isolate(&proj.ry).expect("nonzero");
    let qs = intermediate_points(&ys);
    let per_x: Vec<Result<Option<RurSolution>, BivError>> = xs
        .par_iter()
        .map(|a| {
            let lc_ok = sign_at_i8(&chain.high.lc(), a, cfg) != 0;
            let (k, s) = match kdec.k_of(a, cfg) {
                Some(k) if lc_ok => (k, chain.entries[k].clone()),
                _ => fiber_gcd(&chain, a, cfg),
            };
            if k == 0 {
                return Ok(None);
            }
            let defect = power_defect(&s, k);
            if defect.coeffs().iter().any(|c| sign_at_i8(c, a, cfg) != 0) {
                return Err(BivError::GenericityViolation {
                    condition: GenericityCondition::DistinctAbscissae,
                    detail: format!("several common roots above x in {}", a.interval_text()),
                });
            }
            let num = s.coeff(k - 1).neg();
            let den = s.coeff(k).scale(&BigInt::from(k));
            let j = locate_ratio(&num, &den, a, &qs, cfg)
                .ok_or_else(|| BivError::Internal(format!("ordinate above {} outside all slots", a.interval_text())))?;
            let solution = SolutionBox::new(a.clone(), ys.roots[j].clone());
            Ok(Some(RurSolution { solution, numerator: num, denominator: den }))
        })
        .collect();
    let mut out = Vec::new();
    for r in per_x {
        if let Some(b) = r? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Modified variation counts of the Sturm sequence of `H(alpha, y)` at each `q`.
fn fiber_variations(h: &Poly<UniPoly>, alpha: &RealAlgNum, qs: &[Rational], cfg: &FilterConfig) -> Vec<i64> {
    let seq = SubresSeq::new(h, &h.derivative()).expect("nonzero");
    let principal: Vec<i8> = (0..=seq.top()).map(|j| sign_at_i8(&seq.principal(j), alpha, cfg)).collect();
    let shape = SturmShape::new(seq.top(), |j| principal[j], |j, i| sign_at_i8(&seq.coeff(j, i), alpha, cfg));
    qs.iter()
        .map(|q| shape.var(|j| sign_at_i8(&specialize_main(seq.entry(j), q, j), alpha, cfg)) as i64)
        .collect()
}

/// Solutions by a gcd of the fibers over every projected root; no genericity needed.
pub fn solve_grur(f: &BivPoly, g: &BivPoly, cfg: &FilterConfig) -> Result<Vec<SolutionBox>, BivError> {
    let proj = project(f, g)?;
    let chain = Chain::of(f, g);
    let xs = isolate(&proj.rx).expect("nonzero").roots;
    let ys = isolate(&proj.ry).expect("nonzero");
    let qs = intermediate_points(&ys);
    let per_x: Vec<Result<Vec<SolutionBox>, BivError>> = xs
        .par_iter()
        .map(|a| {
            let (k, h) = fiber_gcd(&chain, a, cfg);
            if k == 0 || ys.is_empty() {
                return Ok(Vec::new());
            }
            if k == 1 {
                let j = locate_ratio(&h.coeff(0).neg(), &h.coeff(1), a, &qs, cfg)
                    .ok_or_else(|| BivError::Internal("linear fiber gcd root outside all slots".into()))?;
                return Ok(vec![SolutionBox::new(a.clone(), ys.roots[j].clone())]);
            }
            let vars = fiber_variations(&h, a, &qs, cfg);
            let mut out = Vec::new();
            for (j, w) in vars.windows(2).enumerate() {
                match w[0] - w[1] {
                    0 => {}
                    1 => out.push(SolutionBox::new(a.clone(), ys.roots[j].clone())),
                    n => return Err(BivError::Internal(format!("{n} fiber roots in one slot"))),
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_x {
        out.extend(r?);
    }
    Ok(out)
}

pub fn solve(f: &BivPoly, g: &BivPoly, solver: Solver, cfg: &FilterConfig) -> Result<Vec<SolutionBox>, BivError> {
    match solver {
        Solver::Grid => solve_grid(f, g, cfg),
        Solver::Mrur => solve_mrur(f, g, cfg),
        Solver::Grur => solve_grur(f, g, cfg),
    }
}

/// Whether every root of `R_x` has exactly one common root above it, tested exactly
/// modulo each factor of the `k` decomposition.
fn separates(chain: &Chain, kdec: &KDecomposition) -> bool {
    kdec.gammas.iter().all(|(gamma, k)| {
        power_defect(&chain.entries[*k], *k).coeffs().iter().all(|c| c.prem(gamma).0.is_zero())
    })
}

/// Smallest `t >= 0` such that `F(x + t y, y)` and `G(x + t y, y)` have constant leading
/// coefficients in `y` and distinct common roots (complex ones included) have distinct
/// abscissae.
pub fn choose_shear(f: &BivPoly, g: &BivPoly) -> Result<ShearReport, BivError> {
    project(f, g)?;
    let (nf, ng) = (f.total_degree(), g.total_degree());
    let limit = (64 + (nf * ng) * (nf * ng)) as usize;
    let mut tried = Vec::new();
    for t in 0..limit as i64 {
        let ft = f.shear(&BigInt::from(t));
        let gt = g.shear(&BigInt::from(t));
        if ft.deg_y() == nf && gt.deg_y() == ng {
            let rx = resultant_biv(&ft, &gt, Var::Y).map_err(|e| BivError::Internal(e.to_string()))?;
            let chain = Chain::of(&ft, &gt);
            let kdec = decompose(&chain, &rx)?;
            if separates(&chain, &kdec) {
                return Ok(ShearReport { t0: t, sheared_f: ft, sheared_g: gt, tried });
            }
        }
        tried.push(t);
    }
    Err(BivError::NoShearFound(limit))
}

/// `[lo_a - t hi_b, hi_a - t lo_b]` for `t >= 0`.
fn sheared_interval(s: &SolutionBox, t: &Rational) -> (Rational, Rational) {
    (s.alpha.lo() - t * s.beta.hi(), s.alpha.hi() - t * s.beta.lo())
}

fn overlaps(a: &(Rational, Rational), r: &RealAlgNum) -> bool {
    a.0 <= *r.hi() && *r.lo() <= a.1
}

/// Attaches intersection multiplicities: each solution is matched with a root of the
/// resultant of the sheared system, whose multiplicity it inherits.
pub fn with_multiplicities(f: &BivPoly, g: &BivPoly, solutions: &[SolutionBox]) -> Result<Vec<SolutionBox>, BivError> {
    let shear = choose_shear(f, g)?;
    let rt = resultant_biv(&shear.sheared_f, &shear.sheared_g, Var::Y).map_err(|e| BivError::Internal(e.to_string()))?;
    let roots = isolate(&rt).expect("nonzero");
    let mut rho = roots.roots.clone();
    let mut sols: Vec<SolutionBox> = solutions.to_vec();
    if sols.len() > rho.len() {
        return Err(BivError::Internal("more solutions than resultant roots".into()));
    }
    let t = Rational::from_integer(BigInt::from(shear.t0));
    let two = Rational::from_integer(BigInt::from(2));
    loop {
        let boxes: Vec<(Rational, Rational)> = sols.iter().map(|s| sheared_interval(s, &t)).collect();
        let hits: Vec<Vec<usize>> = boxes.iter().map(|b| (0..rho.len()).filter(|&j| overlaps(b, &rho[j])).collect()).collect();
        let unique = hits.iter().all(|h| h.len() == 1);
        let mut used: Vec<usize> = hits.iter().filter_map(|h| h.first().copied()).collect();
        used.sort_unstable();
        used.dedup();
        if unique && used.len() == sols.len() {
            let out = sols
                .iter()
                .zip(&hits)
                .zip(solutions)
                .map(|((_, h), orig)| SolutionBox { multiplicity: Some(roots.multiplicities[h[0]]), ..orig.clone() })
                .collect();
            return Ok(out);
        }
        if hits.iter().any(|h| h.is_empty()) {
            return Err(BivError::Internal("a solution matches no root of the sheared resultant".into()));
        }
        for (s, h) in sols.iter_mut().zip(&hits) {
            if h.len() > 1 || hits.iter().filter(|o| *o == h).count() > 1 {
                let w = if s.alpha.width() > s.beta.width() { s.alpha.width() } else { s.beta.width() };
                if w > Rational::from_integer(0.into()) {
                    *s = s.refined(&(w / &two));
                }
                for &j in h {
                    rho[j] = rho[j].bisect();
                }
            }
        }
    }
}

/// Equal as sets, coordinate by coordinate.
pub fn same_solutions(a: &[SolutionBox], b: &[SolutionBox], cfg: &FilterConfig) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.cmp_with(y, cfg) == Ordering::Equal)
}

/// Sorts lexicographically by `(alpha, beta)`.
pub fn sort_solutions(sols: &mut [SolutionBox], cfg: &FilterConfig) {
    sols.sort_by(|a, b| a.cmp_with(b, cfg));
}
