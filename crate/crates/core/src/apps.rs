//! Applications of the solvers: sign conditions at the solutions of a system and the
//! topology graph of a plane curve.

use crate::algnum::{sign_at_biv_i8, sign_at_i8, AlgError, FiberSturm, FilterConfig};
use crate::bivsolve::{solve_grur, solve_mrur_rur, BivError, RurSolution, SolutionBox};
use crate::poly::{pow2, rational_text, BivPoly, Poly, Rational, UniPoly, Var};
use crate::subres::resultant_biv;
use crate::uniroot::{intermediate_points, isolate, RealAlgNum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Greater,
    Less,
    Equal,
}

impl Relation {
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Relation::Greater => sign > 0,
            Relation::Less => sign < 0,
            Relation::Equal => sign == 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Relation::Greater => '>',
            Relation::Less => '<',
            Relation::Equal => '=',
        }
    }

    pub fn from_symbol(c: char) -> Option<Relation> {
        match c {
            '>' => Some(Relation::Greater),
            '<' => Some(Relation::Less),
            '=' => Some(Relation::Equal),
            _ => None,
        }
    }
}

/// `polynomial (relation) 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCondition {
    pub polynomial: BivPoly,
    pub relation: Relation,
}

impl SignCondition {
    pub fn new(polynomial: BivPoly, relation: Relation) -> Option<SignCondition> {
        if polynomial.is_zero() {
            None
        } else {
            Some(SignCondition { polynomial, relation })
        }
    }
}

impl fmt::Display for SignCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.polynomial, self.relation.symbol())
    }
}

/// Solutions of `P = Q = 0` at which every condition holds.
pub fn simultaneous_inequalities(
    p: &BivPoly,
    q: &BivPoly,
    conditions: &[SignCondition],
    cfg: &FilterConfig,
) -> Result<Vec<SolutionBox>, BivError> {
    let sols = solve_grur(p, q, cfg)?;
    Ok(sols
        .into_iter()
        .filter(|s| {
            conditions
                .iter()
                .all(|c| c.relation.holds(sign_at_biv_i8(&c.polynomial, &s.alpha, &s.beta, cfg)))
        })
        .collect())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("curve contains the vertical line(s) {0} = 0")]
    VerticalLine(String),
    #[error("polynomial has a square factor; pass its square-free part")]
    SquareFactor,
    #[error("no shear puts the curve in generic position among the first {0} candidates")]
    NoShear(usize),
    #[error(transparent)]
    Solver(#[from] BivError),
    #[error("fiber computation failed: {0}")]
    Fiber(#[from] AlgError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// The x-value of a fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberX {
    Rational(Rational),
    Algebraic(RealAlgNum),
}

impl FiberX {
    pub fn approx(&self) -> f64 {
        match self {
            FiberX::Rational(q) => rational_f64(q),
            FiberX::Algebraic(a) => a.refine(&pow2(-24)).expect("positive width").approx(),
        }
    }

    pub fn text(&self) -> String {
        match self {
            FiberX::Rational(q) => rational_text(q),
            FiberX::Algebraic(a) => format!("root of {} in {}", a.defining(), a.interval_text()),
        }
    }
}

/// The ordinate of a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberCoord {
    Exact(RealAlgNum),
    /// The unique real root of the fiber in `(lo, hi]`.
    Isolated { lo: Rational, hi: Rational },
}

impl FiberCoord {
    pub fn approx(&self) -> f64 {
        match self {
            FiberCoord::Exact(a) => a.refine(&pow2(-24)).expect("positive width").approx(),
            FiberCoord::Isolated { lo, hi } => (rational_f64(lo) + rational_f64(hi)) / 2.0,
        }
    }
}

fn rational_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Critical,
    Intermediate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub fiber: usize,
    pub y: FiberCoord,
    pub kind: VertexKind,
    /// The point of `F = F_y = 0` on a critical fiber.
    pub singular: bool,
}

/// Combinatorial description of a curve: vertices on vertical fibers, edges along
/// monotone branches between adjacent fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub fibers: Vec<FiberX>,
    /// The shear `t` used: coordinates refer to `F(x + t y, y)`.
    pub shear: i64,
}

impl TopologyGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn vertices_on(&self, fiber: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].fiber == fiber).collect()
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            p[v] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
    }

    /// First Betti number: independent cycles.
    pub fn cycle_count(&self) -> usize {
        self.edges.len() + self.components() - self.vertices.len()
    }

    /// Graphviz text: one node per vertex with fiber index and approximate coordinates.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph topology {\n");
        if self.shear != 0 {
            let _ = writeln!(out, "  // coordinates after the shear x -> x + {} y", self.shear);
        }
        let xs: Vec<f64> = self.fibers.iter().map(FiberX::approx).collect();
        for (i, v) in self.vertices.iter().enumerate() {
            let kind = match v.kind {
                VertexKind::Critical => "critical",
                VertexKind::Intermediate => "intermediate",
            };
            let _ = writeln!(
                out,
                "  v{i} [fiber={}, kind=\"{kind}\", label=\"({:.4}, {:.4})\"{}];",
                v.fiber,
                xs[v.fiber],
                v.y.approx(),
                if v.singular { ", shape=box" } else { "" }
            );
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let fibers: Vec<Value> = self
            .fibers
            .iter()
            .enumerate()
            .map(|(i, f)| {
                json!({
                    "index": i,
                    "kind": if matches!(f, FiberX::Rational(_)) { "intermediate" } else { "critical" },
                    "x": f.text(),
                    "approx": format!("{:.4}", f.approx()),
                })
            })
            .collect();
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                json!({
                    "id": i,
                    "fiber": v.fiber,
                    "kind": if v.kind == VertexKind::Critical { "critical" } else { "intermediate" },
                    "singular": v.singular,
                    "y_approx": format!("{:.4}", v.y.approx()),
                })
            })
            .collect();
        let edges: Vec<Value> = self.edges.iter().map(|&(a, b)| json!([a, b])).collect();
        json!({ "shear": self.shear, "fibers": fibers, "vertices": vertices, "edges": edges })
    }
}

/// How branches above a critical point are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AboveMethod {
    /// Substitute the rational parametrization of the ordinate; univariate signs only.
    Rur,
    /// Bivariate sign evaluation at the critical point.
    Bivariate,
}

/// Topology graph of the real curve `F = 0`, counting above critical points with the
/// rational parametrization.
pub fn curve_topology(f: &BivPoly, cfg: &FilterConfig) -> Result<TopologyGraph, TopologyError> {
    curve_topology_with(f, cfg, AboveMethod::Rur)
}

/// Sign of `E(alpha, num(alpha)/den(alpha))` for `E` a polynomial in `y` over `Z[x]`.
fn sign_at_ratio(e: &Poly<UniPoly>, num: &UniPoly, den: &UniPoly, alpha: &RealAlgNum, cfg: &FilterConfig) -> i8 {
    let d = e.deg().max(0) as usize;
    let mut acc = UniPoly::zero();
    for (i, c) in e.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&c.mul(&num.pow(i as u32)).mul(&den.pow((d - i) as u32)));
        }
    }
    let s = sign_at_i8(&acc, alpha, cfg);
    let den_sign = sign_at_i8(den, alpha, cfg);
    if d % 2 == 1 {
        s * den_sign
    } else {
        s
    }
}

/// Isolates the `n` real roots of a fiber by counting; intervals `(lo, hi]` of width at
/// most `width`.
fn isolate_by_counting(above: &dyn Fn(&Rational) -> usize, n: usize, width: &Rational) -> Vec<(Rational, Rational)> {
    let mut k = 0i64;
    while above(&pow2(k)) != 0 || above(&-pow2(k)) != n {
        k += 1;
    }
    let mut out = Vec::with_capacity(n);
    let mut stack = vec![(-pow2(k), pow2(k), n)];
    // depth-first from the top keeps the output descending; reversed at the end
    while let Some((lo, hi, c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        if c == 1 && &hi - &lo <= *width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let upper = above(&mid) - above(&hi);
        stack.push((lo, mid.clone(), c - upper));
        stack.push((mid, hi, upper));
    }
    out.reverse();
    out
}

/// Which fibers are critical and how their points split around the critical point.
struct CriticalFiber {
    index: usize,
    below: usize,
    above: usize,
}

pub fn curve_topology_with(f: &BivPoly, cfg: &FilterConfig, method: AboveMethod) -> Result<TopologyGraph, TopologyError> {
    if f.is_zero() {
        return Err(TopologyError::ZeroPolynomial);
    }
    if f.total_degree() == 0 {
        return Ok(TopologyGraph { vertices: Vec::new(), edges: Vec::new(), fibers: Vec::new(), shear: 0 });
    }
    let content = f.content(Var::Y);
    if f.deg_y() == 0 || content.deg() > 0 {
        let lines = if f.deg_y() == 0 { f.to_rec(Var::Y).lc() } else { content };
        return Err(TopologyError::VerticalLine(lines.to_text("x")));
    }
    if resultant_biv(f, &f.derivative(Var::Y), Var::Y).map_err(|e| TopologyError::Internal(e.to_string()))?.is_zero() {
        return Err(TopologyError::SquareFactor);
    }
    let n = f.total_degree();
    let limit = (16 + n * n * n * n) as usize;
    let mut found = None;
    for t in 0..limit as i64 {
        let ft = f.shear(&BigInt::from(t));
        match solve_mrur_rur(&ft, &ft.derivative(Var::Y), cfg) {
            Ok(crit) => {
                found = Some((t, ft, crit));
                break;
            }
            Err(BivError::GenericityViolation { .. }) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    let (shear, ft, crit) = found.ok_or(TopologyError::NoShear(limit))?;
    build_graph(&ft, shear, crit, cfg, method)
}

fn build_graph(
    f: &BivPoly,
    shear: i64,
    crit: Vec<RurSolution>,
    cfg: &FilterConfig,
    method: AboveMethod,
) -> Result<TopologyGraph, TopologyError> {
    let mut fibers = Vec::new();
    if crit.is_empty() {
        fibers.push(FiberX::Rational(Rational::from_integer(BigInt::from(-1))));
        fibers.push(FiberX::Rational(Rational::from_integer(BigInt::from(1))));
    } else {
        let rx = resultant_biv(f, &f.derivative(Var::Y), Var::Y).map_err(|e| TopologyError::Internal(e.to_string()))?;
        let roots = isolate(&rx).expect("nonzero");
        if roots.len() != crit.len() {
            return Err(TopologyError::Internal("critical abscissae do not match the discriminant roots".into()));
        }
        let qs = intermediate_points(&roots);
        for (i, c) in crit.iter().enumerate() {
            fibers.push(FiberX::Rational(qs[i].clone()));
            fibers.push(FiberX::Algebraic(c.solution.alpha.clone()));
        }
        fibers.push(FiberX::Rational(qs[crit.len()].clone()));
    }

    let width = pow2(-16);
    let mut vertices = Vec::new();
    let mut criticals = Vec::new();
    let mut crit_iter = crit.iter();
    for (index, fx) in fibers.iter().enumerate() {
        match fx {
            FiberX::Rational(q) => {
                for r in isolate(&f.specialize(Var::X, q)).expect("nonzero fiber").roots {
                    vertices.push(Vertex { fiber: index, y: FiberCoord::Exact(r), kind: VertexKind::Intermediate, singular: false });
                }
            }
            FiberX::Algebraic(alpha) => {
                let c = crit_iter.next().expect("one critical point per critical fiber");
                let sturm = FiberSturm::new(f, alpha, cfg)?;
                let total = sturm.count_all();
                let above = match method {
                    AboveMethod::Rur => sturm.count_above_by(|e| sign_at_ratio(e, &c.numerator, &c.denominator, alpha, cfg)),
                    AboveMethod::Bivariate => sturm.count_above_alg(&c.solution.beta),
                };
                if above + 1 > total {
                    return Err(TopologyError::Internal("more branches above the critical point than on the fiber".into()));
                }
                let below = total - above - 1;
                let intervals = isolate_by_counting(&|y: &Rational| sturm.count_above_rational(y), total, &width);
                for (i, (lo, hi)) in intervals.into_iter().enumerate() {
                    let (y, singular) = if i == below {
                        (FiberCoord::Exact(c.solution.beta.clone()), true)
                    } else {
                        (FiberCoord::Isolated { lo, hi }, false)
                    };
                    vertices.push(Vertex { fiber: index, y, kind: VertexKind::Critical, singular });
                }
                criticals.push(CriticalFiber { index, below, above });
            }
        }
    }

    let on = |fiber: usize| -> Vec<usize> { (0..vertices.len()).filter(|&v| vertices[v].fiber == fiber).collect() };
    let mut edges = Vec::new();
    if criticals.is_empty() {
        let (a, b) = (on(0), on(1));
        if a.len() != b.len() {
            return Err(TopologyError::Internal("branch counts differ without critical points".into()));
        }
        edges.extend(a.into_iter().zip(b));
    }
    for c in &criticals {
        let here = on(c.index);
        for side in [c.index - 1, c.index + 1] {
            let there = on(side);
            let m = there.len();
            if m < c.below + c.above {
                return Err(TopologyError::Internal(format!("fiber {side} has too few branches")));
            }
            for (k, &v) in there.iter().enumerate() {
                let target = if k < c.below {
                    here[k]
                } else if k >= m - c.above {
                    here[c.below + 1 + (k - (m - c.above))]
                } else {
                    here[c.below]
                };
                edges.push((v.min(target), v.max(target)));
            }
        }
    }
    edges.sort_unstable();
    Ok(TopologyGraph { vertices, edges, fibers, shear })
}
