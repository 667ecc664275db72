//! Checks shared by the integration tests and the acceptance harness. Each returns a
//! description of the first violation found.

use super::*;
use bisolve::algnum::{compare, sign_at_biv, FiberSturm, FilterConfig, Sign};
use bisolve::apps::{FiberCoord, FiberX, TopologyGraph, VertexKind};
use bisolve::bivsolve::SolutionBox;
use bisolve::poly::Var;
use bisolve::subres::resultant_biv;
use bisolve::uniroot::isolate;

pub type Check = Result<(), String>;

/// Both polynomials vanish at every solution, by exact sign evaluation and by box
/// evaluation never certifying a nonzero value.
pub fn check_valid(f: &BivPoly, g: &BivPoly, sols: &[SolutionBox], cfg: &FilterConfig, what: &str) -> Check {
    for s in sols {
        for (name, p) in [("F", f), ("G", g)] {
            if sign_at_biv(p, &s.alpha, &s.beta, cfg) != Sign::Zero {
                return Err(format!("{what}: {name} nonzero at x in {}", s.alpha.interval_text()));
            }
        }
        let a = (s.alpha.defining(), s.alpha.lo(), s.alpha.hi());
        let b = (s.beta.defining(), s.beta.lo(), s.beta.hi());
        if box_excludes(&[f, g], a, b, 64) {
            return Err(format!("{what}: box evaluation excludes the solution at x in {}", s.alpha.interval_text()));
        }
    }
    Ok(())
}

/// Every solution has its abscissa among the real roots of `res_y` and its ordinate among
/// the real roots of `res_x`; each such grid cell not returned must be certified empty by
/// interval evaluation down to width `2^-256`.
pub fn check_complete(f: &BivPoly, g: &BivPoly, sols: &[SolutionBox], cfg: &FilterConfig, what: &str) -> Check {
    let xs = isolate(&resultant_biv(f, g, Var::Y).unwrap()).unwrap().roots;
    let ys = isolate(&resultant_biv(f, g, Var::X).unwrap()).unwrap().roots;
    for a in &xs {
        for b in &ys {
            let returned = sols.iter().any(|s| compare(&s.alpha, a, cfg).is_eq() && compare(&s.beta, b, cfg).is_eq());
            if !returned && !box_excludes(&[f, g], (a.defining(), a.lo(), a.hi()), (b.defining(), b.lo(), b.hi()), 256) {
                return Err(format!("{what}: cell x in {} y in {} not excluded", a.interval_text(), b.interval_text()));
            }
        }
    }
    Ok(())
}

/// Brute-force isomorphism test against a small graph on `n` vertices.
pub fn isomorphic(a: &TopologyGraph, n: usize, edges: &[(usize, usize)]) -> bool {
    if a.vertices.len() != n || a.edges.len() != edges.len() {
        return false;
    }
    let mut target: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    target.sort_unstable();
    let mut perm: Vec<usize> = (0..n).collect();
    fn search(k: usize, perm: &mut Vec<usize>, a: &[(usize, usize)], target: &[(usize, usize)]) -> bool {
        if k == perm.len() {
            let mut mapped: Vec<(usize, usize)> =
                a.iter().map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
            mapped.sort_unstable();
            return mapped == target;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if search(k + 1, perm, a, target) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    search(0, &mut perm, &a.edges, &target)
}

/// Handshake, vertex counts on rational fibers against an independent Sturm count, degree
/// pattern of intermediate vertices, and the below/through/above split on critical fibers.
/// `f` is the curve in the frame of the graph (already sheared).
pub fn check_topology(f: &BivPoly, g: &TopologyGraph) -> Check {
    let cfg = FilterConfig::default();
    let degrees: Vec<usize> = (0..g.vertices.len()).map(|v| g.degree(v)).collect();
    if degrees.iter().sum::<usize>() != 2 * g.edges.len() {
        return Err(format!("{f}: handshake fails"));
    }
    let last = g.fibers.len().saturating_sub(1);
    for (i, fx) in g.fibers.iter().enumerate() {
        let on = g.vertices_on(i);
        match fx {
            FiberX::Rational(q) => {
                let expect = real_root_count(&f.specialize(Var::X, q));
                if on.len() as i64 != expect {
                    return Err(format!("{f}: fiber {i} has {} vertices, expected {expect}", on.len()));
                }
                for &v in &on {
                    let want = if i == 0 || i == last { 1 } else { 2 };
                    if g.vertices[v].kind != VertexKind::Intermediate || degrees[v] != want {
                        return Err(format!("{f}: intermediate vertex {v} has degree {}, expected {want}", degrees[v]));
                    }
                }
            }
            FiberX::Algebraic(alpha) => {
                let singular: Vec<usize> = on.iter().copied().filter(|&v| g.vertices[v].singular).collect();
                if singular.len() != 1 {
                    return Err(format!("{f}: critical fiber {i} has {} critical points", singular.len()));
                }
                let sturm = FiberSturm::new(f, alpha, &cfg).map_err(|e| e.to_string())?;
                let total = sturm.count_all();
                let FiberCoord::Exact(beta) = &g.vertices[singular[0]].y else {
                    return Err(format!("{f}: critical point without exact ordinate"));
                };
                let above = sturm.count_above_alg(beta);
                let below = on.iter().position(|&v| v == singular[0]).unwrap();
                if on.len() != total || above + below + 1 != total {
                    return Err(format!("{f}: fiber {i}: {} vertices, {below} below, {above} above, {total} total", on.len()));
                }
            }
        }
    }
    Ok(())
}
