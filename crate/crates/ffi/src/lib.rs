//! C ABI over `bisolve`.
//!
//! Every handle is an opaque pointer created by a `bs_*` constructor and released with the
//! matching `*_free`. Functions return a [`BsStatus`]; on failure
//! [`bs_last_error_message`] describes the error for the calling thread. Strings returned
//! through out-parameters are released with [`bs_string_free`].

use bisolve::algnum::FilterConfig;
use bisolve::apps::{curve_topology, TopologyError, TopologyGraph};
use bisolve::bivsolve::{solve, with_multiplicities, BivError, SolutionBox, Solver};
use bisolve::cli::solution_line;
use bisolve::poly::{parse_poly, pow2, BivPoly};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Parsed bivariate polynomial in `x` and `y`.
pub struct BsPoly(BivPoly);

/// Real solutions of a system, ordered by abscissa then ordinate.
pub struct BsSolutions(Vec<SolutionBox>);

/// Topology graph of a curve.
pub struct BsTopology(TopologyGraph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    ParseError = 1,
    /// A mathematical precondition failed (common factor, genericity, square factor).
    Precondition = 2,
    Internal = 3,
    NullPointer = 4,
    InvalidArgument = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsSolver {
    Grid = 0,
    Mrur = 1,
    Grur = 2,
}

impl From<BsSolver> for Solver {
    fn from(s: BsSolver) -> Solver {
        match s {
            BsSolver::Grid => Solver::Grid,
            BsSolver::Mrur => Solver::Mrur,
            BsSolver::Grur => Solver::Grur,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: BsStatus, message: impl Into<String>) -> BsStatus {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
    status
}

fn biv_status(e: &BivError) -> BsStatus {
    match e {
        BivError::ZeroPolynomial | BivError::NotCoprime | BivError::GenericityViolation { .. } => BsStatus::Precondition,
        _ => BsStatus::Internal,
    }
}

/// Runs `body`, turning panics into `Internal`.
fn guarded(body: impl FnOnce() -> BsStatus) -> BsStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(BsStatus::Internal, "internal panic"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> BsStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            BsStatus::Ok
        }
        Err(_) => fail(BsStatus::Internal, "string contains NUL"),
    }
}

/// Message for the last failed call on this thread; empty if none. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn bs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a polynomial such as `x^2 + y^2 - 1`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_parse(text: *const c_char, out: *mut *mut BsPoly) -> BsStatus {
    if text.is_null() || out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    guarded(|| {
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(BsStatus::ParseError, "input is not UTF-8");
        };
        match parse_poly(s, ("x", "y")) {
            Ok(p) => {
                put(out, BsPoly(p));
                BsStatus::Ok
            }
            Err(e) => fail(BsStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must come from [`bs_poly_parse`] and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_free(p: *mut BsPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of a polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_to_string(p: *const BsPoly, out: *mut *mut c_char) -> BsStatus {
    if p.is_null() || out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    guarded(|| put_string(out, (*p).0.to_string()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Real solutions of `f = g = 0`. With `with_multiplicity` each solution also carries its
/// intersection multiplicity.
///
/// # Safety
/// `f` and `g` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_solve(
    f: *const BsPoly,
    g: *const BsPoly,
    solver: BsSolver,
    use_filter: bool,
    with_multiplicity: bool,
    out: *mut *mut BsSolutions,
) -> BsStatus {
    if f.is_null() || g.is_null() || out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    guarded(|| {
        let cfg = if use_filter { FilterConfig::default() } else { FilterConfig::disabled() };
        let (f, g) = (&(*f).0, &(*g).0);
        let result = solve(f, g, solver.into(), &cfg).and_then(|s| if with_multiplicity { with_multiplicities(f, g, &s) } else { Ok(s) });
        match result {
            Ok(s) => {
                put(out, BsSolutions(s));
                BsStatus::Ok
            }
            Err(e) => fail(biv_status(&e), e.to_string()),
        }
    })
}

/// Number of solutions; 0 for null.
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bs_solutions_len(s: *const BsSolutions) -> usize {
    if s.is_null() {
        0
    } else {
        (*s).0.len()
    }
}

unsafe fn solution<'a>(s: *const BsSolutions, index: usize) -> Result<&'a SolutionBox, BsStatus> {
    if s.is_null() {
        return Err(fail(BsStatus::NullPointer, "null argument"));
    }
    let sols = &(*s).0;
    sols.get(index).ok_or_else(|| fail(BsStatus::InvalidArgument, format!("solution index {index} out of range")))
}

/// Floating-point approximation of solution `index`, accurate to about `2^-40`.
///
/// # Safety
/// `s` must be a live handle; `x` and `y` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bs_solution_approx(s: *const BsSolutions, index: usize, x: *mut f64, y: *mut f64) -> BsStatus {
    if x.is_null() || y.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    let sol = match solution(s, index) {
        Ok(b) => b,
        Err(st) => return st,
    };
    guarded(|| {
        let r = sol.refined(&pow2(-40));
        *x = r.alpha.approx();
        *y = r.beta.approx();
        BsStatus::Ok
    })
}

/// Intersection multiplicity of solution `index`; `InvalidArgument` when the solutions were
/// computed without multiplicities.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_solution_multiplicity(s: *const BsSolutions, index: usize, out: *mut u32) -> BsStatus {
    if out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    match solution(s, index) {
        Ok(b) => match b.multiplicity {
            Some(m) => {
                *out = m;
                BsStatus::Ok
            }
            None => fail(BsStatus::InvalidArgument, "multiplicities were not computed"),
        },
        Err(st) => st,
    }
}

/// Text line `root: x in [a, b] by ...; y in [c, d] by ...` with intervals of width at
/// most `2^-width_log2`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_solution_to_string(
    s: *const BsSolutions,
    index: usize,
    width_log2: u32,
    out: *mut *mut c_char,
) -> BsStatus {
    if out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    let sol = match solution(s, index) {
        Ok(b) => b,
        Err(st) => return st,
    };
    guarded(|| put_string(out, solution_line(&sol.refined(&pow2(-i64::from(width_log2))))))
}

/// # Safety
/// `s` must come from [`bs_solve`] and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_solutions_free(s: *mut BsSolutions) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Topology graph of the curve `f = 0`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_topology(f: *const BsPoly, out: *mut *mut BsTopology) -> BsStatus {
    if f.is_null() || out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    guarded(|| match curve_topology(&(*f).0, &FilterConfig::default()) {
        Ok(g) => {
            put(out, BsTopology(g));
            BsStatus::Ok
        }
        Err(TopologyError::Solver(e)) => fail(biv_status(&e), e.to_string()),
        Err(e @ (TopologyError::ZeroPolynomial | TopologyError::VerticalLine(_) | TopologyError::SquareFactor)) => {
            fail(BsStatus::Precondition, e.to_string())
        }
        Err(e) => fail(BsStatus::Internal, e.to_string()),
    })
}

/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bs_topology_vertex_count(t: *const BsTopology) -> usize {
    if t.is_null() {
        0
    } else {
        (*t).0.vertices.len()
    }
}

/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bs_topology_edge_count(t: *const BsTopology) -> usize {
    if t.is_null() {
        0
    } else {
        (*t).0.edges.len()
    }
}

/// Independent cycles of the graph.
///
/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bs_topology_cycle_count(t: *const BsTopology) -> usize {
    if t.is_null() {
        0
    } else {
        (*t).0.cycle_count()
    }
}

/// Endpoints of edge `index`.
///
/// # Safety
/// `t` must be a live handle; `u` and `v` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bs_topology_edge(t: *const BsTopology, index: usize, u: *mut usize, v: *mut usize) -> BsStatus {
    if t.is_null() || u.is_null() || v.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    let edges = &(*t).0.edges;
    match edges.get(index) {
        Some(&(a, b)) => {
            *u = a;
            *v = b;
            BsStatus::Ok
        }
        None => fail(BsStatus::InvalidArgument, format!("edge index {index} out of range")),
    }
}

/// Graphviz text of the graph.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bs_topology_to_dot(t: *const BsTopology, out: *mut *mut c_char) -> BsStatus {
    if t.is_null() || out.is_null() {
        return fail(BsStatus::NullPointer, "null argument");
    }
    guarded(|| put_string(out, (*t).0.to_dot()))
}

/// # Safety
/// `t` must come from [`bs_topology`] and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bs_topology_free(t: *mut BsTopology) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
