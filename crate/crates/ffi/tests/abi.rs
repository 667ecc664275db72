use bisolve_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

fn parse(text: &str) -> *mut BsPoly {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bs_poly_parse(c.as_ptr(), &mut p) }, BsStatus::Ok);
    p
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bs_last_error_message()) }.to_string_lossy().into_owned()
}

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { bs_string_free(s) };
    out
}

#[test]
fn solve_through_the_c_abi() {
    let (f, g) = (parse("x^2 + y^2 - 2"), parse("x - y"));
    let mut sols = ptr::null_mut();
    assert_eq!(unsafe { bs_solve(f, g, BsSolver::Grur, true, false, &mut sols) }, BsStatus::Ok);
    assert_eq!(unsafe { bs_solutions_len(sols) }, 2);
    let (mut x, mut y) = (0.0, 0.0);
    assert_eq!(unsafe { bs_solution_approx(sols, 0, &mut x, &mut y) }, BsStatus::Ok);
    assert!((x + 1.0).abs() < 1e-9 && (y + 1.0).abs() < 1e-9);
    let mut m = 0;
    assert_eq!(unsafe { bs_solution_multiplicity(sols, 0, &mut m) }, BsStatus::InvalidArgument);
    let mut line = ptr::null_mut();
    assert_eq!(unsafe { bs_solution_to_string(sols, 1, 16, &mut line) }, BsStatus::Ok);
    assert_eq!(take_string(line), "root: x in [1, 1] by x^2 - 1; y in [1, 1] by y^2 - 1");
    unsafe {
        bs_solutions_free(sols);
        bs_poly_free(f);
        bs_poly_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let c = CString::new("x^2 + * y").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bs_poly_parse(c.as_ptr(), &mut p) }, BsStatus::ParseError);
    assert!(last_error().contains("column"), "{}", last_error());
    assert_eq!(unsafe { bs_poly_parse(ptr::null(), &mut p) }, BsStatus::NullPointer);

    let (f, g) = (parse("x*y"), parse("x*y + x"));
    let mut sols = ptr::null_mut();
    assert_eq!(unsafe { bs_solve(f, g, BsSolver::Grid, true, false, &mut sols) }, BsStatus::Precondition);
    let (c1, v) = (parse("x^2 + y^2 - 1"), parse("x"));
    assert_eq!(unsafe { bs_solve(c1, v, BsSolver::Mrur, true, false, &mut sols) }, BsStatus::Precondition);
    assert!(last_error().contains("generic"), "{}", last_error());
    let sq = parse("x^2 - 2*x*y + y^2");
    let mut topo = ptr::null_mut();
    assert_eq!(unsafe { bs_topology(sq, &mut topo) }, BsStatus::Precondition);
    unsafe {
        for p in [f, g, c1, v, sq] {
            bs_poly_free(p);
        }
        bs_poly_free(ptr::null_mut());
        assert_eq!(bs_solutions_len(ptr::null()), 0);
    }
}

#[test]
fn topology_through_the_c_abi() {
    let f = parse("y^2 - x^3 - x^2");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { bs_topology(f, &mut t) }, BsStatus::Ok);
    let (n, e) = unsafe { (bs_topology_vertex_count(t), bs_topology_edge_count(t)) };
    assert_eq!((n, e, unsafe { bs_topology_cycle_count(t) }), (6, 6, 1));
    let mut degree = vec![0; n];
    for i in 0..e {
        let (mut u, mut v) = (0, 0);
        assert_eq!(unsafe { bs_topology_edge(t, i, &mut u, &mut v) }, BsStatus::Ok);
        degree[u] += 1;
        degree[v] += 1;
    }
    assert_eq!(degree.iter().filter(|&&d| d == 4).count(), 1);
    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { bs_topology_to_dot(t, &mut dot) }, BsStatus::Ok);
    assert!(take_string(dot).starts_with("graph topology {"));
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { bs_poly_to_string(f, &mut text) }, BsStatus::Ok);
    assert_eq!(take_string(text), "-x^3 - x^2 + y^2");
    unsafe {
        bs_topology_free(t);
        bs_poly_free(f);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/bisolve.h")).unwrap();
    for name in [
        "bs_poly_parse",
        "bs_poly_free",
        "bs_poly_to_string",
        "bs_string_free",
        "bs_solve",
        "bs_solutions_len",
        "bs_solution_approx",
        "bs_solution_multiplicity",
        "bs_solution_to_string",
        "bs_solutions_free",
        "bs_topology",
        "bs_topology_vertex_count",
        "bs_topology_edge_count",
        "bs_topology_cycle_count",
        "bs_topology_edge",
        "bs_topology_to_dot",
        "bs_topology_free",
        "bs_last_error_message",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct BsPoly BsPoly;"));
}

/// Compiles and runs a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libbisolve_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let exe = profile_dir.join("bisolve_ffi_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.ends_with("ok\n"), "{stdout}");
    assert!(stdout.starts_with("root: x in [-1, -1]"), "{stdout}");
}
