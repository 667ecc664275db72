mod common;

use bisolve::algnum::{compare, count_fiber_roots, sign_at, sign_at_biv, AlgError, FiberRange, FilterConfig, Sign};
use bisolve::poly::{BivPoly, Rational, Var};
use bisolve::subres::resultant_biv;
use bisolve::uniroot::{isolate, RealAlgNum};
use common::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

fn random_root(rng: &mut ChaCha8Rng) -> Option<RealAlgNum> {
    let f = random_uni_in(rng, 1..=3, 6);
    let roots = isolate(&f).unwrap().roots;
    if roots.is_empty() {
        return None;
    }
    let i = rng.gen_range(0..roots.len());
    Some(roots[i].clone())
}

fn two_roots(rng: &mut ChaCha8Rng) -> (RealAlgNum, RealAlgNum) {
    loop {
        if let (Some(a), Some(b)) = (random_root(rng), random_root(rng)) {
            return (a, b);
        }
    }
}

fn oracle_sign(f: &BivPoly, a: &RealAlgNum, b: &RealAlgNum) -> Option<i8> {
    q_box_sign(f, (a.defining(), a.lo(), a.hi()), (b.defining(), b.lo(), b.hi()), 160)
}

fn flip_y(f: &BivPoly) -> BivPoly {
    BivPoly::from_terms(f.terms().map(|(&(i, j), c)| ((i, j), if j % 2 == 1 { -c.clone() } else { c.clone() })))
}

#[test]
fn biv_sign_matches_box_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let on = FilterConfig::default();
    let off = FilterConfig::disabled();
    let mut zeros = 0;
    for round in 0..400 {
        let (a, b) = two_roots(&mut rng);
        let f = if round % 3 == 0 {
            // vanishes at (a, b) by construction
            let g = random_total(&mut rng, 2, 4, 0.6);
            let h = random_total(&mut rng, 2, 4, 0.6);
            g.mul(&BivPoly::from_uni(Var::X, a.defining())).add(&h.mul(&BivPoly::from_uni(Var::Y, b.defining())))
        } else {
            random_total(&mut rng, 3, 6, 0.6)
        };
        let s = sign_at_biv(&f, &a, &b, &on);
        assert_eq!(s, sign_at_biv(&f, &a, &b, &off), "filter soundness f={f}");
        match oracle_sign(&f, &a, &b) {
            Some(o) => assert_eq!(s.to_i8(), o, "f={f} a={} b={}", a.interval_text(), b.interval_text()),
            None => {
                assert_eq!(s, Sign::Zero, "f={f}");
                zeros += 1;
            }
        }
        if round % 3 == 0 {
            assert_eq!(s, Sign::Zero);
        }
        // refinement invariance
        let a4 = a.refine(&(a.width() / Rational::from_integer(4.into()))).unwrap_or(a.clone());
        let a4 = if a.is_point() { a.clone() } else { a4 };
        assert_eq!(sign_at_biv(&f, &a4, &b, &off), s);
    }
    assert!(zeros > 100);
}

#[test]
fn rational_abscissa_reduces_to_univariate_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let cfg = FilterConfig::default();
    for _ in 0..200 {
        let a = rat(rng.gen_range(-8..=8), rng.gen_range(1..=4));
        let alpha = RealAlgNum::rational(a.clone());
        let Some(b) = random_root(&mut rng) else { continue };
        let f = random_total(&mut rng, 3, 6, 0.6);
        assert_eq!(sign_at_biv(&f, &alpha, &b, &cfg), sign_at(&f.specialize(Var::X, &a), &b, &cfg));
    }
}

#[test]
fn compare_matches_refined_intervals() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let cfg = FilterConfig::default();
    let mut equal = 0;
    for _ in 0..300 {
        let (a, b) = if rng.gen_bool(0.3) {
            // the same number with two defining polynomials
            let a = loop {
                if let Some(a) = random_root(&mut rng) {
                    break a;
                }
            };
            let other = a.defining().mul(&random_uni_in(&mut rng, 1..=2, 5)).squarefree_part();
            let b = isolate(&other).unwrap().roots.into_iter().find(|r| compare(r, &a, &cfg) == Ordering::Equal).unwrap();
            (a, b)
        } else {
            two_roots(&mut rng)
        };
        let got = compare(&a, &b, &cfg);
        assert_eq!(got, compare(&b, &a, &cfg).reverse());
        let w = rat(1, 1) / Rational::from_integer(BigInt::from(1) << 100);
        let (al, ah) = q_bisect_to(a.defining(), a.lo(), a.hi(), &w);
        let (bl, bh) = q_bisect_to(b.defining(), b.lo(), b.hi(), &w);
        let expect = if ah < bl {
            Ordering::Less
        } else if bh < al {
            Ordering::Greater
        } else {
            assert!(q_gcd_degree(a.defining(), b.defining()) > 0);
            equal += 1;
            Ordering::Equal
        };
        assert_eq!(got, expect, "a={} by {} b={} by {}", a.interval_text(), a.defining(), b.interval_text(), b.defining());
    }
    assert!(equal > 50);
}

#[test]
fn fiber_counts_agree_with_resultant_roots_and_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let cfg = FilterConfig::default();
    let mut checked = 0;
    while checked < 150 {
        let Some(a) = random_root(&mut rng) else { continue };
        let f = random_biv_in(&mut rng, 0..=2, 1..=3, 5, 0.6);
        let all = match count_fiber_roots(&f, &a, &FiberRange::All, &cfg) {
            Ok(n) => n,
            Err(AlgError::LeadingCoefficientVanishes) | Err(AlgError::FiberVanishes) => continue,
            Err(e) => panic!("{e}"),
        };
        // candidates: real roots of res_x(A, F) in y
        let r = resultant_biv(&BivPoly::from_uni(Var::X, a.defining()), &f, Var::X).unwrap();
        let roots: Vec<RealAlgNum> = isolate(&r)
            .unwrap()
            .roots
            .into_iter()
            .filter(|eta| sign_at_biv(&f, &a, eta, &cfg) == Sign::Zero)
            .collect();
        assert_eq!(all, roots.len(), "f={f} a={} by {}", a.interval_text(), a.defining());
        // above a rational and above each root
        let c = rat(rng.gen_range(-12..=12), rng.gen_range(1..=3));
        let above = count_fiber_roots(&f, &a, &FiberRange::AboveRational(c.clone()), &cfg).unwrap();
        assert_eq!(above, roots.iter().filter(|eta| eta.cmp_rational(&c) == Ordering::Greater).count());
        let below = count_fiber_roots(&flip_y(&f), &a, &FiberRange::AboveRational(-c.clone()), &cfg).unwrap();
        let on_c = usize::from(sign_at(&f.specialize(Var::Y, &c), &a, &cfg) == Sign::Zero);
        assert_eq!(above + below + on_c, all, "f={f}");
        for (i, eta) in roots.iter().enumerate() {
            let n = count_fiber_roots(&f, &a, &FiberRange::AboveAlg(eta.clone()), &cfg).unwrap();
            assert_eq!(n, roots.len() - 1 - i, "f={f}");
        }
        checked += 1;
    }
}

#[test]
fn rational_abscissa_counts_match_isolation() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let cfg = FilterConfig::default();
    for _ in 0..200 {
        let f = random_biv_in(&mut rng, 0..=3, 1..=3, 6, 0.6);
        let a = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        let fiber = f.specialize(Var::X, &a);
        if fiber.is_zero() {
            continue;
        }
        let n = count_fiber_roots(&f, &RealAlgNum::rational(a.clone()), &FiberRange::All, &cfg).unwrap();
        let expect = real_root_count(&fiber);
        assert_eq!(n as i64, expect, "f={f} a={a}");
    }
}
