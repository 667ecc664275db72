//! Independent oracles and fixtures shared by the integration tests. The oracles at the
//! top never call into the subresultant code under test.
#![allow(dead_code)]

pub mod checks;

use bisolve::poly::{BivPoly, Rational, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Coefficients from the highest degree down, padded to `deg + 1` entries.
fn coeffs_high(p: &UniPoly, deg: usize) -> Vec<BigInt> {
    (0..=deg).rev().map(|i| p.coeff(i)).collect()
}

/// Sylvester matrix determinant with the actual degrees.
pub fn sylvester_resultant(f: &UniPoly, g: &UniPoly) -> BigInt {
    let p = f.degree().unwrap();
    let q = g.degree().unwrap();
    let n = p + q;
    let mut rows = Vec::new();
    for i in 0..q {
        let mut r = vec![BigInt::zero(); n];
        for (t, c) in coeffs_high(f, p).into_iter().enumerate() {
            r[i + t] = c;
        }
        rows.push(r);
    }
    for i in 0..p {
        let mut r = vec![BigInt::zero(); n];
        for (t, c) in coeffs_high(g, q).into_iter().enumerate() {
            r[i + t] = c;
        }
        rows.push(r);
    }
    bareiss_det(rows)
}

/// Determinant polynomial of a `k x (k + j)` matrix.
fn det_poly(rows: &[Vec<BigInt>], j: usize) -> UniPoly {
    let k = rows.len();
    let n = k + j;
    let mut cs = Vec::new();
    for i in 0..=j {
        let col = n - 1 - i;
        let sq: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let mut v: Vec<BigInt> = r[..k - 1].to_vec();
                v.push(r[col].clone());
                v
            })
            .collect();
        cs.push(bareiss_det(sq));
    }
    UniPoly::new(cs)
}

/// Signed subresultant `SR_j` for `deg g < deg f = p`, `j <= p - 2`, straight from the
/// determinant definition with `g` read at formal degree `p - 1`.
pub fn formal_subresultant(f: &UniPoly, g: &UniPoly, j: usize) -> UniPoly {
    let p = f.degree().unwrap();
    let fc = coeffs_high(f, p);
    let gc = coeffs_high(g, p - 1);
    let n = 2 * p - 1 - j;
    let mut rows = Vec::new();
    for i in 0..p - 1 - j {
        let mut r = vec![BigInt::zero(); n];
        for (t, c) in fc.iter().enumerate() {
            r[i + t] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..p - j {
        let mut r = vec![BigInt::zero(); n];
        for (t, c) in gc.iter().enumerate() {
            r[i + t] = c.clone();
        }
        rows.push(r);
    }
    let d = det_poly(&rows, j);
    let e = p - j;
    if (e * (e - 1) / 2) % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

// Rational polynomial helpers, lowest degree first.
pub type QPoly = Vec<Rational>;

pub fn to_q(p: &UniPoly) -> QPoly {
    p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect()
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &c * bc;
        }
        r = trim(r);
    }
    r
}

pub fn q_eval_sign(p: &QPoly, a: &Rational) -> i8 {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * a + c;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

/// The signed remainder sequence `f, g, -rem(f, g), ..`.
pub fn signed_remainders(f: &UniPoly, g: &UniPoly) -> Vec<QPoly> {
    let mut out = vec![to_q(f)];
    let mut a = to_q(f);
    let mut b = trim(to_q(g));
    while !b.is_empty() {
        out.push(b.clone());
        let r: QPoly = q_rem(&a, &b).into_iter().map(|c| -c).collect();
        a = b;
        b = trim(r);
    }
    out
}

pub fn zero_deleted_var(signs: &[i8]) -> i64 {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Cauchy index of `g/f` on `(a, b)` by the classical Sturm theorem.
pub fn brute_cauchy_index(f: &UniPoly, g: &UniPoly, a: &Rational, b: &Rational) -> i64 {
    let seq = signed_remainders(f, g);
    let va: Vec<i8> = seq.iter().map(|p| q_eval_sign(p, a)).collect();
    let vb: Vec<i8> = seq.iter().map(|p| q_eval_sign(p, b)).collect();
    zero_deleted_var(&va) - zero_deleted_var(&vb)
}

/// Degree of the gcd over the rationals.
pub fn q_gcd_degree(f: &UniPoly, g: &UniPoly) -> i64 {
    let mut a = trim(to_q(f));
    let mut b = trim(to_q(g));
    while !b.is_empty() {
        let r = q_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() as i64 - 1
}

pub fn random_uni(rng: &mut impl Rng, deg: usize, bound: i64) -> UniPoly {
    loop {
        let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        let p = UniPoly::from_i64s(&cs);
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

pub fn random_biv(rng: &mut impl Rng, dx: u32, dy: u32, bound: i64, density: f64) -> BivPoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=dx {
            for j in 0..=dy {
                if rng.gen_bool(density) {
                    terms.push(((i, j), BigInt::from(rng.gen_range(-bound..=bound))));
                }
            }
        }
        let p = BivPoly::from_terms(terms);
        if p.deg_y() == dy as i64 && p.deg_x() >= 0 {
            return p;
        }
    }
}

/// Random polynomial of total degree at most `n`.
pub fn random_total(rng: &mut impl Rng, n: u32, bound: i64, density: f64) -> BivPoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=n {
            for j in 0..=(n - i) {
                if rng.gen_bool(density) {
                    terms.push(((i, j), BigInt::from(rng.gen_range(-bound..=bound))));
                }
            }
        }
        let p = BivPoly::from_terms(terms);
        if p.total_degree() >= 1 {
            return p;
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_uni_in(rng: &mut impl Rng, degs: std::ops::RangeInclusive<usize>, bound: i64) -> UniPoly {
    let d = rng.gen_range(degs);
    random_uni(rng, d, bound)
}

pub fn random_biv_in(
    rng: &mut impl Rng,
    dxs: std::ops::RangeInclusive<u32>,
    dys: std::ops::RangeInclusive<u32>,
    bound: i64,
    density: f64,
) -> BivPoly {
    let dx = rng.gen_range(dxs);
    let dy = rng.gen_range(dys);
    random_biv(rng, dx, dy, bound, density)
}

/// Closed rational interval, exact arithmetic.
#[derive(Clone, Debug)]
pub struct QInt(pub Rational, pub Rational);

impl QInt {
    pub fn point(q: Rational) -> Self {
        QInt(q.clone(), q)
    }

    pub fn add(&self, o: &QInt) -> QInt {
        QInt(&self.0 + &o.0, &self.1 + &o.1)
    }

    pub fn mul(&self, o: &QInt) -> QInt {
        let ps = [&self.0 * &o.0, &self.0 * &o.1, &self.1 * &o.0, &self.1 * &o.1];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        QInt(lo, hi)
    }

    pub fn sign(&self) -> Option<i8> {
        if self.0.is_positive() {
            Some(1)
        } else if self.1.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

pub fn q_box_eval(f: &BivPoly, x: &QInt, y: &QInt) -> QInt {
    let mut acc = QInt::point(Rational::zero());
    for (&(i, j), c) in f.terms() {
        let mut t = QInt::point(Rational::from_integer(c.clone()));
        for _ in 0..i {
            t = t.mul(x);
        }
        for _ in 0..j {
            t = t.mul(y);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Bisects an isolating interval `(lo, hi)` of a root of `a` (opposite signs at the ends)
/// until its width is below `w`. Point intervals stay put.
pub fn q_bisect_to(a: &UniPoly, lo: &Rational, hi: &Rational, w: &Rational) -> (Rational, Rational) {
    let qa = to_q(a);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if lo == hi {
        return (lo, hi);
    }
    let s_lo = q_eval_sign(&qa, &lo);
    while &(&hi - &lo) > w {
        let m = (&lo + &hi) / Rational::from_integer(2.into());
        let s = q_eval_sign(&qa, &m);
        if s == 0 {
            return (m.clone(), m);
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}

/// Sign of `F` at a pair of isolated roots by box evaluation down to width `2^-bits`.
/// `None` when the box never excludes zero.
pub fn q_box_sign(
    f: &BivPoly,
    a: (&UniPoly, &Rational, &Rational),
    b: (&UniPoly, &Rational, &Rational),
    bits: i64,
) -> Option<i8> {
    let mut w = Rational::one();
    let (mut al, mut ah) = (a.1.clone(), a.2.clone());
    let (mut bl, mut bh) = (b.1.clone(), b.2.clone());
    let mut k = 0;
    while k <= bits {
        (al, ah) = q_bisect_to(a.0, &al, &ah, &w);
        (bl, bh) = q_bisect_to(b.0, &bl, &bh, &w);
        if let Some(s) = q_box_eval(f, &QInt(al.clone(), ah.clone()), &QInt(bl.clone(), bh.clone())).sign() {
            return Some(s);
        }
        w /= Rational::from_integer(16.into());
        k += 4;
    }
    None
}

pub struct CorpusSystem {
    pub name: String,
    pub headers: std::collections::BTreeMap<String, String>,
    pub f: BivPoly,
    pub g: BivPoly,
}

impl CorpusSystem {
    pub fn generic(&self) -> bool {
        self.headers.get("generic").map(String::as_str) == Some("yes")
    }

    pub fn expected_count(&self) -> Option<usize> {
        self.headers.get("solutions").and_then(|v| v.parse().ok())
    }
}

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every `.sys` file of the corpus, sorted by name.
pub fn load_corpus() -> Vec<CorpusSystem> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sys"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let input = bisolve::cli::parse_input(&std::fs::read_to_string(&p).unwrap()).unwrap();
            assert_eq!(input.polynomials.len(), 2, "{}", p.display());
            CorpusSystem {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                headers: input.headers,
                f: input.polynomials[0].clone(),
                g: input.polynomials[1].clone(),
            }
        })
        .collect()
}

/// Shrinks the boxes of two isolated roots until `F` or `G` excludes zero on the box, down
/// to width `2^-bits`. True when some polynomial certifies the box free of solutions.
pub fn box_excludes(
    polys: &[&BivPoly],
    a: (&UniPoly, &Rational, &Rational),
    b: (&UniPoly, &Rational, &Rational),
    bits: i64,
) -> bool {
    let mut w = Rational::one();
    let (mut al, mut ah) = (a.1.clone(), a.2.clone());
    let (mut bl, mut bh) = (b.1.clone(), b.2.clone());
    let mut k = 0;
    while k <= bits {
        (al, ah) = q_bisect_to(a.0, &al, &ah, &w);
        (bl, bh) = q_bisect_to(b.0, &bl, &bh, &w);
        let (x, y) = (QInt(al.clone(), ah.clone()), QInt(bl.clone(), bh.clone()));
        if polys.iter().any(|p| q_box_eval(p, &x, &y).sign().is_some()) {
            return true;
        }
        w /= Rational::from_integer(16.into());
        k += 4;
    }
    false
}

/// Strict bound on the absolute value of every real root: `1 + max |c_i / lc|`, plus one.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = Rational::from_integer(p.lc().abs());
    let m = p.coeffs().iter().map(|c| Rational::from_integer(c.abs()) / &lc).max().unwrap_or_else(Rational::zero);
    m + Rational::from_integer(2.into())
}

/// Number of distinct real roots of `p` by the classical Sturm sequence.
pub fn real_root_count(p: &UniPoly) -> i64 {
    let sf = p.squarefree_part();
    let b = cauchy_bound(&sf);
    brute_cauchy_index(&sf, &sf.derivative(), &-b.clone(), &b)
}
