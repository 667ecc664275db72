//! Sparse bivariate integer polynomials.

use super::dense::Poly;
use super::uni::UniPoly;
use super::Rational;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// One of the two variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

/// `sum c_ij x^i y^j`, keyed by `(i, j)`; only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct BivPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivPoly {
    pub fn zero() -> Self {
        BivPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        BivPoly::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        BivPoly::from_terms([((1, 0), BigInt::one())])
    }

    pub fn y() -> Self {
        BivPoly::from_terms([((0, 1), BigInt::one())])
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = BivPoly::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in a variable, -1 for the zero polynomial.
    pub fn deg(&self, v: Var) -> i64 {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i as i64,
                Var::Y => j as i64,
            })
            .max()
            .unwrap_or(-1)
    }

    pub fn deg_x(&self) -> i64 {
        self.deg(Var::X)
    }

    pub fn deg_y(&self) -> i64 {
        self.deg(Var::Y)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|&(i, j)| (i + j) as i64).max().unwrap_or(-1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        BivPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = BivPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                p.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BivPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BivPoly::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        BivPoly::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c * BigInt::from(i))),
            Var::Y if j > 0 => Some(((i, j - 1), c * BigInt::from(j))),
            _ => None,
        }))
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        BivPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// Recursive view: a polynomial in `main` whose coefficients are polynomials in the other variable.
    pub fn to_rec(&self, main: Var) -> Poly<UniPoly> {
        let d = self.deg(main);
        if d < 0 {
            return Poly::zero();
        }
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); d as usize + 1];
        for (&(i, j), c) in &self.terms {
            let (m, o) = match main {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            let row = &mut rows[m];
            if row.len() <= o {
                row.resize(o + 1, BigInt::zero());
            }
            row[o] = c.clone();
        }
        Poly::new(rows.into_iter().map(Poly::new).collect())
    }

    pub fn from_rec(main: Var, p: &Poly<UniPoly>) -> Self {
        let mut out = BivPoly::zero();
        for (m, row) in p.coeffs().iter().enumerate() {
            for (o, c) in row.coeffs().iter().enumerate() {
                let k = match main {
                    Var::X => (m as u32, o as u32),
                    Var::Y => (o as u32, m as u32),
                };
                out.add_term(k, c.clone());
            }
        }
        out
    }

    /// Embeds a univariate polynomial in the given variable.
    pub fn from_uni(v: Var, p: &UniPoly) -> Self {
        BivPoly::from_terms(p.coeffs().iter().enumerate().map(|(e, c)| {
            let k = match v {
                Var::X => (e as u32, 0),
                Var::Y => (0, e as u32),
            };
            (k, c.clone())
        }))
    }

    /// Leading coefficient with respect to `v`, a polynomial in the other variable.
    pub fn lc(&self, v: Var) -> UniPoly {
        self.to_rec(v).lc()
    }

    /// Content with respect to `v`: the normalized gcd of the coefficients in the other variable.
    pub fn content(&self, v: Var) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in self.to_rec(v).coeffs() {
            g = g.gcd(c);
        }
        g
    }

    /// Substitutes the rational value `a` for `v`, returning the polynomial in the
    /// other variable multiplied by `denom(a)^deg_v`, a positive factor.
    pub fn specialize(&self, v: Var, a: &Rational) -> UniPoly {
        let rec = self.to_rec(v.other());
        let d = self.deg(v).max(0) as usize;
        Poly::new(rec.coeffs().iter().map(|c| scaled_eval(c, a, d)).collect())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += Rational::from_integer(c.clone()) * num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize);
        }
        acc
    }

    /// `F(x + t*y, y)`.
    pub fn shear(&self, t: &BigInt) -> Self {
        if t.is_zero() {
            return self.clone();
        }
        let lin = BivPoly::from_terms([((1, 0), BigInt::one()), ((0, 1), t.clone())]);
        let mut out = BivPoly::zero();
        let mut powers = vec![BivPoly::constant(BigInt::one())];
        for (&(i, j), c) in &self.terms {
            while powers.len() <= i as usize {
                let next = powers.last().unwrap().mul(&lin);
                powers.push(next);
            }
            let term = powers[i as usize].mul(&BivPoly::from_terms([((0, j), c.clone())]));
            out = out.add(&term);
        }
        out
    }

    /// Maximum coefficient bit length.
    pub fn bitsize(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Canonical text using the given variable names, graded-lexicographic order.
    pub fn to_text(&self, names: (&str, &str)) -> String {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let terms: Vec<(BigInt, String)> = keys
            .into_iter()
            .map(|k| (self.terms[k].clone(), super::monomial_text(&[(names.0, k.0), (names.1, k.1)])))
            .collect();
        super::terms_text(&terms)
    }

    /// Divides every coefficient by their gcd and makes the leading term (in
    /// graded order) positive.
    pub fn primitive(&self) -> Self {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return self.clone();
        }
        BivPoly { terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect() }
    }
}

/// `den^d * c(a)` for a univariate `c` of degree at most `d`.
fn scaled_eval(c: &UniPoly, a: &Rational, d: usize) -> BigInt {
    let h = c.eval_homogeneous(a);
    let extra = d - c.degree().unwrap_or(0);
    if c.is_zero() {
        return BigInt::zero();
    }
    h * a.denom().pow(extra as u32)
}

impl fmt::Display for BivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(("x", "y")))
    }
}

impl crate::ring::Ring for BivPoly {
    fn zero() -> Self {
        BivPoly::zero()
    }
    fn one() -> Self {
        BivPoly::constant(<BigInt as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        BivPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BivPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BivPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        BivPoly::neg(self)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let q = self.to_rec(Var::Y).exact_div(&o.to_rec(Var::Y))?;
        Some(BivPoly::from_rec(Var::Y, &q))
    }
    fn from_i64(v: i64) -> Self {
        BivPoly::constant(BigInt::from(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn bp(s: &str) -> BivPoly {
        parse_poly(s, ("x", "y")).unwrap()
    }

    #[test]
    fn shear_examples() {
        assert_eq!(bp("x").shear(&BigInt::from(2)), bp("x + 2*y"));
        assert_eq!(bp("x^2 + y^2 - 1").shear(&BigInt::one()), bp("x^2 + 2*x*y + 2*y^2 - 1"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(bp("x^2 + y^2 - 1").derivative(Var::Y), bp("2*y"));
        assert_eq!(bp("x^2 - 1").derivative(Var::X), bp("2*x"));
    }

    #[test]
    fn recursive_round_trip() {
        let f = bp("3*x^2*y - x*y^3 + 7 - y");
        assert_eq!(BivPoly::from_rec(Var::Y, &f.to_rec(Var::Y)), f);
        assert_eq!(BivPoly::from_rec(Var::X, &f.to_rec(Var::X)), f);
        assert_eq!(f.lc(Var::Y), UniPoly::from_i64s(&[0, -1]));
    }

    #[test]
    fn specialization_scales_positively() {
        let f = bp("x^2 + y^2 - 2");
        let half = Rational::new(1.into(), 2.into());
        // 4 * ((1/2)^2 + y^2 - 2) = 4*y^2 - 7
        assert_eq!(f.specialize(Var::X, &half), UniPoly::from_i64s(&[-7, 0, 4]));
        assert_eq!(f.specialize(Var::Y, &Rational::from_integer(1.into())), UniPoly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(bp("2y^2 - 1 + x^2 + 2 x y").to_string(), "x^2 + 2*x*y + 2*y^2 - 1");
        assert_eq!(bp("-y + x").to_string(), "x - y");
        assert_eq!(BivPoly::zero().to_string(), "0");
    }
}
