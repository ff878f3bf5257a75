//! Exact sparse multivariate polynomials over the coefficient field, and
//! rational functions kept in lowest terms.
//!
//! The term order used for leading terms and canonical forms is graded
//! lexicographic. Greatest common divisors are computed by a primitive
//! pseudo-remainder sequence, recursing one variable at a time; fractions
//! reduce by the gcd and normalize the denominator to leading coefficient
//! one. Inputs here are small (residue data, certificate generators), so
//! simplicity wins over asymptotics.

use crate::scalar::Scalar;
use crate::series::multi::total_degree;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Scalar>,
    nvars: usize,
}

fn grlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b))
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { terms: BTreeMap::new(), nvars }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = MPoly::zero(nvars);
        p.insert_add(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(Scalar::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        MPoly::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Exponents, c: Scalar) -> Self {
        let mut p = MPoly::zero(exps.len());
        p.insert_add(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total_degree(e) == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_deg(&self) -> Option<usize> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn insert_add(&mut self, exps: Exponents, c: Scalar) {
        assert_eq!(exps.len(), self.nvars, "wrong exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().max_by(|(a, _), (b, _)| grlex(a, b))
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Degree in one variable.
    pub fn deg_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Coefficient of var^k as a polynomial with var-degree zero.
    pub fn coeff_in(&self, v: usize, k: u32) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut ne = e.clone();
                ne[v] = 0;
                out.insert_add(ne, c.clone());
            }
        }
        out
    }

    /// Exact division; `None` when the divisor does not divide self.
    pub fn exact_div(&self, div: &MPoly) -> Option<MPoly> {
        assert!(!div.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, div.nvars);
        let (dle, dlc) = div.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let dlci = dlc.inverse().ok()?;
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.nvars);
        while let Some((rle, rlc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if !rle.iter().zip(&dle).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Exponents = rle.iter().zip(&dle).map(|(a, b)| a - b).collect();
            let qc = &rlc * &dlci;
            let t = MPoly::monomial(qe, qc);
            rem = &rem - &(&t * div);
            quo = &quo + &t;
        }
        Some(quo)
    }

    fn highest_active_var(&self, other: &MPoly) -> Option<usize> {
        (0..self.nvars)
            .rev()
            .find(|&v| self.deg_in(v).unwrap_or(0) > 0 || other.deg_in(v).unwrap_or(0) > 0)
    }

    /// Content with respect to one variable: gcd of the var-coefficients.
    fn content_in(&self, v: usize) -> MPoly {
        let mut acc = MPoly::zero(self.nvars);
        let d = self.deg_in(v).unwrap_or(0);
        for k in 0..=d {
            let c = self.coeff_in(v, k);
            if !c.is_zero() {
                acc = acc.gcd(&c);
            }
        }
        acc
    }

    /// Pseudo-remainder of self by div in variable v (up to content).
    fn prem(&self, div: &MPoly, v: usize) -> MPoly {
        let db = div.deg_in(v).expect("pseudo-division by zero");
        let lcb = div.coeff_in(v, db);
        let mut r = self.clone();
        while let Some(dr) = r.deg_in(v) {
            if r.is_zero() || dr < db {
                break;
            }
            let lcr = r.coeff_in(v, dr);
            let mut shift = vec![0u32; self.nvars];
            shift[v] = dr - db;
            let shifted = &MPoly::monomial(shift, Scalar::one()) * div;
            r = &(&r * &lcb) - &(&shifted * &lcr);
        }
        r
    }

    /// Monic normalization: scale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let ci = c.inverse().unwrap();
                self.scalar_mul(&ci)
            }
        }
    }

    /// Greatest common divisor, normalized monic. Primitive PRS recursion.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let v = match self.highest_active_var(other) {
            None => return MPoly::one(self.nvars),
            Some(v) => v,
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.deg_in(v).unwrap_or(0) < b.deg_in(v).unwrap_or(0) {
            std::mem::swap(&mut a, &mut b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let mut pa = a.exact_div(&ca).expect("content divides");
        let mut pb = b.exact_div(&cb).expect("content divides");
        let d = ca.gcd(&cb);
        while !pb.is_zero() {
            let r = pa.prem(&pb, v);
            let rp = if r.is_zero() {
                r
            } else {
                let c = r.content_in(v);
                r.exact_div(&c).expect("content divides")
            };
            pa = pb;
            pb = rp;
        }
        (&d * &pa).monic()
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let ne: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(ne, c1 * c2);
            }
        }
        out
    }
}

/// A rational function in lowest terms with monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        if num.is_zero() {
            return RatFn { num, den: MPoly::one(den.nvars()) };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading_term().unwrap().1.clone();
        let lci = lc.inverse().unwrap();
        RatFn { num: num.scalar_mul(&lci), den: den.scalar_mul(&lci) }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFn { num: p, den: MPoly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFn::from_poly(MPoly::zero(nvars))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inverse(&self) -> Option<RatFn> {
        if self.is_zero() {
            None
        } else {
            Some(RatFn::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}
