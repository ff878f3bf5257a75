//! Sparse multivariate power series k[[t1,...,tn]] truncated by total
//! degree. A value with precision N is known exactly modulo the ideal of
//! terms of total degree >= N.
//!
//! Zero coefficients are never stored. Binary operations take the minimum
//! of the operand precisions; monomial shifts move precision by the degree
//! of the monomial.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::uni::UniSeries;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

pub type Exponents = Vec<u32>;

pub fn total_degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiSeries {
    terms: BTreeMap<Exponents, Scalar>,
    nvars: usize,
    prec: usize,
}

impl MultiSeries {
    pub fn zero(nvars: usize, prec: usize) -> Self {
        assert!(prec >= 1, "series precision must be at least 1");
        MultiSeries { terms: BTreeMap::new(), nvars, prec }
    }

    pub fn constant(c: Scalar, nvars: usize, prec: usize) -> Self {
        let mut s = MultiSeries::zero(nvars, prec);
        s.insert_add(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, prec: usize) -> Self {
        MultiSeries::constant(Scalar::one(), nvars, prec)
    }

    /// The variable t_{i+1} (index is zero-based).
    pub fn var(i: usize, nvars: usize, prec: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        MultiSeries::monomial(e, Scalar::one(), prec)
    }

    pub fn monomial(exps: Exponents, c: Scalar, prec: usize) -> Self {
        let mut s = MultiSeries::zero(exps.len(), prec);
        s.insert_add(exps, c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    /// Adds `c` to the coefficient of the given monomial, dropping terms at
    /// or beyond the precision and zero results.
    pub fn insert_add(&mut self, exps: Exponents, c: Scalar) {
        assert_eq!(exps.len(), self.nvars, "wrong exponent arity");
        if c.is_zero() || total_degree(&exps) >= self.prec {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
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

    /// Least total degree among stored terms; `None` when zero mod precision.
    /// Smallest exponent of variable `v` among stored terms.
    pub fn ord_in_var(&self, v: usize) -> Option<usize> {
        assert!(v < self.nvars);
        self.terms.keys().map(|e| e[v] as usize).min()
    }

    pub fn ord(&self) -> Option<usize> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec <= self.prec, "truncation cannot raise precision");
        let mut out = MultiSeries::zero(self.nvars, prec);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub(crate) fn with_prec(&self, prec: usize) -> Self {
        assert!(prec >= 1);
        let mut out = MultiSeries::zero(self.nvars, prec);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn agrees_mod(&self, other: &Self, n: usize) -> bool {
        assert!(n <= self.prec && n <= other.prec, "comparison beyond stated precision");
        assert_eq!(self.nvars, other.nvars);
        let diff = self - other;
        diff.terms.keys().all(|e| total_degree(e) >= n)
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.prec);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c * s);
        }
        out
    }

    /// The homogeneous component of total degree d.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.prec);
        for (e, c) in &self.terms {
            if total_degree(e) == d {
                out.insert_add(e.clone(), c.clone());
            }
        }
        out
    }

    /// Leading homogeneous form (component of least total degree).
    pub fn leading_form(&self) -> Option<Self> {
        self.ord().map(|d| self.homogeneous_part(d))
    }

    /// Multiplication by a monomial; precision rises by its total degree.
    pub fn mul_monomial(&self, exps: &[u32], c: &Scalar) -> Self {
        assert_eq!(exps.len(), self.nvars);
        let shift = total_degree(exps);
        let mut out = MultiSeries::zero(self.nvars, self.prec + shift);
        for (e, coeff) in &self.terms {
            let ne: Exponents = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.insert_add(ne, coeff * c);
        }
        out
    }

    /// Exact division by a monomial every stored term must contain.
    pub fn div_monomial(&self, exps: &[u32]) -> Result<Self> {
        assert_eq!(exps.len(), self.nvars);
        let shift = total_degree(exps);
        if shift == 0 {
            return Ok(self.clone());
        }
        if self.prec <= shift {
            return Err(Error::PrecisionExhausted(format!(
                "cannot divide by a degree-{shift} monomial at precision {}",
                self.prec
            )));
        }
        let mut out = MultiSeries::zero(self.nvars, self.prec - shift);
        for (e, c) in &self.terms {
            assert!(
                e.iter().zip(exps).all(|(a, b)| a >= b),
                "series is not divisible by the requested monomial"
            );
            let ne: Exponents = e.iter().zip(exps).map(|(a, b)| a - b).collect();
            out.insert_add(ne, c.clone());
        }
        Ok(out)
    }

    /// Sets t1 = ... = t_{n-1} = 0, leaving a univariate series in tn.
    pub fn at_tprime_zero(&self) -> UniSeries {
        let mut coeffs = vec![Scalar::zero(); self.prec];
        for (e, c) in &self.terms {
            if e[..self.nvars - 1].iter().all(|&x| x == 0) {
                coeffs[e[self.nvars - 1] as usize] = c.clone();
            }
        }
        UniSeries::new(coeffs, self.prec)
    }

    /// Coefficient of tn^j as a series in the first n-1 variables, known
    /// modulo total degree prec - j.
    pub fn tn_coefficient(&self, j: u32) -> Result<MultiSeries> {
        assert!(self.nvars >= 1, "needs a distinguished last variable");
        if self.prec <= j as usize {
            return Err(Error::PrecisionExhausted(format!(
                "tn^{j} coefficient is not determined at precision {}",
                self.prec
            )));
        }
        let mut out = MultiSeries::zero(self.nvars - 1, self.prec - j as usize);
        for (e, c) in &self.terms {
            if e[self.nvars - 1] == j {
                out.insert_add(e[..self.nvars - 1].to_vec(), c.clone());
            }
        }
        Ok(out)
    }

    /// Splits into the part of tn-degree < s and the cofactor of tn^s:
    /// f = low + tn^s * high. The high part loses s from its precision.
    pub fn split_tn(&self, s: usize) -> (MultiSeries, MultiSeries) {
        assert!(self.prec > s, "split beyond stated precision");
        let mut low = MultiSeries::zero(self.nvars, self.prec);
        let mut high = MultiSeries::zero(self.nvars, self.prec - s);
        for (e, c) in &self.terms {
            if (e[self.nvars - 1] as usize) < s {
                low.insert_add(e.clone(), c.clone());
            } else {
                let mut ne = e.clone();
                ne[self.nvars - 1] -= s as u32;
                high.insert_add(ne, c.clone());
            }
        }
        (low, high)
    }

    /// Embeds an (n-1)-variable series as the coefficient of tn^j inside an
    /// n-variable series.
    pub fn embed_with_tn_power(&self, j: u32) -> MultiSeries {
        let mut out = MultiSeries::zero(self.nvars + 1, self.prec + j as usize);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.push(j);
            out.insert_add(ne, c.clone());
        }
        out
    }

    /// Inverse of a unit (nonzero constant term), at the same precision.
    pub fn unit_inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotAUnit);
        }
        let ci = c.inverse()?;
        // f = c (1 - h) with ord(h) >= 1, so 1/f = (1/c) sum h^k.
        let mut h = MultiSeries::constant(Scalar::one(), self.nvars, self.prec);
        h = &h - &self.scalar_mul(&ci);
        debug_assert!(h.ord().is_none_or(|d| d >= 1));
        let mut acc = MultiSeries::one(self.nvars, self.prec);
        let mut pow = MultiSeries::one(self.nvars, self.prec);
        for _ in 1..self.prec {
            pow = &pow * &h;
            if pow.is_zero() {
                break;
            }
            acc = &acc + &pow;
        }
        Ok(acc.scalar_mul(&ci))
    }

    /// Square root of a series whose constant term is a nonzero square in
    /// the coefficient field, computed degree by degree.
    pub fn unit_sqrt(&self, field_d: Option<i64>) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::ConstantNotASquare);
        }
        let r0 = c.sqrt_in(field_d).ok_or(Error::ConstantNotASquare)?;
        let inv2r0 = (&Scalar::from_integer(2) * &r0).inverse()?;
        let mut root = MultiSeries::constant(r0, self.nvars, self.prec);
        for d in 1..self.prec {
            let square = &root * &root;
            let want = self.homogeneous_part(d);
            let have = square.homogeneous_part(d);
            let delta = (&want - &have).scalar_mul(&inv2r0);
            root = &root + &delta;
        }
        Ok(root)
    }
}

impl Add for &MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MultiSeries::zero(self.nvars, self.prec.min(rhs.prec));
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: &MultiSeries) -> MultiSeries {
        self + &(-rhs)
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        let mut out = MultiSeries::zero(self.nvars, self.prec);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let prec = self.prec.min(rhs.prec);
        let mut out = MultiSeries::zero(self.nvars, prec);
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            if d1 >= prec {
                continue;
            }
            for (e2, c2) in &rhs.terms {
                if d1 + total_degree(e2) >= prec {
                    continue;
                }
                let ne: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(ne, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    #[test]
    fn no_zero_terms_survive() {
        let t1 = MultiSeries::var(0, 2, 6);
        let diff = &t1 - &t1;
        assert!(diff.is_zero());
        assert_eq!(diff.terms().count(), 0);
    }

    #[test]
    fn min_precision_and_truncation() {
        let a = MultiSeries::one(3, 9);
        let b = MultiSeries::var(2, 3, 4);
        assert_eq!((&a * &b).prec(), 4);
        let m = MultiSeries::monomial(vec![5, 0, 0], s(1), 4);
        assert!(m.is_zero(), "degree >= prec is dropped");
    }

    #[test]
    fn unit_inverse_multivariate() {
        // 1/(1 - t1 - t2) = sum of all monomials times multinomials
        let one = MultiSeries::one(2, 5);
        let f = &(&one - &MultiSeries::var(0, 2, 5)) - &MultiSeries::var(1, 2, 5);
        let inv = f.unit_inverse().unwrap();
        assert_eq!(&f * &inv, one);
        assert_eq!(inv.coeff(&[1, 1]), s(2));
        assert_eq!(inv.coeff(&[2, 2]), s(6));
    }

    #[test]
    fn unit_sqrt_multivariate() {
        let one = MultiSeries::one(2, 7);
        let f = &one + &MultiSeries::monomial(vec![1, 1], s(4), 7);
        let r = f.unit_sqrt(None).unwrap();
        assert_eq!(&r * &r, f);
        assert_eq!(r.coeff(&[1, 1]), s(2));
    }

    #[test]
    fn monomial_shift_precision() {
        let f = MultiSeries::one(2, 4);
        let g = f.mul_monomial(&[0, 3], &s(1));
        assert_eq!(g.prec(), 7);
        let h = g.div_monomial(&[0, 3]).unwrap();
        assert_eq!(h, f);
    }

    #[test]
    fn tn_views() {
        // f = t1 + t1 t2 + t2^2
        let mut f = MultiSeries::zero(2, 6);
        f.insert_add(vec![1, 0], s(1));
        f.insert_add(vec![1, 1], s(1));
        f.insert_add(vec![0, 2], s(1));
        let u = f.at_tprime_zero();
        assert_eq!(u.ord(), Some(2));
        let c1 = f.tn_coefficient(1).unwrap();
        assert_eq!(c1.coeff(&[1]), s(1));
        assert_eq!(c1.prec(), 5);
        let (low, high) = f.split_tn(2);
        assert_eq!(low.coeff(&[1, 1]), s(1));
        assert_eq!(high.constant_term(), s(1));
        assert_eq!(high.prec(), 4);
    }
}
