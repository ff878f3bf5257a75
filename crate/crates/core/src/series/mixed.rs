//! The mixed ring k[x][[t]]: t-adic series whose coefficients are exact
//! polynomials in x. Dense in t, with a stated t-adic precision.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::poly::XPoly;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct MixedA {
    coeffs: Vec<XPoly>,
    prec: usize,
}

fn trim(coeffs: &mut Vec<XPoly>) {
    while coeffs.last().is_some_and(XPoly::is_zero) {
        coeffs.pop();
    }
}

impl MixedA {
    pub fn new(mut coeffs: Vec<XPoly>, prec: usize) -> Self {
        assert!(prec >= 1, "series precision must be at least 1");
        coeffs.truncate(prec);
        trim(&mut coeffs);
        MixedA { coeffs, prec }
    }

    pub fn zero(prec: usize) -> Self {
        MixedA::new(Vec::new(), prec)
    }

    pub fn one(prec: usize) -> Self {
        MixedA::constant(XPoly::one(), prec)
    }

    pub fn constant(p: XPoly, prec: usize) -> Self {
        MixedA::new(vec![p], prec)
    }

    pub fn var_x(prec: usize) -> Self {
        MixedA::constant(XPoly::var(), prec)
    }

    pub fn var_t(prec: usize) -> Self {
        MixedA::new(vec![XPoly::zero(), XPoly::one()], prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of t^j, an exact polynomial in x.
    pub fn coeff(&self, j: usize) -> XPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(XPoly::zero)
    }

    pub fn coeffs(&self) -> &[XPoly] {
        &self.coeffs
    }

    /// t-adic order of the stored terms; `None` when zero mod precision.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn max_x_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(XPoly::deg).max()
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec <= self.prec, "truncation cannot raise precision");
        MixedA::new(self.coeffs.clone(), prec)
    }

    pub fn agrees_mod(&self, other: &Self, n: usize) -> bool {
        assert!(n <= self.prec && n <= other.prec, "comparison beyond stated precision");
        (0..n).all(|j| self.coeff(j) == other.coeff(j))
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        MixedA::new(self.coeffs.iter().map(|c| c.scalar_mul(s)).collect(), self.prec)
    }

    /// Multiplication by t^k; the result is known mod t^(prec + k).
    pub fn mul_t_pow(&self, k: usize) -> Self {
        let mut coeffs = vec![XPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        MixedA::new(coeffs, self.prec + k)
    }

    /// Exact division by t^k. The caller must know t^k divides the value.
    pub fn div_t_pow(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.prec <= k {
            return Err(Error::PrecisionExhausted(format!(
                "cannot divide by t^{k} at precision {}",
                self.prec
            )));
        }
        assert!(
            self.coeffs.iter().take(k).all(XPoly::is_zero),
            "series is not divisible by t^{k}"
        );
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Ok(MixedA::new(coeffs, self.prec - k))
    }

    /// Inverse of a unit. Units of k[x][[t]] have a nonzero constant (in
    /// both x and t) leading coefficient.
    pub fn unit_inverse(&self) -> Result<Self> {
        let f0 = self.coeff(0);
        if f0.is_zero() || !f0.is_constant() {
            return Err(Error::NotAUnit);
        }
        let c0i = f0.coeff(0).inverse()?;
        let mut out: Vec<XPoly> = vec![XPoly::constant(c0i.clone())];
        for n in 1..self.prec {
            let mut acc = XPoly::zero();
            for j in 1..=n {
                acc = &acc + &(&self.coeff(j) * &out[n - j]);
            }
            out.push((-&acc).scalar_mul(&c0i));
        }
        Ok(MixedA::new(out, self.prec))
    }

    /// Square root of a series whose t-constant term is a nonzero square
    /// in the coefficient field (a scalar, not a higher-degree polynomial).
    pub fn unit_sqrt(&self, field_d: Option<i64>) -> Result<Self> {
        let f0 = self.coeff(0);
        if f0.is_zero() || !f0.is_constant() {
            return Err(Error::ConstantNotASquare);
        }
        let r0 = f0.coeff(0).sqrt_in(field_d).ok_or(Error::ConstantNotASquare)?;
        let inv2r0 = (&Scalar::from_integer(2) * &r0).inverse()?;
        let mut out: Vec<XPoly> = vec![XPoly::constant(r0)];
        for n in 1..self.prec {
            let mut acc = self.coeff(n);
            for i in 1..n {
                acc = &acc - &(&out[i] * &out[n - i]);
            }
            out.push(acc.scalar_mul(&inv2r0));
        }
        Ok(MixedA::new(out, self.prec))
    }
}

impl Add for &MixedA {
    type Output = MixedA;
    fn add(self, rhs: &MixedA) -> MixedA {
        let prec = self.prec.min(rhs.prec);
        let len = self.coeffs.len().max(rhs.coeffs.len()).min(prec);
        let coeffs = (0..len).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect();
        MixedA::new(coeffs, prec)
    }
}

impl Sub for &MixedA {
    type Output = MixedA;
    fn sub(self, rhs: &MixedA) -> MixedA {
        self + &(-rhs)
    }
}

impl Neg for &MixedA {
    type Output = MixedA;
    fn neg(self) -> MixedA {
        MixedA::new(self.coeffs.iter().map(|c| -c).collect(), self.prec)
    }
}

impl Mul for &MixedA {
    type Output = MixedA;
    fn mul(self, rhs: &MixedA) -> MixedA {
        let prec = self.prec.min(rhs.prec);
        let mut coeffs = vec![XPoly::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        MixedA::new(coeffs, prec)
    }
}
