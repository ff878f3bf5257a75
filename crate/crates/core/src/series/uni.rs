//! Dense univariate power series k[[t]] truncated at a stated t-adic
//! precision. A value with precision N is known exactly modulo t^N.
//!
//! Binary operations take the minimum of the operand precisions. The
//! t-power shift operations are the only ones that move precision, and
//! they do so by exactly the shifted amount, which is justified: if f is
//! known mod t^N then t^k f is known mod t^(N+k).

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct UniSeries {
    coeffs: Vec<Scalar>,
    prec: usize,
}

fn trim(coeffs: &mut Vec<Scalar>) {
    while coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
}

impl UniSeries {
    pub fn new(mut coeffs: Vec<Scalar>, prec: usize) -> Self {
        assert!(prec >= 1, "series precision must be at least 1");
        coeffs.truncate(prec);
        trim(&mut coeffs);
        UniSeries { coeffs, prec }
    }

    pub fn zero(prec: usize) -> Self {
        UniSeries::new(Vec::new(), prec)
    }

    pub fn one(prec: usize) -> Self {
        UniSeries::constant(Scalar::one(), prec)
    }

    pub fn constant(c: Scalar, prec: usize) -> Self {
        UniSeries::new(vec![c], prec)
    }

    /// The series t.
    pub fn var(prec: usize) -> Self {
        UniSeries::new(vec![Scalar::zero(), Scalar::one()], prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// t-adic order of the stored terms; `None` when zero mod precision.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec <= self.prec, "truncation cannot raise precision");
        UniSeries::new(self.coeffs.clone(), prec)
    }

    pub(crate) fn with_prec(mut self, prec: usize) -> Self {
        assert!(prec >= 1);
        self.coeffs.truncate(prec);
        trim(&mut self.coeffs);
        self.prec = prec;
        self
    }

    /// Whether the two series agree modulo t^n.
    pub fn agrees_mod(&self, other: &Self, n: usize) -> bool {
        assert!(n <= self.prec && n <= other.prec, "comparison beyond stated precision");
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        UniSeries::new(self.coeffs.iter().map(|c| c * s).collect(), self.prec)
    }

    /// Multiplication by t^k; the result is known mod t^(prec + k).
    pub fn mul_t_pow(&self, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniSeries::new(coeffs, self.prec + k)
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
            self.coeffs.iter().take(k).all(Scalar::is_zero),
            "series is not divisible by t^{k}"
        );
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Ok(UniSeries::new(coeffs, self.prec - k))
    }

    /// Inverse of a unit (nonzero constant term), at the same precision.
    pub fn unit_inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0i = c0.inverse()?;
        let mut out = vec![c0i.clone()];
        for n in 1..self.prec {
            let mut acc = Scalar::zero();
            for j in 1..=n {
                acc = &acc + &(&self.coeff(j) * &out[n - j]);
            }
            out.push(-&(&c0i * &acc));
        }
        Ok(UniSeries::new(out, self.prec))
    }

    /// Square root of a series whose constant term is a nonzero square in
    /// the coefficient field; the root with canonical constant term.
    pub fn unit_sqrt(&self, field_d: Option<i64>) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ConstantNotASquare);
        }
        let r0 = c0.sqrt_in(field_d).ok_or(Error::ConstantNotASquare)?;
        let half = Scalar::ratio(1, 2);
        let inv2r0 = &half * &r0.inverse()?;
        let mut out = vec![r0];
        for n in 1..self.prec {
            let mut acc = self.coeff(n);
            for i in 1..n {
                acc = &acc - &(&out[i] * &out[n - i]);
            }
            out.push(&inv2r0 * &acc);
        }
        Ok(UniSeries::new(out, self.prec))
    }
}

impl Add for &UniSeries {
    type Output = UniSeries;
    fn add(self, rhs: &UniSeries) -> UniSeries {
        let prec = self.prec.min(rhs.prec);
        let len = self.coeffs.len().max(rhs.coeffs.len()).min(prec);
        let coeffs = (0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UniSeries::new(coeffs, prec)
    }
}

impl Sub for &UniSeries {
    type Output = UniSeries;
    fn sub(self, rhs: &UniSeries) -> UniSeries {
        self + &(-rhs)
    }
}

impl Neg for &UniSeries {
    type Output = UniSeries;
    fn neg(self) -> UniSeries {
        UniSeries::new(self.coeffs.iter().map(|c| -c).collect(), self.prec)
    }
}

impl Mul for &UniSeries {
    type Output = UniSeries;
    fn mul(self, rhs: &UniSeries) -> UniSeries {
        let prec = self.prec.min(rhs.prec);
        let mut coeffs = vec![Scalar::zero(); prec.min(self.coeffs.len() + rhs.coeffs.len()).max(1)];
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
        UniSeries::new(coeffs, prec)
    }
}
