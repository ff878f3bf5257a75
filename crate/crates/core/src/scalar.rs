//! Exact coefficient arithmetic: the rationals and real or imaginary
//! quadratic extensions Q(sqrt(d)) with d squarefree, d != 0, 1.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with exact rational parts. Plain
//! rationals carry no extension tag, so they mix freely with elements of
//! any single Q(sqrt(d)); combining two distinct extensions is a bug in
//! the caller and panics.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// The coefficient field of a computation: Q or Q(sqrt(d)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientField {
    Rationals,
    Quadratic { d: i64 },
}

/// Level of a field: the least number of squares summing to -1, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// -1 is not a sum of squares; the field is formally real.
    Infinite,
    Finite(u32),
}

fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

impl CoefficientField {
    /// Validates the extension descriptor.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidExtension { d });
        }
        Ok(CoefficientField::Quadratic { d })
    }

    pub fn ext(&self) -> Option<i64> {
        match self {
            CoefficientField::Rationals => None,
            CoefficientField::Quadratic { d } => Some(*d),
        }
    }

    /// Formally real fields are Q and the real quadratic extensions.
    pub fn is_formally_real(&self) -> bool {
        matches!(self, CoefficientField::Rationals) || matches!(self, CoefficientField::Quadratic { d } if *d > 0)
    }

    /// Level of the field. For imaginary Q(sqrt(-m)) this is 1 for m = 1,
    /// 4 for m = 7 mod 8 (where 2 splits), and 2 otherwise.
    pub fn level(&self) -> Level {
        match self {
            CoefficientField::Rationals => Level::Infinite,
            CoefficientField::Quadratic { d } if *d > 0 => Level::Infinite,
            CoefficientField::Quadratic { d } => {
                let m = d.unsigned_abs();
                if m == 1 {
                    Level::Finite(1)
                } else if m % 8 == 7 {
                    Level::Finite(4)
                } else {
                    Level::Finite(2)
                }
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match x.ext {
            None => true,
            Some(d) => self.ext() == Some(d),
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "q"),
            CoefficientField::Quadratic { d } => write!(f, "q-sqrt:{d}"),
        }
    }
}

/// An exact element `a + b*sqrt(d)`. Invariant: `ext` is `None` iff `b = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    ext: Option<i64>,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Floor square root check: `Some(r)` iff `n = r*r` with `r >= 0`.
fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// `Some(s)` iff the nonnegative rational q has an exact square root s.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = perfect_sqrt(q.numer())?;
    let d = perfect_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn unify_ext(x: Option<i64>, y: Option<i64>) -> Option<i64> {
    match (x, y) {
        (None, e) | (e, None) => e,
        (Some(d1), Some(d2)) => {
            assert_eq!(d1, d2, "mixed quadratic extensions sqrt({d1}) and sqrt({d2})");
            Some(d1)
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero(), ext: None }
    }

    pub fn one() -> Self {
        Scalar { a: BigRational::one(), b: BigRational::zero(), ext: None }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar { a: big(n), b: BigRational::zero(), ext: None }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), ext: None }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The generator sqrt(d) of Q(sqrt(d)).
    pub fn sqrt_gen(field: &CoefficientField) -> Result<Self> {
        match field.ext() {
            Some(d) => Ok(Scalar::quadratic(BigRational::zero(), BigRational::one(), d)),
            None => Err(Error::InvalidExtension { d: 1 }),
        }
    }

    /// Builds `a + b*sqrt(d)`, normalizing the extension tag away when b = 0.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            Scalar { a, b, ext: None }
        } else {
            Scalar { a, b, ext: Some(d) }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn ext(&self) -> Option<i64> {
        self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Field norm `a^2 - d b^2`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        match self.ext {
            None => &self.a * &self.a,
            Some(d) => &self.a * &self.a - big(d) * &self.b * &self.b,
        }
    }

    pub fn conj(&self) -> Self {
        match self.ext {
            None => self.clone(),
            Some(d) => Scalar::quadratic(self.a.clone(), -self.b.clone(), d),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Scalar {
            a: &c.a / &n,
            b: &c.b / &n,
            ext: c.ext,
        })
    }

    /// Whether the element is a square inside Q(sqrt(d)) (or Q when untagged
    /// and `field_d` is None). A rational r is a square iff r or r/d is a
    /// square in Q; for b != 0 the norm must be a square e^2 with
    /// (a + e)/2 or (a - e)/2 a rational square.
    pub fn is_square_in(&self, field_d: Option<i64>) -> bool {
        self.sqrt_in(field_d).is_some()
    }

    /// Canonical square root in the field, if one exists: the root whose
    /// rational part is positive (or, failing that, whose radical part is
    /// nonnegative).
    pub fn sqrt_in(&self, field_d: Option<i64>) -> Option<Scalar> {
        let d = unify_ext(self.ext, field_d);
        if self.b.is_zero() {
            if self.a.is_zero() {
                return Some(Scalar::zero());
            }
            if !self.a.is_negative() {
                if let Some(r) = rational_sqrt(&self.a) {
                    return Some(Scalar::from_rational(r));
                }
            }
            if let Some(d) = d {
                let q = &self.a / big(d);
                if !q.is_negative() {
                    if let Some(r) = rational_sqrt(&q) {
                        return Some(Scalar::quadratic(BigRational::zero(), r, d));
                    }
                }
            }
            return None;
        }
        let d = d.expect("radical part without extension tag");
        let e = rational_sqrt(&self.norm())?;
        for cand in [(&self.a + &e) / big(2), (&self.a - &e) / big(2)] {
            if cand.is_negative() {
                continue;
            }
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (big(2) * &x);
                let root = Scalar::quadratic(x, y, d);
                return Some(Self::canonical_sign(root));
            }
        }
        None
    }

    fn canonical_sign(r: Scalar) -> Scalar {
        let flip = if r.a.is_zero() { r.b.is_negative() } else { r.a.is_negative() };
        if flip {
            -&r
        } else {
            r
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let ext = unify_ext(self.ext, rhs.ext);
        let b = &self.b + &rhs.b;
        Scalar::quadratic(&self.a + &rhs.a, b, ext.unwrap_or(0))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone(), ext: self.ext }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let ext = unify_ext(self.ext, rhs.ext);
        let mut a = &self.a * &rhs.a;
        if let Some(d) = ext {
            a += big(d) * &self.b * &rhs.b;
        }
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::quadratic(a, b, ext.unwrap_or(0))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    // field division is multiplication by the inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inverse().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*r", self.b)
        } else {
            write!(f, "({} + {}*r)", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> CoefficientField {
        CoefficientField::quadratic(2).unwrap()
    }

    #[test]
    fn extension_descriptor_validation() {
        assert!(CoefficientField::quadratic(0).is_err());
        assert!(CoefficientField::quadratic(1).is_err());
        assert!(CoefficientField::quadratic(4).is_err());
        assert!(CoefficientField::quadratic(12).is_err());
        assert!(CoefficientField::quadratic(-4).is_err());
        assert!(CoefficientField::quadratic(2).is_ok());
        assert!(CoefficientField::quadratic(-1).is_ok());
        assert!(CoefficientField::quadratic(-165).is_ok());
    }

    #[test]
    fn levels() {
        assert_eq!(CoefficientField::Rationals.level(), Level::Infinite);
        assert_eq!(q2().level(), Level::Infinite);
        assert_eq!(CoefficientField::quadratic(-1).unwrap().level(), Level::Finite(1));
        assert_eq!(CoefficientField::quadratic(-2).unwrap().level(), Level::Finite(2));
        assert_eq!(CoefficientField::quadratic(-5).unwrap().level(), Level::Finite(2));
        assert_eq!(CoefficientField::quadratic(-7).unwrap().level(), Level::Finite(4));
        assert_eq!(CoefficientField::quadratic(-15).unwrap().level(), Level::Finite(4));
        assert!(!CoefficientField::quadratic(-1).unwrap().is_formally_real());
        assert!(q2().is_formally_real());
    }

    #[test]
    fn field_arithmetic_in_q_sqrt2() {
        let r = Scalar::sqrt_gen(&q2()).unwrap();
        assert_eq!(&r * &r, Scalar::from_integer(2));
        let x = &Scalar::from_integer(1) + &r; // 1 + sqrt(2)
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        // (1 + sqrt2)^-1 = -1 + sqrt2
        assert_eq!(y, &r - &Scalar::one());
    }

    #[test]
    fn square_roots() {
        let f2 = Some(2);
        assert_eq!(
            Scalar::ratio(9, 4).sqrt_in(None),
            Some(Scalar::ratio(3, 2))
        );
        assert_eq!(Scalar::from_integer(7).sqrt_in(None), None);
        // 2 is a square in Q(sqrt 2), with canonical root sqrt(2) itself.
        let r = Scalar::quadratic(big(0), big(1), 2);
        assert_eq!(Scalar::from_integer(2).sqrt_in(f2), Some(r.clone()));
        // (1 + sqrt2)^2 = 3 + 2 sqrt2 round-trips to the positive root.
        let x = &Scalar::one() + &r;
        assert_eq!((&x * &x).sqrt_in(f2), Some(x));
        // -4 is a square in Q(i) only.
        assert_eq!(Scalar::from_integer(-4).sqrt_in(None), None);
        assert_eq!(
            Scalar::from_integer(-4).sqrt_in(Some(-1)),
            Some(Scalar::quadratic(big(0), big(2), -1))
        );
        // 3 + 2 sqrt2 has norm 1; 7 + 2 sqrt2 has non-square norm.
        let bad = Scalar::quadratic(big(7), big(2), 2);
        assert_eq!(bad.sqrt_in(f2), None);
    }

    #[test]
    fn canonical_form_drops_tag_on_rational() {
        let r = Scalar::sqrt_gen(&q2()).unwrap();
        let two = &r * &r;
        assert_eq!(two.ext(), None);
        assert!(two.is_rational());
    }
}
