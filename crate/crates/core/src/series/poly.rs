//! Dense polynomials in one distinguished variable.
//!
//! [`XPoly`] is an exact polynomial over the coefficient field, used both
//! for the polynomial parts of k[x][[t]] and for exact computations in
//! k[t]. [`PolyB`] is k[[t]][x]: a polynomial in x whose coefficients are
//! t-adic series sharing one precision. [`TnPoly`] is a polynomial in the
//! last series variable tn with coefficients in k[[t1,...,t_{n-1}]].

use crate::scalar::Scalar;
use crate::series::multi::MultiSeries;
use crate::series::uni::UniSeries;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact dense polynomial over the coefficient field.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoly {
    coeffs: Vec<Scalar>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        XPoly::new(vec![c])
    }

    pub fn var() -> Self {
        XPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn monomial(deg: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); deg];
        coeffs.push(c);
        XPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        XPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = XPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division by a nonzero divisor: self = q * div + r with
    /// deg r < deg div.
    pub fn divrem(&self, div: &XPoly) -> (XPoly, XPoly) {
        let d = div.deg().expect("division by the zero polynomial");
        let lead_inv = div.leading().unwrap().inverse().expect("zero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Scalar::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let c = &rem[rem.len() - 1] * &lead_inv;
            if !c.is_zero() {
                for i in 0..=d {
                    let v = &rem[k + i] - &(&c * &div.coeff(i));
                    rem[k + i] = v;
                }
                quo[k] = c;
            }
            rem.pop();
        }
        (XPoly::new(quo), XPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &XPoly) -> XPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            None => a,
            Some(l) => {
                let li = l.inverse().unwrap();
                a.scalar_mul(&li)
            }
        }
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        XPoly::new(coeffs)
    }
}

/// A polynomial in x over k[[t]]; every coefficient shares one precision.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyB {
    coeffs: Vec<UniSeries>,
    prec: usize,
}

impl PolyB {
    pub fn new(coeffs: Vec<UniSeries>, prec: usize) -> Self {
        assert!(prec >= 1);
        let mut coeffs: Vec<UniSeries> = coeffs
            .into_iter()
            .map(|c| {
                assert!(c.prec() >= prec, "coefficient precision below the shared precision");
                if c.prec() == prec {
                    c
                } else {
                    c.truncate(prec)
                }
            })
            .collect();
        while coeffs.last().is_some_and(UniSeries::is_zero) {
            coeffs.pop();
        }
        PolyB { coeffs, prec }
    }

    pub fn zero(prec: usize) -> Self {
        PolyB::new(Vec::new(), prec)
    }

    pub fn constant(c: UniSeries) -> Self {
        let prec = c.prec();
        PolyB::new(vec![c], prec)
    }

    pub fn var_x(prec: usize) -> Self {
        PolyB::new(vec![UniSeries::zero(prec), UniSeries::one(prec)], prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> UniSeries {
        self.coeffs.get(i).cloned().unwrap_or_else(|| UniSeries::zero(self.prec))
    }

    pub fn coeffs(&self) -> &[UniSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The polynomial in x of the t-constant parts.
    pub fn at_t_zero(&self) -> XPoly {
        XPoly::new(self.coeffs.iter().map(UniSeries::constant_term).collect())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        PolyB::new(self.coeffs.clone(), prec)
    }

    pub fn agrees_mod(&self, other: &Self, n: usize) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i).agrees_mod(&other.coeff(i), n))
    }
}

impl Add for &PolyB {
    type Output = PolyB;
    fn add(self, rhs: &PolyB) -> PolyB {
        let prec = self.prec.min(rhs.prec);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyB::new(
            (0..len).map(|i| (&self.coeff(i) + &rhs.coeff(i)).with_prec(prec)).collect(),
            prec,
        )
    }
}

impl Sub for &PolyB {
    type Output = PolyB;
    fn sub(self, rhs: &PolyB) -> PolyB {
        self + &(-rhs)
    }
}

impl Neg for &PolyB {
    type Output = PolyB;
    fn neg(self) -> PolyB {
        PolyB::new(self.coeffs.iter().map(|c| -c).collect(), self.prec)
    }
}

impl Mul for &PolyB {
    type Output = PolyB;
    fn mul(self, rhs: &PolyB) -> PolyB {
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return PolyB::zero(prec);
        }
        let mut coeffs = vec![UniSeries::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolyB::new(coeffs, prec)
    }
}

/// A polynomial in the last series variable tn over k[[t1,...,t_{n-1}]].
/// `base_vars` is n-1; every coefficient shares one precision.
#[derive(Debug, Clone, PartialEq)]
pub struct TnPoly {
    coeffs: Vec<MultiSeries>,
    base_vars: usize,
    prec: usize,
}

impl TnPoly {
    pub fn new(coeffs: Vec<MultiSeries>, base_vars: usize, prec: usize) -> Self {
        assert!(prec >= 1);
        let mut coeffs: Vec<MultiSeries> = coeffs
            .into_iter()
            .map(|c| {
                assert_eq!(c.nvars(), base_vars, "coefficient arity mismatch");
                assert!(c.prec() >= prec, "coefficient precision below the shared precision");
                if c.prec() == prec {
                    c
                } else {
                    c.truncate(prec)
                }
            })
            .collect();
        while coeffs.last().is_some_and(MultiSeries::is_zero) {
            coeffs.pop();
        }
        TnPoly { coeffs, base_vars, prec }
    }

    pub fn zero(base_vars: usize, prec: usize) -> Self {
        TnPoly::new(Vec::new(), base_vars, prec)
    }

    pub fn constant(c: MultiSeries) -> Self {
        let (b, p) = (c.nvars(), c.prec());
        TnPoly::new(vec![c], b, p)
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn deg_tn(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> MultiSeries {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| MultiSeries::zero(self.base_vars, self.prec))
    }

    pub fn coeffs(&self) -> &[MultiSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The exact polynomial in tn obtained by setting t1 = ... = t_{n-1} = 0.
    pub fn at_tprime_zero(&self) -> XPoly {
        XPoly::new(self.coeffs.iter().map(MultiSeries::constant_term).collect())
    }

    /// View in the full n-variable series ring. The stated precision is the
    /// shared coefficient precision (conservative).
    pub fn to_series(&self) -> MultiSeries {
        let n = self.base_vars + 1;
        let mut out = MultiSeries::zero(n, self.prec);
        for (j, c) in self.coeffs.iter().enumerate() {
            for (e, s) in c.terms() {
                let mut ne = e.clone();
                ne.push(j as u32);
                out.insert_add(ne, s.clone());
            }
        }
        out
    }

    pub fn truncate(&self, prec: usize) -> Self {
        TnPoly::new(self.coeffs.clone(), self.base_vars, prec)
    }
}

impl Add for &TnPoly {
    type Output = TnPoly;
    fn add(self, rhs: &TnPoly) -> TnPoly {
        assert_eq!(self.base_vars, rhs.base_vars);
        let prec = self.prec.min(rhs.prec);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        TnPoly::new(
            (0..len).map(|i| (&self.coeff(i) + &rhs.coeff(i)).with_prec(prec)).collect(),
            self.base_vars,
            prec,
        )
    }
}

impl Sub for &TnPoly {
    type Output = TnPoly;
    fn sub(self, rhs: &TnPoly) -> TnPoly {
        self + &(-rhs)
    }
}

impl Neg for &TnPoly {
    type Output = TnPoly;
    fn neg(self) -> TnPoly {
        TnPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.base_vars, self.prec)
    }
}

impl Mul for &TnPoly {
    type Output = TnPoly;
    fn mul(self, rhs: &TnPoly) -> TnPoly {
        assert_eq!(self.base_vars, rhs.base_vars);
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return TnPoly::zero(self.base_vars, prec);
        }
        let mut coeffs =
            vec![MultiSeries::zero(self.base_vars.max(1), prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TnPoly::new(coeffs, self.base_vars, prec)
    }
}
