//! Division with remainder by a series that is regular in the last variable,
//! the unit-times-distinguished-polynomial factorization this yields, linear
//! coordinate changes that force regularity, and the analogous division in
//! `k[x][[t]]` by a divisor with invertible t-constant part.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{MixedA, MultiSeries, PolyB, TnPoly, UniSeries, XPoly};

/// Order of vanishing of `f(0, ..., 0, tn)` in tn.
///
/// Errors with `NotRegular` when that restriction is zero modulo the stated
/// precision (including `f == 0`).
pub fn order_in_tn(f: &MultiSeries) -> Result<usize> {
    f.at_tprime_zero().ord().ok_or(Error::NotRegular)
}

/// Outcome of dividing by a series of tn-order s: `g = q*f + r` with
/// `deg_tn r < s`, both sides known modulo total degree `prec`.
#[derive(Debug, Clone)]
pub struct SeriesDivision {
    pub quotient: MultiSeries,
    pub remainder: TnPoly,
    pub prec: usize,
}

/// Divides `g` by a series `f` regular of order s in the last variable.
///
/// Runs a fixpoint iteration at the shared working precision
/// `w = min(prec f, prec g)`; the results are reliable modulo total degree
/// `w - s` and are returned at that precision after an internal recheck of
/// the defining identity.
pub fn weierstrass_divide(g: &MultiSeries, f: &MultiSeries) -> Result<SeriesDivision> {
    assert_eq!(g.nvars(), f.nvars(), "operands live in different rings");
    let n = f.nvars();
    let s = order_in_tn(f)?;
    let w = f.prec().min(g.prec());
    let f = f.truncate(w);
    let g = g.truncate(w);
    if s == 0 {
        // f is a unit; the remainder space (tn-degree < 0) is trivial.
        let quotient = &g * &f.unit_inverse()?;
        return Ok(SeriesDivision {
            quotient,
            remainder: TnPoly::zero(n - 1, w),
            prec: w,
        });
    }
    if w <= s {
        return Err(Error::PrecisionExhausted(format!(
            "dividing by tn-order {s} needs precision greater than {s}, have {w}"
        )));
    }
    let out_prec = w - s;

    // f = low + tn^s * high with high invertible and every term of low of
    // positive degree in t1..t_{n-1}. The iteration q <- high^-1 * cof(g - q*low)
    // (cof extracts the tn^s cofactor) gains one t'-order per round, so it
    // reaches an exact fixpoint at working precision in at most w+1 rounds.
    let (low, high) = f.split_tn(s);
    let inv = high.with_prec(w).unit_inverse()?;
    let mut q = MultiSeries::zero(n, w);
    let mut low_rem = MultiSeries::zero(n, w);
    let mut stable = false;
    for _ in 0..=w + 1 {
        let h = &g - &(&q * &low);
        let (hl, hh) = h.split_tn(s);
        let q_next = &inv * &hh.with_prec(w);
        if q_next == q && hl == low_rem {
            stable = true;
            break;
        }
        q = q_next;
        low_rem = hl;
    }
    if !stable {
        return Err(Error::PrecisionExhausted(
            "tn-division did not stabilize within the precision budget".into(),
        ));
    }

    let quotient = q.truncate(out_prec);
    let mut rcoeffs = Vec::with_capacity(s);
    for j in 0..s as u32 {
        rcoeffs.push(low_rem.tn_coefficient(j)?.truncate(out_prec));
    }
    let remainder = TnPoly::new(rcoeffs, n - 1, out_prec);

    let recomposed = &(&quotient * &f) + &remainder.to_series();
    if !recomposed.agrees_mod(&g, out_prec) {
        return Err(Error::ValueMismatch(
            "tn-division identity failed its internal recheck".into(),
        ));
    }
    Ok(SeriesDivision { quotient, remainder, prec: out_prec })
}

/// Factorization `f = unit * distinguished` where `distinguished` is monic of
/// degree `order` in tn and congruent to `tn^order` on the tn-axis.
#[derive(Debug, Clone)]
pub struct WeierstrassData {
    pub order: usize,
    pub unit: MultiSeries,
    pub distinguished: TnPoly,
    pub prec: usize,
}

/// Factors a series regular of order s in tn as a unit times a monic
/// tn-polynomial of degree s whose lower coefficients vanish at t' = 0.
///
/// Obtained by dividing tn^s by f: the distinguished factor is tn^s minus the
/// remainder and the unit is the inverse of the quotient. Results carry
/// precision `prec(f) - s`.
pub fn weierstrass_prepare(f: &MultiSeries) -> Result<WeierstrassData> {
    let n = f.nvars();
    let s = order_in_tn(f)?;
    if s == 0 {
        let one = TnPoly::new(vec![MultiSeries::one(n - 1, f.prec())], n - 1, f.prec());
        return Ok(WeierstrassData {
            order: 0,
            unit: f.clone(),
            distinguished: one,
            prec: f.prec(),
        });
    }
    if f.prec() <= s {
        return Err(Error::PrecisionExhausted(format!(
            "factoring at tn-order {s} needs precision greater than {s}, have {}",
            f.prec()
        )));
    }
    let mut e = vec![0u32; n];
    e[n - 1] = s as u32;
    let tns = MultiSeries::monomial(e, Scalar::one(), f.prec());
    let div = weierstrass_divide(&tns, f)?;
    let out_prec = div.prec;

    let mut pcoeffs: Vec<MultiSeries> = (0..s).map(|j| -&div.remainder.coeff(j)).collect();
    pcoeffs.push(MultiSeries::one(n - 1, out_prec));
    let distinguished = TnPoly::new(pcoeffs, n - 1, out_prec);
    if distinguished.at_tprime_zero() != XPoly::monomial(s, Scalar::one()) {
        return Err(Error::ValueMismatch(
            "factor is not distinguished: the remainder does not vanish on the tn-axis".into(),
        ));
    }
    let unit = div.quotient.unit_inverse()?;
    let recomposed = &unit * &distinguished.to_series();
    if !recomposed.agrees_mod(f, out_prec) {
        return Err(Error::ValueMismatch(
            "unit-times-distinguished recomposition failed its internal recheck".into(),
        ));
    }
    Ok(WeierstrassData { order: s, unit, distinguished, prec: out_prec })
}

/// A coordinate change `ti -> ti + lambda_i * tn^{c_i}` on a chosen subset of
/// the first n-1 variables, with tn fixed. Degree-preserving upward, so it
/// maps a series known mod deg N to one known mod deg N.
#[derive(Debug, Clone, PartialEq)]
pub struct Substitution {
    nvars: usize,
    shifts: Vec<Option<(Scalar, u32)>>,
}

impl Substitution {
    pub fn identity(nvars: usize) -> Self {
        assert!(nvars >= 1);
        Substitution { nvars, shifts: vec![None; nvars - 1] }
    }

    /// Builds from `(variable index, lambda, power)` triples; indices are
    /// 0-based among the first n-1 variables.
    pub fn new(nvars: usize, assignments: &[(usize, Scalar, u32)]) -> Self {
        let mut sub = Substitution::identity(nvars);
        for (i, lambda, c) in assignments {
            assert!(*i < nvars - 1, "only the first n-1 variables may be shifted");
            assert!(*c >= 1, "shift powers must be positive");
            assert!(!lambda.is_zero(), "zero shifts should be omitted");
            assert!(sub.shifts[*i].is_none(), "duplicate shift for one variable");
            sub.shifts[*i] = Some((lambda.clone(), *c));
        }
        sub
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_identity(&self) -> bool {
        self.shifts.iter().all(Option::is_none)
    }

    /// The shifted variables as `(index, lambda, power)` triples.
    pub fn assignments(&self) -> Vec<(usize, Scalar, u32)> {
        self.shifts
            .iter()
            .enumerate()
            .filter_map(|(i, sh)| sh.as_ref().map(|(l, c)| (i, l.clone(), *c)))
            .collect()
    }

    /// The inverse change `ti -> ti - lambda_i * tn^{c_i}`; exact because tn
    /// itself is fixed.
    pub fn inverse(&self) -> Self {
        Substitution {
            nvars: self.nvars,
            shifts: self
                .shifts
                .iter()
                .map(|sh| sh.as_ref().map(|(l, c)| (-l, *c)))
                .collect(),
        }
    }

    /// Applies the change of variables by exact binomial expansion of each
    /// monomial. The stated precision is preserved.
    pub fn apply(&self, f: &MultiSeries) -> MultiSeries {
        assert_eq!(f.nvars(), self.nvars, "substitution arity mismatch");
        if self.is_identity() {
            return f.clone();
        }
        let n = self.nvars;
        let mut out = MultiSeries::zero(n, f.prec());
        for (e, c) in f.terms() {
            let mut base = e.clone();
            let mut active: Vec<(usize, u32)> = Vec::new();
            for (i, sh) in self.shifts.iter().enumerate() {
                if sh.is_some() && e[i] > 0 {
                    active.push((i, e[i]));
                    base[i] = 0;
                }
            }
            let mut parts: Vec<(Vec<u32>, Scalar)> = vec![(base, c.clone())];
            for (i, a) in active {
                let (lambda, power) = self.shifts[i].as_ref().unwrap();
                let mut next = Vec::with_capacity(parts.len() * (a as usize + 1));
                for (exps, sc) in &parts {
                    // (ti + lambda tn^power)^a, binomial by binomial
                    let mut binom = BigInt::from(1);
                    let mut lam_pow = Scalar::one();
                    for j in 0..=a {
                        if j > 0 {
                            binom = binom * BigInt::from(i64::from(a - j + 1))
                                / BigInt::from(i64::from(j));
                            lam_pow = &lam_pow * lambda;
                        }
                        let mut ne = exps.clone();
                        ne[i] += a - j;
                        ne[n - 1] += power * j;
                        let b = Scalar::from_rational(BigRational::from(binom.clone()));
                        next.push((ne, sc * &(&b * &lam_pow)));
                    }
                }
                parts = next;
            }
            for (exps, sc) in parts {
                out.insert_add(exps, sc);
            }
        }
        out
    }
}

const LAMBDA_LADDER: [i64; 4] = [1, -1, 2, -2];
const MAX_SHIFT_POWER: u32 = 2;

/// Finds one coordinate change making every series in the family regular in
/// tn, searching deterministically: the identity first, then for each power
/// c = 1, 2 ever larger subsets of shifted variables (singletons before
/// pairs, lexicographic within a size), with the same coefficient
/// lambda in 1, -1, 2, -2 applied to all selected variables.
///
/// A zero series can never be made regular and is rejected up front.
pub fn regularize(fs: &[MultiSeries]) -> Result<Substitution> {
    let n = fs.first().map_or(1, MultiSeries::nvars);
    for f in fs {
        assert_eq!(f.nvars(), n, "family members live in different rings");
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
    }
    let mut tried = 0usize;
    for cand in candidates(n) {
        tried += 1;
        if fs.iter().all(|f| order_in_tn(&cand.apply(f)).is_ok()) {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no regularizing substitution among {tried} candidates \
         (powers 1..={MAX_SHIFT_POWER}, coefficients {LAMBDA_LADDER:?})"
    )))
}

fn candidates(n: usize) -> Vec<Substitution> {
    let mut out = vec![Substitution::identity(n)];
    for c in 1..=MAX_SHIFT_POWER {
        for size in 1..n {
            for subset in subsets(n - 1, size) {
                for lam in LAMBDA_LADDER {
                    let triples: Vec<(usize, Scalar, u32)> = subset
                        .iter()
                        .map(|&i| (i, Scalar::from_integer(lam), c))
                        .collect();
                    out.push(Substitution::new(n, &triples));
                }
            }
        }
    }
    out
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Outcome of dividing in `k[x][[t]]` by a divisor whose t-constant part is a
/// nonzero polynomial: `g = q*f + r` with every t-level of `r` of x-degree
/// below `deg f(x, 0)`.
#[derive(Debug, Clone)]
pub struct MixedDivision {
    pub quotient: MixedA,
    pub remainder: PolyB,
}

/// Divides level by level in t: at each t-level the contribution of lower
/// quotient levels is subtracted and the rest is divided by `f(x, 0)` in
/// `k[x]`. Exact in t, so the identity holds at the shared precision.
pub fn mixed_divide(g: &MixedA, f: &MixedA) -> Result<MixedDivision> {
    let w = g.prec().min(f.prec());
    let f0 = f.coeff(0);
    if f0.is_zero() {
        return Err(Error::NotRegular);
    }
    let mut qlevels: Vec<XPoly> = Vec::with_capacity(w);
    let mut rlevels: Vec<XPoly> = Vec::with_capacity(w);
    for level in 0..w {
        let mut rhs = g.coeff(level);
        for j in 1..=level {
            rhs = &rhs - &(&f.coeff(j) * &qlevels[level - j]);
        }
        let (ql, rl) = rhs.divrem(&f0);
        qlevels.push(ql);
        rlevels.push(rl);
    }
    let quotient = MixedA::new(qlevels, w);
    let xdeg = rlevels.iter().filter_map(XPoly::deg).max().map_or(0, |d| d + 1);
    let cols: Vec<UniSeries> = (0..xdeg)
        .map(|i| UniSeries::new(rlevels.iter().map(|p| p.coeff(i)).collect(), w))
        .collect();
    let remainder = PolyB::new(cols, w);
    Ok(MixedDivision { quotient, remainder })
}
