//! Diagonal quadratic forms over the rationals: Hilbert symbols, local
//! reports, isotropy by the local-global principle with a bounded witness
//! search, torsion detection by signature, and the constructive move of
//! binary torsion blocks from series coefficients to polynomial ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{CoefficientField, Scalar};
use crate::series::convert::polyb_to_mixed;
use crate::series::{MixedA, MultiSeries, PolyB, TnPoly, UniSeries};
use crate::sos::{
    check_mixed_transfer, check_series_transfer, lemma41_transfer, lemma47_factor,
    lemma52_transfer, prop53_transform, SosCertificate, TransferResult,
};
use crate::weierstrass::{regularize, weierstrass_prepare, Substitution};

/// A place of the rationals: the real embedding or a finite prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn to_u128_abs(n: &BigInt) -> Result<u128> {
    u128::try_from(n.magnitude().clone())
        .map_err(|_| Error::BadFormat("entry too large for factorization".into()))
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn squarefree_part(q: &BigRational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let core = q.numer() * q.denom();
    let neg = core.is_negative();
    let mut n = to_u128_abs(&core)?;
    let mut out: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut mult = 0u32;
            while n % d == 0 {
                n /= d;
                mult += 1;
            }
            if mult % 2 == 1 {
                out *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    out *= n; // leftover prime
    let mut res = BigInt::from(out);
    if neg {
        res = -res;
    }
    Ok(res)
}

/// Diagonal form over the rationals, entries stored as squarefree integers
/// (the square class is all the local theory sees). The square factor taken
/// out of each entry is kept so zero witnesses can be rescaled back to the
/// coefficients the caller supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalForm {
    entries: Vec<BigInt>,
    scales: Vec<BigRational>,
}

impl DiagonalForm {
    pub fn new(coeffs: &[BigRational]) -> Result<Self> {
        let entries: Vec<BigInt> = coeffs.iter().map(squarefree_part).collect::<Result<_>>()?;
        let scales = coeffs
            .iter()
            .zip(&entries)
            .map(|(a, s)| {
                // a / s is a square of a rational by construction
                let ratio = a / BigRational::from_integer(s.clone());
                BigRational::new(ratio.numer().sqrt(), ratio.denom().sqrt())
            })
            .collect();
        Ok(DiagonalForm { entries, scales })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Squarefree representative of the determinant's square class.
    pub fn determinant_class(&self) -> Result<BigInt> {
        let prod = self.entries.iter().fold(BigInt::one(), |a, e| a * e);
        squarefree_part(&BigRational::from_integer(prod))
    }

    /// Count of positive entries minus count of negative entries.
    pub fn signature(&self) -> i64 {
        self.entries
            .iter()
            .map(|e| if e.is_positive() { 1 } else { -1 })
            .sum()
    }
}

fn val_unit(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut u = n.clone();
    while (&u % &p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol (u | p) for odd prime p and u prime to p.
fn legendre(u: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = u.mod_floor(&pb).modpow(&((&pb - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        debug_assert_eq!(r, &pb - 1);
        -1
    }
}

fn eps_mod2(u: &BigInt) -> u32 {
    // (u - 1) / 2 mod 2 for odd u
    let q: BigInt = (u - 1) / 2;
    q.mod_floor(&BigInt::from(2)).try_into().unwrap()
}

fn omega_mod2(u: &BigInt) -> u32 {
    // (u^2 - 1) / 8 mod 2 for odd u
    let q: BigInt = (u * u - 1) / 8;
    q.mod_floor(&BigInt::from(2)).try_into().unwrap()
}

fn sign_pow(e: u32) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn hilbert_int(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "symbol arguments must be nonzero");
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = val_unit(a, 2);
            let (beta, v) = val_unit(b, 2);
            let e = eps_mod2(&u) * eps_mod2(&v) + alpha * omega_mod2(&v) + beta * omega_mod2(&u);
            sign_pow(e)
        }
        Place::Prime(p) => {
            assert!(is_prime(*p) && *p % 2 == 1, "place must be prime");
            let (alpha, u) = val_unit(a, *p);
            let (beta, v) = val_unit(b, *p);
            let mut s = sign_pow(alpha * beta * u32::from(*p % 4 == 3));
            if beta % 2 == 1 {
                s *= legendre(&u, *p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, *p);
            }
            s
        }
    }
}

/// Classical Hilbert symbol (a, b) at a place, for nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "symbol arguments must be nonzero");
    hilbert_int(&(a.numer() * a.denom()), &(b.numer() * b.denom()), place)
}

/// Places where local invariants of this form can be nontrivial: the real
/// place, 2, and the odd primes dividing an entry.
pub fn relevant_places(form: &DiagonalForm) -> Result<Vec<Place>> {
    let mut places = vec![Place::Real, Place::Prime(2)];
    let mut odd: Vec<u64> = Vec::new();
    for e in &form.entries {
        let mut n = to_u128_abs(e)?;
        while n % 2 == 0 {
            n /= 2;
        }
        let mut d: u128 = 3;
        while d * d <= n {
            if n % d == 0 {
                while n % d == 0 {
                    n /= d;
                }
                odd.push(d as u64);
            }
            d += 2;
        }
        if n > 1 {
            odd.push(u64::try_from(n).map_err(|_| {
                Error::BadFormat("prime factor too large for local analysis".into())
            })?);
        }
    }
    odd.sort_unstable();
    odd.dedup();
    places.extend(odd.into_iter().map(Place::Prime));
    Ok(places)
}

/// Local data of a form at one place: the symbol (−1, −det) used by the
/// dimension-3 and -4 criteria, and the Hasse invariant Π_{i<j} (a_i, a_j).
#[derive(Debug, Clone)]
pub struct LocalSymbolReport {
    pub place: Place,
    pub hilbert: i8,
    pub hasse: i8,
}

fn hasse_invariant(form: &DiagonalForm, place: &Place) -> i8 {
    let mut s = 1i8;
    for i in 0..form.entries.len() {
        for j in i + 1..form.entries.len() {
            s *= hilbert_int(&form.entries[i], &form.entries[j], place);
        }
    }
    s
}

pub fn local_reports(form: &DiagonalForm) -> Result<Vec<LocalSymbolReport>> {
    let d = form.determinant_class()?;
    let minus_one = BigInt::from(-1);
    relevant_places(form)?
        .into_iter()
        .map(|place| {
            Ok(LocalSymbolReport {
                hilbert: hilbert_int(&minus_one, &(-&d), &place),
                hasse: hasse_invariant(form, &place),
                place,
            })
        })
        .collect()
}

fn is_square_local(d: &BigInt, place: &Place) -> bool {
    match place {
        Place::Real => d.is_positive(),
        Place::Prime(2) => {
            let (v, u) = val_unit(d, 2);
            v % 2 == 0 && u.mod_floor(&BigInt::from(8)).is_one()
        }
        Place::Prime(p) => {
            let (v, u) = val_unit(d, *p);
            v % 2 == 0 && legendre(&u, *p) == 1
        }
    }
}

/// Isotropy decision together with a zero witness when one was found by the
/// bounded search (dimensions 2..=5).
#[derive(Debug, Clone)]
pub struct IsotropyResult {
    pub isotropic: bool,
    pub witness: Option<Vec<BigRational>>,
}

/// Local-global isotropy decision over the rationals.
pub fn is_isotropic_q(form: &DiagonalForm) -> Result<IsotropyResult> {
    if form.dim() < 2 {
        return Err(Error::DimTooSmall);
    }
    let isotropic = match form.dim() {
        2 => squarefree_part(&BigRational::from_integer(-(&form.entries[0] * &form.entries[1])))?
            .is_one(),
        3 => {
            let d = form.determinant_class()?;
            let minus_one = BigInt::from(-1);
            relevant_places(form)?
                .iter()
                .all(|v| hilbert_int(&minus_one, &(-&d), v) == hasse_invariant(form, v))
        }
        4 => {
            let d = form.determinant_class()?;
            let minus_one = BigInt::from(-1);
            relevant_places(form)?.iter().all(|v| {
                !(is_square_local(&d, v)
                    && hasse_invariant(form, v) != hilbert_int(&minus_one, &minus_one, v))
            })
        }
        _ => {
            let sig = form.signature().unsigned_abs() as usize;
            sig < form.dim()
        }
    };
    let witness = if isotropic && form.dim() <= 5 {
        // the search runs on the squarefree entries; divide each coordinate
        // by the extracted square scale to get a zero of the original form
        search_witness(form).map(|w| {
            w.into_iter()
                .zip(&form.scales)
                .map(|(x, c)| x / c)
                .collect()
        })
    } else {
        None
    };
    Ok(IsotropyResult { isotropic, witness })
}

/// First zero of the form among integer tuples enumerated by height
/// (max entry) ascending and lexicographically descending within a height.
/// Entries are nonnegative; squares make signs irrelevant.
fn search_witness(form: &DiagonalForm) -> Option<Vec<BigRational>> {
    const MAX_HEIGHT: i128 = 25;
    const NODE_BUDGET: usize = 5_000_000;
    let coeffs: Vec<i128> = form
        .entries
        .iter()
        .map(|e| i128::try_from(e).ok())
        .collect::<Option<_>>()?;
    let m = coeffs.len();
    let mut budget = NODE_BUDGET;

    fn rec(
        coeffs: &[i128],
        h: i128,
        idx: usize,
        sum: i128,
        saw_h: bool,
        acc: &mut Vec<i128>,
        budget: &mut usize,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if idx == coeffs.len() {
            return sum == 0 && saw_h;
        }
        // range pruning: best-possible positive and negative contributions
        let mut hi = 0i128;
        let mut lo = 0i128;
        for &c in &coeffs[idx..] {
            if c > 0 {
                hi += c * h * h;
            } else {
                lo += c * h * h;
            }
        }
        if sum + hi < 0 || sum + lo > 0 {
            return false;
        }
        let mut x = h;
        while x >= 0 {
            acc.push(x);
            if rec(coeffs, h, idx + 1, sum + coeffs[idx] * x * x, saw_h || x == h, acc, budget) {
                return true;
            }
            acc.pop();
            x -= 1;
        }
        false
    }

    for h in 1..=MAX_HEIGHT {
        let mut acc = Vec::with_capacity(m);
        if rec(&coeffs, h, 0, 0, false, &mut acc, &mut budget) {
            return Some(acc.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect());
        }
        if budget == 0 {
            return None;
        }
    }
    None
}

/// Torsion in the Witt group of the rationals is exactly zero signature.
pub fn is_torsion_q(form: &DiagonalForm) -> bool {
    form.signature() == 0
}

/// A binary torsion block c·⟨1, −d⟩ moved into the polynomial-in-x subring:
/// `c_poly` and the transfer's certificate target replace c and d, and each
/// ratio against the input is an explicit square (its root is stored).
#[derive(Debug, Clone)]
pub struct MixedBlock {
    pub c_poly: PolyB,
    pub c_stripped: usize,
    pub c_ratio_sqrt: MixedA,
    pub c_prec: usize,
    pub d_transfer: TransferResult<MixedA, PolyB>,
}

fn polyb_shift_t(g: &PolyB, k: usize) -> PolyB {
    let cols: Vec<UniSeries> = g.coeffs().iter().map(|c| c.mul_t_pow(k)).collect();
    PolyB::new(cols, g.prec() + k)
}

fn polyb_unshift_t(g: &PolyB, k: usize) -> Result<PolyB> {
    let cols: Vec<UniSeries> =
        g.coeffs().iter().map(|c| c.div_t_pow(k)).collect::<Result<_>>()?;
    Ok(PolyB::new(cols, g.prec() - k))
}

/// Checks both halves of a mixed block: c ≡ (ratio√)²·c_poly and the stored
/// d-transfer against the original d.
pub fn check_mixed_block(c: &MixedA, d: &MixedA, block: &MixedBlock) -> bool {
    let Ok(g) = polyb_unshift_t(&block.c_poly, block.c_stripped) else {
        return false;
    };
    let sq = &block.c_ratio_sqrt * &block.c_ratio_sqrt;
    let lhs = (&sq * &polyb_to_mixed(&g)).mul_t_pow(block.c_stripped);
    lhs.prec() >= block.c_prec
        && c.prec() >= block.c_prec
        && lhs.agrees_mod(c, block.c_prec)
        && check_mixed_transfer(d, &block.d_transfer)
}

/// Moves binary torsion blocks with coefficients in `k[x][[t]]` into
/// `k[[t]][x]`: the d-side goes through the sum-of-squares transfer, the
/// c-side through the unit-times-polynomial factorization whose unit has
/// constant term 1 and is therefore an explicit square.
pub fn prop54_transfer_mixed(
    blocks: &[(MixedA, SosCertificate<MixedA>)],
    field: &CoefficientField,
) -> Result<(Substitution, Vec<MixedBlock>)> {
    let mut out = Vec::with_capacity(blocks.len());
    for (c, d_cert) in blocks {
        if !d_cert.verifies() {
            return Err(Error::CertificateInvalid(
                "a d-coefficient certificate does not verify".into(),
            ));
        }
        let d_transfer = lemma41_transfer(d_cert, field)?;
        let fac = lemma47_factor(c)?;
        let c_ratio_sqrt = fac.unit.unit_sqrt(field.ext())?;
        let block = MixedBlock {
            c_poly: polyb_shift_t(&fac.poly, fac.stripped),
            c_stripped: fac.stripped,
            c_ratio_sqrt,
            c_prec: fac.prec + fac.stripped,
            d_transfer,
        };
        if !check_mixed_block(c, &d_cert.target, &block) {
            return Err(Error::ValueMismatch(
                "block transfer failed its internal recheck".into(),
            ));
        }
        out.push(block);
    }
    Ok((Substitution::identity(2), out))
}

/// Series-side binary block after the transfer: everything polynomial in tn
/// over the smaller series ring, with explicit square roots of both ratios.
/// The replacement for c is t1^c_stripped · c_poly; the power is kept apart
/// so the congruence c ≡ ratio² · t1^v · c_poly stays checkable at full
/// precision (shifting last, like the other transfers).
#[derive(Debug, Clone)]
pub struct SeriesBlock {
    pub c_poly: TnPoly,
    pub c_stripped: usize,
    pub c_ratio_sqrt: MultiSeries,
    pub c_prec: usize,
    pub d_transfer: TransferResult<MultiSeries, TnPoly>,
}

fn tnpoly_scale(p: &TnPoly, lambda: &Scalar) -> TnPoly {
    let coeffs: Vec<MultiSeries> = p.coeffs().iter().map(|c| c.scalar_mul(lambda)).collect();
    TnPoly::new(coeffs, p.base_vars(), p.prec())
}

/// Checks both halves of a series block against the (already σ-moved) inputs.
pub fn check_series_block(
    c_moved: &MultiSeries,
    d_moved: &MultiSeries,
    block: &SeriesBlock,
) -> bool {
    let n = c_moved.nvars();
    let mut strip = vec![0u32; n];
    strip[0] = block.c_stripped as u32;
    let sq = &block.c_ratio_sqrt * &block.c_ratio_sqrt;
    let lhs = (&sq * &block.c_poly.to_series()).mul_monomial(&strip, &Scalar::one());
    lhs.prec() >= block.c_prec
        && c_moved.prec() >= block.c_prec
        && lhs.agrees_mod(c_moved, block.c_prec)
        // the stored d-transfer carries an identity substitution because its
        // inputs arrive already moved
        && check_series_transfer(d_moved, &block.d_transfer)
}

/// Moves binary torsion blocks with n-variable series coefficients into
/// polynomials in tn over the (n−1)-variable series ring, under one shared
/// coordinate change (the identity for n ≤ 2, where t1-powers are stripped
/// instead).
pub fn prop54_transfer_series(
    blocks: &[(MultiSeries, SosCertificate<MultiSeries>)],
    field: &CoefficientField,
) -> Result<(Substitution, Vec<SeriesBlock>)> {
    assert!(!blocks.is_empty(), "need at least one block");
    if !field.is_formally_real() {
        return Err(Error::NotFormallyReal);
    }
    let n = blocks[0].0.nvars();
    for (c, d_cert) in blocks {
        assert_eq!(c.nvars(), n, "blocks live in different rings");
        if !d_cert.verifies() {
            return Err(Error::CertificateInvalid(
                "a d-coefficient certificate does not verify".into(),
            ));
        }
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
    }

    let sigma = if n <= 2 {
        Substitution::identity(n)
    } else {
        let mut family: Vec<MultiSeries> = blocks.iter().map(|(c, _)| c.clone()).collect();
        family.extend(blocks.iter().map(|(_, d)| d.target.clone()));
        regularize(&family)?
    };

    let mut out = Vec::with_capacity(blocks.len());
    for (c, d_cert) in blocks {
        let c_moved = sigma.apply(c);
        let d_moved_cert = SosCertificate::new(
            sigma.apply(&d_cert.target),
            d_cert.gens.iter().map(|g| sigma.apply(g)).collect(),
            d_cert.prec,
        );

        let d_transfer = if n <= 2 {
            let (_, mut results) = prop53_transform(std::slice::from_ref(&d_moved_cert), field)?;
            results.pop().expect("one result per certificate")
        } else {
            lemma52_transfer(&d_moved_cert, field)?
        };

        // c-side: strip the t1-power (n ≤ 2 only; σ made c regular otherwise)
        let v = if n <= 2 {
            c_moved.ord_in_var(0).expect("nonzero series")
        } else {
            0
        };
        let mut strip = vec![0u32; n];
        strip[0] = v as u32;
        let c_stripped_series = c_moved.div_monomial(&strip)?;
        let prep = weierstrass_prepare(&c_stripped_series)?;
        let lambda = prep.unit.constant_term();
        let ratio = prep.unit.scalar_mul(&lambda.inverse()?);
        let c_ratio_sqrt = ratio.unit_sqrt(field.ext())?;
        let c_poly = tnpoly_scale(&prep.distinguished, &lambda);
        let block = SeriesBlock {
            c_poly,
            c_stripped: v,
            c_ratio_sqrt,
            c_prec: prep.prec + v,
            d_transfer,
        };
        if !check_series_block(&c_moved, &d_moved_cert.target, &block) {
            return Err(Error::ValueMismatch(
                "block transfer failed its internal recheck".into(),
            ));
        }
        out.push(block);
    }
    Ok((sigma, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::series::XPoly;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn form(entries: &[i64]) -> DiagonalForm {
        DiagonalForm::new(&entries.iter().map(|&e| rat(e)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn squarefree_reduction() {
        assert_eq!(squarefree_part(&rat(12)).unwrap(), BigInt::from(3));
        assert_eq!(squarefree_part(&rat(-18)).unwrap(), BigInt::from(-2));
        assert_eq!(squarefree_part(&ratq(4, 9)).unwrap(), BigInt::one());
        assert_eq!(squarefree_part(&ratq(1, 2)).unwrap(), BigInt::from(2));
        assert!(matches!(
            squarefree_part(&BigRational::zero()),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn hilbert_fixtures() {
        for place in [Place::Real, Place::Prime(2), Place::Prime(5), Place::Prime(7)] {
            assert_eq!(hilbert_symbol(&rat(1), &rat(30), &place), 1);
        }
        assert_eq!(hilbert_symbol(&rat(2), &rat(5), &Place::Prime(5)), -1);
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::Real), -1);
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::Prime(7)), 1);
    }

    #[test]
    fn hilbert_product_formula_and_bimultiplicativity() {
        // deterministic small pseudo-random pairs
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let v = ((state >> 33) % 39) as i64 - 19;
            if v == 0 {
                7
            } else {
                v
            }
        };
        for _ in 0..200 {
            let (a, b) = (rat(next()), rat(next()));
            let pair_form = DiagonalForm::new(&[a.clone(), b.clone()]).unwrap();
            let places = relevant_places(&pair_form).unwrap();
            let prod: i32 = places
                .iter()
                .map(|v| i32::from(hilbert_symbol(&a, &b, v)))
                .product();
            assert_eq!(prod, 1, "product formula failed for ({a}, {b})");
        }
        for _ in 0..50 {
            let (a, b, c) = (rat(next()), rat(next()), rat(next()));
            let all = DiagonalForm::new(&[a.clone(), b.clone(), c.clone()]).unwrap();
            for v in relevant_places(&all).unwrap() {
                assert_eq!(
                    hilbert_symbol(&(&a * &b), &c, &v),
                    hilbert_symbol(&a, &c, &v) * hilbert_symbol(&b, &c, &v)
                );
                assert_eq!(hilbert_symbol(&a, &b, &v), hilbert_symbol(&b, &a, &v));
            }
        }
    }

    #[test]
    fn isotropy_fixtures() {
        let hyp = is_isotropic_q(&form(&[1, -1])).unwrap();
        assert!(hyp.isotropic);
        assert_eq!(hyp.witness.unwrap(), vec![rat(1), rat(1)]);

        assert!(!is_isotropic_q(&form(&[1, 1, 1])).unwrap().isotropic);
        assert!(!is_isotropic_q(&form(&[1, 1, 1, -7])).unwrap().isotropic);

        let five = is_isotropic_q(&form(&[1, 1, 1, 1, -7])).unwrap();
        assert!(five.isotropic);
        assert_eq!(
            five.witness.unwrap(),
            vec![rat(2), rat(1), rat(1), rat(1), rat(1)]
        );

        assert!(!is_isotropic_q(&form(&[1, -2])).unwrap().isotropic);
        let scaled = is_isotropic_q(&form(&[2, -2])).unwrap();
        assert!(scaled.isotropic);
        assert!(matches!(is_isotropic_q(&form(&[1])), Err(Error::DimTooSmall)));
    }

    #[test]
    fn isotropy_matches_three_square_criterion() {
        // <1,1,1,-a> isotropic iff a is a sum of three rational squares
        for a in 1..=30i64 {
            let f = form(&[1, 1, 1, -a]);
            let dec = is_isotropic_q(&f).unwrap();
            let three = crate::rational_sos::sos_length(&rat(a)).unwrap() <= 3;
            assert_eq!(dec.isotropic, three, "mismatch at {a}");
            if let Some(w) = dec.witness {
                let total = w[..3].iter().map(|x| x * x).fold(BigRational::zero(), |s, t| s + t);
                assert_eq!(total, rat(a) * &w[3] * &w[3]);
            }
        }
    }

    #[test]
    fn definite_forms_are_anisotropic() {
        let mut state = 9u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 23 + 1) as i64
        };
        for _ in 0..50 {
            let dim = (next() % 4 + 2) as usize;
            let entries: Vec<i64> = (0..dim).map(|_| next()).collect();
            let f = form(&entries);
            assert!(!is_isotropic_q(&f).unwrap().isotropic, "definite form {entries:?}");
        }
    }

    #[test]
    fn torsion_by_signature() {
        assert!(is_torsion_q(&form(&[1, -1])));
        assert!(!is_torsion_q(&form(&[1, 1])));
        assert!(is_torsion_q(&form(&[1, 1, -2, -3])));
        assert!(!is_torsion_q(&form(&[1, 1, -2])));
    }

    #[test]
    fn local_reports_are_consistent() {
        let f = form(&[1, 1, 1, -7]);
        let reports = local_reports(&f).unwrap();
        assert!(reports.iter().any(|r| r.place == Place::Prime(7)));
        for r in &reports {
            assert!(r.hilbert == 1 || r.hilbert == -1);
            assert!(r.hasse == 1 || r.hasse == -1);
        }
        // anisotropy at 2 comes from d = -7 being a 2-adic square while the
        // hasse invariant differs from (-1,-1)_2
        let at2 = reports.iter().find(|r| r.place == Place::Prime(2)).unwrap();
        assert!(is_square_local(&BigInt::from(-7), &Place::Prime(2)));
        assert_eq!(at2.hasse, 1);
    }

    fn mixed(levels: &[&[i64]], prec: usize) -> MixedA {
        MixedA::new(
            levels
                .iter()
                .map(|l| XPoly::new(l.iter().map(|&c| Scalar::from_integer(c)).collect()))
                .collect(),
            prec,
        )
    }

    #[test]
    fn mixed_block_transfer() {
        // block t · <1, -(x^2 + 1)> with d-certificate [x, 1]
        let c = mixed(&[&[], &[1]], 8);
        let d = mixed(&[&[1, 0, 1]], 8);
        let d_cert = SosCertificate::new(
            d.clone(),
            vec![mixed(&[&[0, 1]], 8), mixed(&[&[1]], 8)],
            Some(8),
        );
        let field = CoefficientField::Rationals;
        let (sigma, out) = prop54_transfer_mixed(&[(c.clone(), d_cert)], &field).unwrap();
        assert!(sigma.is_identity());
        let block = &out[0];
        assert_eq!(block.c_stripped, 1);
        assert_eq!(polyb_to_mixed(&block.c_poly), mixed(&[&[], &[1]], 8));
        assert_eq!(block.c_ratio_sqrt, MixedA::one(7));
        assert_eq!(
            polyb_to_mixed(&block.d_transfer.b_cert.target),
            mixed(&[&[1, 0, 1]], 8)
        );
        assert!(check_mixed_block(&c, &d, block));
    }

    #[test]
    fn mixed_block_trivial() {
        let one = mixed(&[&[1]], 6);
        let d_cert = SosCertificate::new(one.clone(), vec![one.clone()], Some(6));
        let field = CoefficientField::Rationals;
        let (_, out) = prop54_transfer_mixed(&[(one.clone(), d_cert)], &field).unwrap();
        assert_eq!(polyb_to_mixed(&out[0].c_poly), one);
        assert_eq!(
            polyb_to_mixed(&out[0].d_transfer.b_cert.target),
            one
        );
    }

    fn ms(terms: &[(&[u32], i64)], nvars: usize, prec: usize) -> MultiSeries {
        let mut out = MultiSeries::zero(nvars, prec);
        for (e, c) in terms {
            out.insert_add(e.to_vec(), Scalar::from_integer(*c));
        }
        out
    }

    #[test]
    fn series_block_transfer_two_vars() {
        // c = t1 (odd t1-power), d = t1^2 + t2^2 with gens [t1, t2]
        let c = ms(&[(&[1, 0], 1)], 2, 9);
        let g1 = ms(&[(&[1, 0], 1)], 2, 9);
        let g2 = ms(&[(&[0, 1], 1)], 2, 9);
        let d = &(&g1 * &g1) + &(&g2 * &g2);
        let d_cert = SosCertificate::new(d.clone(), vec![g1, g2], Some(9));
        let field = CoefficientField::Rationals;
        let (sigma, out) = prop54_transfer_series(&[(c.clone(), d_cert)], &field).unwrap();
        assert!(sigma.is_identity());
        let block = &out[0];
        assert_eq!(block.c_stripped, 1);
        assert!(check_series_block(&c, &d, block));
    }

    #[test]
    fn series_block_transfer_three_vars() {
        let c = ms(&[(&[1, 0, 0], 1), (&[0, 0, 1], 1)], 3, 8);
        let g = ms(&[(&[0, 1, 0], 1)], 3, 8);
        let d = &g * &g;
        let d_cert = SosCertificate::new(d.clone(), vec![g], Some(8));
        let field = CoefficientField::Rationals;
        let (sigma, out) = prop54_transfer_series(&[(c.clone(), d_cert)], &field).unwrap();
        let block = &out[0];
        assert!(check_series_block(&sigma.apply(&c), &sigma.apply(&d), block));
    }

    #[test]
    fn series_block_rejects_bad_certificates() {
        let c = ms(&[(&[1, 0], 1)], 2, 6);
        let d = ms(&[(&[0, 1], 3)], 2, 6);
        let bad = SosCertificate::new(d, vec![ms(&[(&[0, 1], 1)], 2, 6)], Some(6));
        let field = CoefficientField::Rationals;
        assert!(matches!(
            prop54_transfer_series(&[(c, bad)], &field),
            Err(Error::CertificateInvalid(_))
        ));
    }
}
