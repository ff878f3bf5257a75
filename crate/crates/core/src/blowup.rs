//! Discrete valuations from blowing up the origin of a series ring: the
//! order valuation of the first exceptional divisor, its residue field of
//! rational functions in u_i = t_i/t_n, a second blowup at a rational or
//! quadratic point of the exceptional line (two variables only), and the
//! residue image of sum-of-squares certificates.
//!
//! Convention for the composed blowup: the reported value is the
//! multiplicity of the second exceptional divisor in the total transform,
//! v'(f) = v(f) + (joint order in (w, t2) after extracting t2^v). On
//! monomials this gives v'(t1^a t2^b) = a + b, plus a again when the center
//! is the origin of the exceptional coordinate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, RatFn};
use crate::quadform::squarefree_part;
use crate::scalar::Scalar;
use crate::series::{MultiSeries, XPoly};
use crate::sos::{RingElem, SosCertificate};

/// Value of a blowup valuation, with the residue of a ratio when one was
/// requested and both arguments share the value.
#[derive(Debug, Clone)]
pub struct ValuationResult {
    pub value: usize,
    pub residue: Option<RatFn>,
    pub residue_field: String,
}

/// Order of vanishing along the first exceptional divisor: the lowest total
/// degree.
pub fn origin_valuation(f: &MultiSeries) -> Result<usize> {
    f.ord().ok_or_else(|| {
        Error::PrecisionExhausted("series is zero to stored precision".into())
    })
}

fn dehomogenize(form: &MultiSeries) -> MPoly {
    // t_n -> 1, t_i -> u_i; the input is a homogeneous slice of an n-variable
    // series, the output a polynomial in n-1 variables
    let n = form.nvars();
    let mut out = MPoly::zero(n - 1);
    for (exps, c) in form.terms() {
        out.insert_add(exps[..n - 1].to_vec(), c.clone());
    }
    out
}

/// Residue of f/g in the function field of the exceptional divisor,
/// k(u_1..u_{n-1}): the ratio of leading forms with t_n set to 1.
pub fn residue_ratio(f: &MultiSeries, g: &MultiSeries) -> Result<RatFn> {
    assert!(f.nvars() >= 2, "residue field needs at least two variables");
    let vf = origin_valuation(f)?;
    let vg = origin_valuation(g)?;
    if vf != vg {
        return Err(Error::ValueMismatch(format!(
            "values differ: {vf} vs {vg}, the ratio is not a unit at the valuation"
        )));
    }
    let num = dehomogenize(&f.leading_form().expect("nonzero by valuation check"));
    let den = dehomogenize(&g.leading_form().expect("nonzero by valuation check"));
    Ok(RatFn::new(num, den))
}

/// A closed point of the exceptional line over Q, cut out by a monic
/// irreducible polynomial of degree 1 or 2 in the chart coordinate u.
struct ExceptionalPoint {
    theta: Scalar,
    field_tag: String,
}

fn point_from_poly(q: &XPoly) -> Result<ExceptionalPoint> {
    let deg = q.deg().ok_or_else(|| Error::NotAPoint("zero polynomial".into()))?;
    if !q.leading().expect("nonzero").is_one() {
        return Err(Error::NotAPoint("polynomial is not monic".into()));
    }
    if q.coeffs().iter().any(|c| !c.is_rational()) {
        return Err(Error::NotAPoint("point polynomial must have rational coefficients".into()));
    }
    match deg {
        1 => {
            let c = q.coeff(0);
            Ok(ExceptionalPoint {
                theta: -&c,
                field_tag: "Q(s)".into(),
            })
        }
        2 => {
            let b = q.coeff(1).as_rational().cloned().expect("checked rational");
            let c = q.coeff(0).as_rational().cloned().expect("checked rational");
            let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * &c;
            if disc.is_zero() {
                return Err(Error::NotAPoint("double root".into()));
            }
            let d_class = squarefree_part(&disc)?;
            if d_class.is_one() {
                return Err(Error::NotAPoint(
                    "polynomial splits over the rationals".into(),
                ));
            }
            let d: i64 = (&d_class)
                .try_into()
                .map_err(|_| Error::NotAPoint("discriminant class too large".into()))?;
            // disc / d is the square of a rational by construction
            let ratio = disc / BigRational::from_integer(d_class);
            debug_assert!(ratio.is_positive());
            let root = BigRational::new(ratio.numer().sqrt(), ratio.denom().sqrt());
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            Ok(ExceptionalPoint {
                // theta = (-b + sqrt(disc)) / 2 with sqrt(disc) = root·sqrt(d)
                theta: Scalar::quadratic(-&b * &half, root * half, d),
                field_tag: format!("Q(sqrt({d}))(s)"),
            })
        }
        _ => Err(Error::NotAPoint(format!("degree {deg} point, only 1 or 2 supported"))),
    }
}

/// f(t1, t2) -> f(t2(w + theta), t2) as a series in (w, t2). Every term of
/// (t1,t2)-degree D lands in t2-degree D with w-degree at most D, so the
/// total-degree precision carries over unchanged.
fn substitute_chart(f: &MultiSeries, theta: &Scalar) -> MultiSeries {
    let mut out = MultiSeries::zero(2, f.prec());
    for (exps, c) in f.terms() {
        let (a, b) = (exps[0], exps[1]);
        if theta.is_zero() {
            out.insert_add(vec![a, a + b], c.clone());
            continue;
        }
        let inv = theta.inverse().expect("nonzero");
        let mut binom = BigInt::one();
        let mut theta_pow = theta.pow(a);
        for j in 0..=a {
            if j > 0 {
                binom = binom * BigInt::from(i64::from(a - j + 1)) / BigInt::from(i64::from(j));
                theta_pow = &theta_pow * &inv;
            }
            let coeff = &(c * &theta_pow) * &Scalar::from_rational(BigRational::from(binom.clone()));
            out.insert_add(vec![j, a + b], coeff);
        }
    }
    out
}

fn second_blowup_parts(f: &MultiSeries, point: &ExceptionalPoint) -> Result<(usize, MultiSeries)> {
    assert_eq!(f.nvars(), 2, "second blowup is defined for two variables");
    let v = origin_valuation(f)?;
    let moved = substitute_chart(f, &point.theta);
    let stripped = moved.div_monomial(&[0, v as u32])?;
    let o = origin_valuation(&stripped)?;
    Ok((v + o, stripped))
}

/// Value of f along the exceptional divisor of a second blowup centered at
/// the point of E cut out by `point_poly` (total-transform convention, see
/// the module docs).
pub fn second_blowup_valuation(f: &MultiSeries, point_poly: &XPoly) -> Result<ValuationResult> {
    let point = point_from_poly(point_poly)?;
    let (value, _) = second_blowup_parts(f, &point)?;
    Ok(ValuationResult {
        value,
        residue: None,
        residue_field: point.field_tag,
    })
}

/// Residue of f/g at the second-blowup valuation, for arguments of equal
/// value: the ratio of leading joint forms with t2 set to 1 and w to s.
pub fn second_blowup_residue(
    f: &MultiSeries,
    g: &MultiSeries,
    point_poly: &XPoly,
) -> Result<ValuationResult> {
    let point = point_from_poly(point_poly)?;
    let (vf, sf) = second_blowup_parts(f, &point)?;
    let (vg, sg) = second_blowup_parts(g, &point)?;
    if vf != vg {
        return Err(Error::ValueMismatch(format!(
            "values differ: {vf} vs {vg}, the ratio is not a unit at the valuation"
        )));
    }
    let num = dehomogenize(&sf.leading_form().expect("nonzero by valuation check"));
    let den = dehomogenize(&sg.leading_form().expect("nonzero by valuation check"));
    Ok(ValuationResult {
        value: vf,
        residue: Some(RatFn::new(num, den)),
        residue_field: point.field_tag,
    })
}

impl RingElem for MPoly {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn prec_of(&self) -> Option<usize> {
        None
    }
    fn congruent(&self, rhs: &Self, _prec: Option<usize>) -> bool {
        self == rhs
    }
}

/// Sum-of-squares certificate pushed into the residue field: polynomial
/// generators in u_1..u_{n-1} whose squares sum to the residue of the
/// target, exactly.
#[derive(Debug, Clone)]
pub struct ResidueCertificate {
    pub certificate: SosCertificate<MPoly>,
    pub value: usize,
    pub residue_field: String,
}

/// Residues of sums of m squares are sums of m squares in the residue
/// field: take the degree-v/2 homogeneous part of each generator and
/// dehomogenize. Cross terms live in higher degree, so the identity is
/// exact on polynomials.
pub fn residue_sos_check(cert: &SosCertificate<MultiSeries>) -> Result<ResidueCertificate> {
    if !cert.verifies() {
        return Err(Error::CertificateInvalid(
            "input certificate does not verify".into(),
        ));
    }
    let n = cert.target.nvars();
    assert!(n >= 2, "residue field needs at least two variables");
    let v = origin_valuation(&cert.target)?;
    if v % 2 != 0 {
        return Err(Error::OddValue);
    }
    let half = v / 2;
    let gens: Vec<MPoly> = cert
        .gens
        .iter()
        .map(|g| dehomogenize(&g.homogeneous_part(half)))
        .collect();
    let target = dehomogenize(&cert.target.homogeneous_part(v));
    let out = SosCertificate::new(target, gens, None);
    if !out.verifies() {
        return Err(Error::CertificateInvalid(
            "residues do not reproduce the leading form".into(),
        ));
    }
    let vars: Vec<String> = (1..n).map(|i| format!("u{i}")).collect();
    Ok(ResidueCertificate {
        certificate: out,
        value: v,
        residue_field: format!("Q({})", vars.join(",")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(terms: &[(&[u32], i64)], nvars: usize, prec: usize) -> MultiSeries {
        let mut out = MultiSeries::zero(nvars, prec);
        for (e, c) in terms {
            out.insert_add(e.to_vec(), Scalar::from_integer(*c));
        }
        out
    }

    fn upoly(coeffs: &[i64]) -> MPoly {
        let mut out = MPoly::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            out.insert_add(vec![i as u32], Scalar::from_integer(c));
        }
        out
    }

    fn xp(coeffs: &[i64]) -> XPoly {
        XPoly::new(coeffs.iter().map(|&c| Scalar::from_integer(c)).collect())
    }

    #[test]
    fn origin_valuation_fixtures() {
        assert_eq!(origin_valuation(&ms(&[(&[2, 0], 1), (&[0, 3], 1)], 2, 8)).unwrap(), 2);
        assert_eq!(origin_valuation(&ms(&[(&[0], 1), (&[1], 1)], 1, 8)).unwrap(), 0);
        assert_eq!(origin_valuation(&ms(&[(&[1, 1, 1], 1)], 3, 8)).unwrap(), 3);
        assert!(matches!(
            origin_valuation(&MultiSeries::zero(2, 5)),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn residue_ratio_fixtures() {
        let f = ms(&[(&[2, 0], 1), (&[0, 2], 1)], 2, 8);
        let g = ms(&[(&[0, 2], 1)], 2, 8);
        assert_eq!(residue_ratio(&f, &g).unwrap(), RatFn::from_poly(upoly(&[1, 0, 1])));
        assert_eq!(residue_ratio(&f, &f).unwrap(), RatFn::from_poly(upoly(&[1])));
        let m = ms(&[(&[1, 1], 1)], 2, 8);
        assert_eq!(residue_ratio(&m, &g).unwrap(), RatFn::from_poly(upoly(&[0, 1])));
        assert!(matches!(
            residue_ratio(&m, &ms(&[(&[1, 0], 1)], 2, 8)),
            Err(Error::ValueMismatch(_))
        ));
    }

    #[test]
    fn residue_ignores_unit_scaling() {
        // multiplying by a value-0 unit with constant term 1 fixes the residue
        let f = ms(&[(&[2, 0], 1), (&[0, 2], 1)], 2, 8);
        let g = ms(&[(&[0, 2], 1)], 2, 8);
        let unit = ms(&[(&[0, 0], 1), (&[1, 0], 3), (&[0, 1], -2)], 2, 8);
        let fu = &f * &unit;
        assert_eq!(
            residue_ratio(&fu, &g).unwrap(),
            residue_ratio(&f, &g).unwrap()
        );
    }

    #[test]
    fn valuation_axioms_on_samples() {
        let samples = [
            ms(&[(&[1, 0], 1), (&[0, 2], 3)], 2, 12),
            ms(&[(&[0, 1], 2)], 2, 12),
            ms(&[(&[2, 1], 1), (&[1, 2], -1)], 2, 12),
            ms(&[(&[0, 0], 5), (&[1, 1], 1)], 2, 12),
        ];
        for f in &samples {
            for g in &samples {
                let (vf, vg) = (origin_valuation(f).unwrap(), origin_valuation(g).unwrap());
                assert_eq!(origin_valuation(&(f * g)).unwrap(), vf + vg);
                let sum = f + g;
                if let Ok(vs) = origin_valuation(&sum) {
                    assert!(vs >= vf.min(vg));
                    if vf != vg {
                        assert_eq!(vs, vf.min(vg));
                    }
                }
            }
        }
    }

    #[test]
    fn residue_is_multiplicative() {
        let f1 = ms(&[(&[2, 0], 1), (&[0, 2], 1)], 2, 10);
        let g1 = ms(&[(&[0, 2], 1)], 2, 10);
        let f2 = ms(&[(&[1, 1], 2), (&[0, 2], 1)], 2, 10);
        let g2 = ms(&[(&[2, 0], 1)], 2, 10);
        let lhs = residue_ratio(&(&f1 * &f2), &(&g1 * &g2)).unwrap();
        let rhs = &residue_ratio(&f1, &g1).unwrap() * &residue_ratio(&f2, &g2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_blowup_rational_points() {
        // center u = 0: t2 keeps value 1, t1 = t2·w picks up both divisors
        let t2 = ms(&[(&[0, 1], 1)], 2, 8);
        let origin = xp(&[0, 1]);
        let res = second_blowup_valuation(&t2, &origin).unwrap();
        assert_eq!(res.value, 1);
        assert_eq!(res.residue_field, "Q(s)");
        let t1 = ms(&[(&[1, 0], 1)], 2, 8);
        assert_eq!(second_blowup_valuation(&t1, &origin).unwrap().value, 2);

        // center u = c: t1 - c·t2 becomes t2·w
        let f = ms(&[(&[1, 0], 1), (&[0, 1], -3)], 2, 8);
        let at3 = xp(&[-3, 1]);
        assert_eq!(second_blowup_valuation(&f, &at3).unwrap().value, 2);
        assert_eq!(second_blowup_valuation(&t1, &at3).unwrap().value, 1);
    }

    #[test]
    fn second_blowup_quadratic_point() {
        // f = t1^2 - 2 t2^2 vanishes at u = ±√2: strict transform picks up w
        let f = ms(&[(&[2, 0], 1), (&[0, 2], -2)], 2, 8);
        let q = xp(&[-2, 0, 1]);
        let res = second_blowup_valuation(&f, &q).unwrap();
        assert_eq!(res.value, 3);
        assert_eq!(res.residue_field, "Q(sqrt(2))(s)");

        // ratio against t2^3 (value 3): residue 2√2·s
        let t2cubed = ms(&[(&[0, 3], 1)], 2, 8);
        let z = second_blowup_residue(&f, &t2cubed, &q).unwrap();
        assert_eq!(z.value, 3);
        let two_sqrt2 = Scalar::quadratic(
            BigRational::zero(),
            BigRational::from_integer(BigInt::from(2)),
            2,
        );
        let expected = RatFn::from_poly(MPoly::monomial(vec![1], two_sqrt2));
        assert_eq!(z.residue.unwrap(), expected);
    }

    #[test]
    fn second_blowup_monomial_weights() {
        // closed form: a + b, plus a again when the center is u = 0
        let origin = xp(&[0, 1]);
        let shifted = xp(&[-1, 1]);
        for a in 0..4u32 {
            for b in 0..4u32 {
                if a == 0 && b == 0 {
                    continue;
                }
                let m = ms(&[(&[a, b], 1)], 2, 12);
                assert_eq!(
                    second_blowup_valuation(&m, &origin).unwrap().value as u32,
                    2 * a + b
                );
                assert_eq!(
                    second_blowup_valuation(&m, &shifted).unwrap().value as u32,
                    a + b
                );
            }
        }
    }

    #[test]
    fn second_blowup_rejects_bad_points() {
        let f = ms(&[(&[0, 1], 1)], 2, 6);
        for bad in [
            xp(&[1, 2]),       // not monic
            xp(&[-4, 0, 1]),   // splits: (u-2)(u+2)
            xp(&[1, -2, 1]),   // double root at 1
            xp(&[0, 0, 0, 1]), // degree 3
            xp(&[5]),          // degree 0
        ] {
            assert!(matches!(
                second_blowup_valuation(&f, &bad),
                Err(Error::NotAPoint(_))
            ));
        }
    }

    #[test]
    fn residue_certificates() {
        let g1 = ms(&[(&[1, 0], 1)], 2, 8);
        let g2 = ms(&[(&[0, 1], 1)], 2, 8);
        let f = &(&g1 * &g1) + &(&g2 * &g2);
        let cert = SosCertificate::new(f, vec![g1, g2], Some(8));
        let out = residue_sos_check(&cert).unwrap();
        assert_eq!(out.value, 2);
        assert_eq!(out.residue_field, "Q(u1)");
        assert_eq!(out.certificate.gens, vec![upoly(&[0, 1]), upoly(&[1])]);
        assert_eq!(out.certificate.target, upoly(&[1, 0, 1]));

        let one = ms(&[(&[0, 0], 1)], 2, 8);
        let trivial = SosCertificate::new(one.clone(), vec![one], Some(8));
        let out = residue_sos_check(&trivial).unwrap();
        assert_eq!(out.value, 0);
        assert_eq!(out.certificate.gens, vec![upoly(&[1])]);
    }

    #[test]
    fn residue_certificate_with_higher_order_tails() {
        // gens (t1 + t2^2, t2): tails beyond the leading form drop out
        let g1 = ms(&[(&[1, 0], 1), (&[0, 2], 1)], 2, 8);
        let g2 = ms(&[(&[0, 1], 1)], 2, 8);
        let f = &(&g1 * &g1) + &(&g2 * &g2);
        let cert = SosCertificate::new(f, vec![g1, g2], Some(8));
        let out = residue_sos_check(&cert).unwrap();
        assert_eq!(out.value, 2);
        assert_eq!(out.certificate.gens, vec![upoly(&[0, 1]), upoly(&[1])]);
        assert_eq!(out.certificate.target, upoly(&[1, 0, 1]));
    }

    #[test]
    fn residue_check_reports_odd_value() {
        // over Q(i) leading squares can cancel, leaving an odd-order sum
        let i = Scalar::quadratic(
            BigRational::zero(),
            BigRational::from_integer(BigInt::one()),
            -1,
        );
        let mut g2 = MultiSeries::zero(2, 8);
        g2.insert_add(vec![1, 0], i);
        let g1 = ms(&[(&[1, 0], 1), (&[0, 2], 1)], 2, 8);
        let f = &(&g1 * &g1) + &(&g2 * &g2);
        assert_eq!(origin_valuation(&f).unwrap(), 3);
        let cert = SosCertificate::new(f, vec![g1, g2], Some(8));
        assert!(matches!(residue_sos_check(&cert), Err(Error::OddValue)));
    }

    #[test]
    fn residue_check_rejects_broken_certificates() {
        let g = ms(&[(&[1, 0], 1)], 2, 6);
        let wrong = ms(&[(&[0, 1], 1)], 2, 6);
        let cert = SosCertificate::new(wrong, vec![g], Some(6));
        assert!(matches!(
            residue_sos_check(&cert),
            Err(Error::CertificateInvalid(_))
        ));
    }
}
