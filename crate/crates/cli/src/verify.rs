//! Re-checks the mathematical claim stored in an artifact. Congruences are
//! recomputed from the serialized elements (whose precision markers travel
//! with them), powers of the distinguished variable are divided off first
//! and multiplied back last so every check runs at the artifact's stated
//! precision, and recomputable quantities (orders, symbols, lengths,
//! valuations) are recomputed and compared.

use laurent_core::blowup;
use laurent_core::error::{Error, Result};
use laurent_core::expr;
use laurent_core::mpoly::RatFn;
use laurent_core::quadform::{self, DiagonalForm, Place};
use laurent_core::rational_sos;
use laurent_core::scalar::{CoefficientField, Scalar};
use laurent_core::series::convert::polyb_to_mixed;
use laurent_core::series::{MixedA, MultiSeries, PolyB, UniSeries, XPoly};
use laurent_core::sos::{RingElem, SosCertificate};
use laurent_core::weierstrass::order_in_tn;
use num_rational::BigRational;
use num_traits::Zero;

use crate::artifact::{
    group_all, group_get, parse_field, parse_substitution, parse_usize, Artifact, RingDecl,
    RingKind,
};

pub fn verify_artifact(a: &Artifact) -> Result<()> {
    match a.kind.as_str() {
        "division" => verify_division(a),
        "preparation" => verify_preparation(a),
        "substitution" => verify_substitution(a),
        "sos-certificate" => verify_sos_certificate(a),
        "transfer" => verify_transfer(a),
        "transfer-list" => verify_transfer_list(a),
        "factorization" => verify_factorization(a),
        "descent" => verify_descent(a),
        "sos-length" => verify_sos_length(a),
        "bridge" => verify_bridge(a),
        "qform-hilbert" => verify_qform_hilbert(a),
        "qform-isotropy" => verify_qform_isotropy(a),
        "qform-torsion" => verify_qform_torsion(a),
        "qform-blocks" => verify_qform_blocks(a),
        "qform-transfer" => verify_qform_transfer(a),
        "valuation" => verify_valuation(a),
        "valuation-residue" => verify_valuation_residue(a),
        "valuation-blowup2" => verify_valuation_blowup2(a),
        "residue-certificate" => verify_residue_certificate(a),
        "ratfn-sos-certificate" => verify_ratfn_sos(a),
        other => Err(Error::BadFormat(format!("unknown artifact kind `{other}`"))),
    }
}

fn fail(msg: &str) -> Result<()> {
    Err(Error::CertificateInvalid(msg.into()))
}

fn mismatch(msg: &str) -> Result<()> {
    Err(Error::ValueMismatch(msg.into()))
}

fn parse_count(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::BadFormat(format!("bad integer for `{what}`")))
}

fn parse_bool(s: &str, what: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::BadFormat(format!("bad boolean for `{what}`"))),
    }
}

fn parse_sign(s: &str, what: &str) -> Result<i8> {
    match s {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(Error::BadFormat(format!("`{what}` must be 1 or -1"))),
    }
}

pub fn parse_place(s: &str) -> Result<Place> {
    if s == "real" {
        return Ok(Place::Real);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::BadFormat(format!("bad place `{s}`")))?;
    if !quadform::is_prime(p) {
        return Err(Error::BadFormat(format!("{p} is not prime")));
    }
    Ok(Place::Prime(p))
}

pub fn parse_rational_csv(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(|x| expr::parse_rational(x.trim())).collect()
}

pub fn uvar_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

fn series_congruent(lhs: &MultiSeries, rhs: &MultiSeries, prec: usize) -> bool {
    lhs.prec() >= prec && rhs.prec() >= prec && lhs.agrees_mod(rhs, prec)
}

fn mixed_congruent(lhs: &MixedA, rhs: &MixedA, prec: usize) -> bool {
    lhs.prec() >= prec && rhs.prec() >= prec && lhs.agrees_mod(rhs, prec)
}

fn sum_of_squares<T: RingElem>(gens: &[T]) -> T {
    let mut sum = gens[0].ring_square();
    for g in &gens[1..] {
        sum = sum.ring_add(&g.ring_square());
    }
    sum
}

/// Largest precision every operand supports; `None` for exact rings.
fn joint_prec<T: RingElem>(target: &T, gens: &[T]) -> Option<usize> {
    let mut p = target.prec_of()?;
    for g in gens {
        p = p.min(g.prec_of()?);
    }
    Some(p)
}

fn check_sos<T: RingElem>(target: &T, gens: &[T]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::BadFormat("certificate has no generators".into()));
    }
    let prec = joint_prec(target, gens);
    if sum_of_squares(gens).congruent(target, prec) {
        Ok(())
    } else {
        fail("sum of squares does not reproduce the target")
    }
}

fn decl_of(a: &Artifact, expected: &[RingKind]) -> Result<RingDecl> {
    let decl = RingDecl::from_artifact(a)?;
    if !expected.contains(&decl.ring) {
        return Err(Error::BadFormat(format!(
            "artifact kind `{}` does not support ring `{}`",
            a.kind,
            decl.ring.name()
        )));
    }
    Ok(decl)
}

fn shifts_before(a: &Artifact, marker: &str) -> Vec<String> {
    let head = a
        .fields
        .iter()
        .position(|(k, _)| k == marker)
        .unwrap_or(a.fields.len());
    a.fields[..head]
        .iter()
        .filter(|(k, _)| k == "shift")
        .map(|(_, v)| v.clone())
        .collect()
}

fn verify_division(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let n = decl.vars.len();
    let f = decl.parse_multi(a.get("f")?)?;
    let g = decl.parse_multi(a.get("g")?)?;
    let q = decl.parse_multi(a.get("quotient")?)?;
    let r = decl.parse_multi(a.get("remainder")?)?;
    let order = parse_usize(a, "order")?;
    let checkprec = parse_usize(a, "checkprec")?;
    if order_in_tn(&f)? != order {
        return mismatch("stated order disagrees with the divisor");
    }
    for (e, _) in r.terms() {
        if e[n - 1] as usize >= order {
            return fail("remainder degree in the last variable is not below the order");
        }
    }
    let lhs = &(&q * &f) + &r;
    if !series_congruent(&lhs, &g, checkprec) {
        return fail("q*f + r does not reproduce the dividend");
    }
    Ok(())
}

fn verify_preparation(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let f = decl.parse_multi(a.get("f")?)?;
    let unit = decl.parse_multi(a.get("unit")?)?;
    let dist = decl.parse_multi(a.get("distinguished")?)?;
    let order = parse_usize(a, "order")?;
    let checkprec = parse_usize(a, "checkprec")?;
    if order_in_tn(&f)? != order {
        return mismatch("stated order disagrees with the input");
    }
    if unit.constant_term().is_zero() {
        return fail("unit factor is not invertible");
    }
    let pure = dist.at_tprime_zero();
    let mut mono = vec![Scalar::zero(); pure.prec()];
    if order < pure.prec() {
        mono[order] = Scalar::one();
    }
    if pure != UniSeries::new(mono, pure.prec()) {
        return fail("distinguished factor is not t_n^s at the origin of the other variables");
    }
    let lhs = &unit * &dist;
    if !series_congruent(&lhs, &f, checkprec) {
        return fail("unit * distinguished does not reproduce the input");
    }
    Ok(())
}

fn verify_substitution(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let shifts: Vec<&str> = a.all("shift");
    let sigma = parse_substitution(&shifts, &decl)?;
    let inputs = a.all("input");
    if inputs.is_empty() {
        return Err(Error::BadFormat("no inputs recorded".into()));
    }
    for text in inputs {
        let f = decl.parse_multi(text)?;
        let moved = sigma.apply(&f);
        if order_in_tn(&moved).is_err() {
            return fail("an input stays irregular after the substitution");
        }
    }
    Ok(())
}

fn verify_sos_certificate(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Mixed, RingKind::Multi])?;
    let gens_text = a.all("gen");
    if let Some(m) = a.get_opt("m") {
        if parse_count(m, "m")? != gens_text.len() {
            return mismatch("stated number of squares disagrees with the generator count");
        }
    }
    match decl.ring {
        RingKind::Mixed => {
            let target = decl.parse_mixed(a.get("target")?)?;
            let gens = gens_text
                .iter()
                .map(|t| decl.parse_mixed(t))
                .collect::<Result<Vec<_>>>()?;
            check_sos(&target, &gens)
        }
        RingKind::Multi => {
            let target = decl.parse_multi(a.get("target")?)?;
            let gens = gens_text
                .iter()
                .map(|t| decl.parse_multi(t))
                .collect::<Result<Vec<_>>>()?;
            check_sos(&target, &gens)
        }
        _ => unreachable!(),
    }
}

/// The mixed-ring congruence f ≡ a² b (mod t^prec), peeling the stripped
/// t-power off `a` first and restoring it last.
fn check_mixed_identity(
    f: &MixedA,
    a: &MixedA,
    b: &PolyB,
    stripped: usize,
    prec: usize,
) -> Result<()> {
    let a0 = a
        .div_t_pow(stripped)
        .map_err(|_| Error::CertificateInvalid("a does not carry the stripped power".into()))?;
    let lhs = (&(&a0 * &a0) * &polyb_to_mixed(b)).mul_t_pow(2 * stripped);
    if !mixed_congruent(&lhs, f, prec) {
        return fail("a^2 * b does not reproduce the target");
    }
    Ok(())
}

/// The series-ring congruence σf ≡ a² b modulo total degree `prec`, with
/// the stripped power a power of the first variable.
fn check_series_identity(
    sf: &MultiSeries,
    a: &MultiSeries,
    b: &MultiSeries,
    stripped: usize,
    prec: usize,
) -> Result<()> {
    let mut strip = vec![0u32; sf.nvars()];
    strip[0] = stripped as u32;
    let a0 = a
        .div_monomial(&strip)
        .map_err(|_| Error::CertificateInvalid("a does not carry the stripped power".into()))?;
    strip[0] *= 2;
    let lhs = (&(&a0 * &a0) * b).mul_monomial(&strip, &Scalar::one());
    if !series_congruent(&lhs, sf, prec) {
        return fail("a^2 * b does not reproduce the target");
    }
    Ok(())
}

fn verify_transfer(a: &Artifact) -> Result<()> {
    match a.get("variant")? {
        "lemma41" => {
            let decl = decl_of(a, &[RingKind::Mixed])?;
            let f = decl.parse_mixed(a.get("f")?)?;
            let av = decl.parse_mixed(a.get("a")?)?;
            let b = decl.parse_polyb(a.get("b")?)?;
            let gens = a
                .all("bgen")
                .iter()
                .map(|t| decl.parse_polyb(t))
                .collect::<Result<Vec<_>>>()?;
            check_sos(&b, &gens)?;
            check_mixed_identity(
                &f,
                &av,
                &b,
                parse_usize(a, "stripped")?,
                parse_usize(a, "checkprec")?,
            )
        }
        "lemma52" => {
            let decl = decl_of(a, &[RingKind::Multi])?;
            let f = decl.parse_multi(a.get("f")?)?;
            let av = decl.parse_multi(a.get("a")?)?;
            let b = decl.parse_multi(a.get("b")?)?;
            let gens = a
                .all("bgen")
                .iter()
                .map(|t| decl.parse_multi(t))
                .collect::<Result<Vec<_>>>()?;
            check_sos(&b, &gens)?;
            check_series_identity(
                &f,
                &av,
                &b,
                parse_usize(a, "stripped")?,
                parse_usize(a, "checkprec")?,
            )
        }
        other => Err(Error::BadFormat(format!("unknown transfer variant `{other}`"))),
    }
}

fn verify_transfer_list(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let shifts = shifts_before(a, "transfer");
    let shift_refs: Vec<&str> = shifts.iter().map(String::as_str).collect();
    let sigma = parse_substitution(&shift_refs, &decl)?;
    let groups = a.groups("transfer");
    if groups.is_empty() {
        return Err(Error::BadFormat("no transfer blocks".into()));
    }
    for g in groups {
        let f = decl.parse_multi(group_get(g, "f")?)?;
        let av = decl.parse_multi(group_get(g, "a")?)?;
        let b = decl.parse_multi(group_get(g, "b")?)?;
        let gens = group_all(g, "bgen")
            .iter()
            .map(|t| decl.parse_multi(t))
            .collect::<Result<Vec<_>>>()?;
        check_sos(&b, &gens)?;
        let stripped = parse_count(group_get(g, "stripped")?, "stripped")?;
        let prec = parse_count(group_get(g, "checkprec")?, "checkprec")?;
        check_series_identity(&sigma.apply(&f), &av, &b, stripped, prec)?;
    }
    Ok(())
}

fn verify_factorization(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Mixed])?;
    let f = decl.parse_mixed(a.get("f")?)?;
    let unit = decl.parse_mixed(a.get("unit")?)?;
    let poly = decl.parse_polyb(a.get("poly")?)?;
    let stripped = parse_usize(a, "stripped")?;
    let checkprec = parse_usize(a, "checkprec")?;
    if unit.coeff(0) != XPoly::one() {
        return fail("unit is not normalized to constant term 1");
    }
    let lhs = (&unit * &polyb_to_mixed(&poly)).mul_t_pow(stripped);
    if !mixed_congruent(&lhs, &f, checkprec) {
        return fail("t-power * unit * polynomial does not reproduce the input");
    }
    Ok(())
}

fn verify_descent(a: &Artifact) -> Result<()> {
    let field = parse_field(a.get("field")?)?;
    let var = a.get("var")?;
    let f = expr::parse_xpoly(a.get("f")?, var, &field)?;
    let gens = a
        .all("gen")
        .iter()
        .map(|t| expr::parse_xpoly(t, var, &field))
        .collect::<Result<Vec<_>>>()?;
    check_sos(&f, &gens)?;
    let degrees: Vec<usize> = a
        .get("degrees")?
        .split(',')
        .map(|d| parse_count(d.trim(), "degrees"))
        .collect::<Result<_>>()?;
    if !degrees.windows(2).all(|w| w[0] > w[1]) {
        return fail("denominator degrees do not strictly decrease");
    }
    Ok(())
}

fn verify_sos_length(a: &Artifact) -> Result<()> {
    let value = expr::parse_rational(a.get("value")?)?;
    let length: u32 = a
        .get("length")?
        .parse()
        .map_err(|_| Error::BadFormat("bad integer for `length`".into()))?;
    if rational_sos::sos_length(&value)? != length {
        return mismatch("stated length disagrees with the recomputed one");
    }
    let witness = parse_rational_csv(a.get("witness")?)?;
    if witness.len() != length as usize {
        return fail("witness length disagrees with the stated length");
    }
    let sum: BigRational = witness.iter().map(|w| w * w).sum();
    if sum != value {
        return fail("witness squares do not sum to the value");
    }
    Ok(())
}

fn verify_bridge(a: &Artifact) -> Result<()> {
    let av = expr::parse_rational(a.get("a")?)?;
    let var = a.get("var")?;
    let field = CoefficientField::Rationals;
    let target = expr::parse_xpoly(a.get("target")?, var, &field)?;
    let expected = XPoly::new(vec![
        Scalar::from_rational(av.clone()),
        Scalar::zero(),
        Scalar::one(),
    ]);
    if target != expected {
        return mismatch("target is not t^2 + a");
    }
    let gens = a
        .all("gen")
        .iter()
        .map(|t| expr::parse_xpoly(t, var, &field))
        .collect::<Result<Vec<_>>>()?;
    check_sos(&target, &gens)?;
    if gens.len() != rational_sos::sos_length(&av)? as usize + 1 {
        return mismatch("number of squares is not sos_length(a) + 1");
    }
    Ok(())
}

fn verify_qform_hilbert(a: &Artifact) -> Result<()> {
    let x = expr::parse_rational(a.get("a")?)?;
    let y = expr::parse_rational(a.get("b")?)?;
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroInput);
    }
    let place = parse_place(a.get("place")?)?;
    let symbol = parse_sign(a.get("symbol")?, "symbol")?;
    if quadform::hilbert_symbol(&x, &y, &place) != symbol {
        return mismatch("stated symbol disagrees with the recomputed one");
    }
    Ok(())
}

fn verify_qform_isotropy(a: &Artifact) -> Result<()> {
    let entries = parse_rational_csv(a.get("entries")?)?;
    let form = DiagonalForm::new(&entries)?;
    let isotropic = parse_bool(a.get("isotropic")?, "isotropic")?;
    let result = quadform::is_isotropic_q(&form)?;
    if result.isotropic != isotropic {
        return mismatch("stated isotropy disagrees with the recomputed one");
    }
    if let Some(w) = a.get_opt("witness") {
        let witness = parse_rational_csv(w)?;
        if !isotropic {
            return fail("anisotropic forms have no witness");
        }
        if witness.len() != entries.len() {
            return fail("witness dimension disagrees with the form");
        }
        if witness.iter().all(Zero::is_zero) {
            return fail("witness is identically zero");
        }
        let value: BigRational = entries.iter().zip(&witness).map(|(c, w)| c * w * w).sum();
        if !value.is_zero() {
            return fail("witness does not vanish on the form");
        }
    }
    Ok(())
}

fn verify_qform_torsion(a: &Artifact) -> Result<()> {
    let entries = parse_rational_csv(a.get("entries")?)?;
    let form = DiagonalForm::new(&entries)?;
    let torsion = parse_bool(a.get("torsion")?, "torsion")?;
    let signature: i64 = a
        .get("signature")?
        .parse()
        .map_err(|_| Error::BadFormat("bad integer for `signature`".into()))?;
    if form.signature() != signature {
        return mismatch("stated signature disagrees with the recomputed one");
    }
    if quadform::is_torsion_q(&form) != torsion {
        return mismatch("stated torsion flag disagrees with the recomputed one");
    }
    Ok(())
}

fn verify_qform_blocks(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Mixed, RingKind::Multi])?;
    let groups = a.groups("block");
    if groups.is_empty() {
        return Err(Error::BadFormat("no blocks".into()));
    }
    for g in groups {
        match decl.ring {
            RingKind::Mixed => {
                let c = decl.parse_mixed(group_get(g, "c")?)?;
                if c.is_zero() {
                    return Err(Error::ZeroInput);
                }
                let d = decl.parse_mixed(group_get(g, "dtarget")?)?;
                let gens = group_all(g, "dgen")
                    .iter()
                    .map(|t| decl.parse_mixed(t))
                    .collect::<Result<Vec<_>>>()?;
                check_sos(&d, &gens)?;
            }
            RingKind::Multi => {
                let c = decl.parse_multi(group_get(g, "c")?)?;
                if c.is_zero() {
                    return Err(Error::ZeroInput);
                }
                let d = decl.parse_multi(group_get(g, "dtarget")?)?;
                let gens = group_all(g, "dgen")
                    .iter()
                    .map(|t| decl.parse_multi(t))
                    .collect::<Result<Vec<_>>>()?;
                check_sos(&d, &gens)?;
            }
            _ => unreachable!(),
        }
    }
    Ok(())
}

fn verify_qform_transfer(a: &Artifact) -> Result<()> {
    match a.get("variant")? {
        "mixed" => verify_qform_transfer_mixed(a),
        "series" => verify_qform_transfer_series(a),
        other => Err(Error::BadFormat(format!("unknown transfer variant `{other}`"))),
    }
}

fn verify_qform_transfer_mixed(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Mixed])?;
    let groups = a.groups("block");
    if groups.is_empty() {
        return Err(Error::BadFormat("no blocks".into()));
    }
    for g in groups {
        let c = decl.parse_mixed(group_get(g, "c")?)?;
        let cpoly = decl.parse_polyb(group_get(g, "cpoly")?)?;
        let cstripped = parse_count(group_get(g, "cstripped")?, "cstripped")?;
        let cratio = decl.parse_mixed(group_get(g, "cratio")?)?;
        let cprec = parse_count(group_get(g, "cprec")?, "cprec")?;
        // cpoly carries the stripped t-power; divide it off so the check
        // composes the shift last, at full precision
        if cpoly.prec() <= cstripped && cstripped > 0 {
            return fail("stripped power exceeds the polynomial's precision");
        }
        let cols = cpoly
            .coeffs()
            .iter()
            .map(|col| col.div_t_pow(cstripped))
            .collect::<Result<Vec<UniSeries>>>()
            .map_err(|_| {
                Error::CertificateInvalid("c-polynomial does not carry the stripped power".into())
            })?;
        let bare = PolyB::new(cols, cpoly.prec() - cstripped);
        let sq = &cratio * &cratio;
        let lhs = (&sq * &polyb_to_mixed(&bare)).mul_t_pow(cstripped);
        if !mixed_congruent(&lhs, &c, cprec) {
            return fail("ratio^2 * c-polynomial does not reproduce c");
        }

        let d = decl.parse_mixed(group_get(g, "dtarget")?)?;
        let da = decl.parse_mixed(group_get(g, "da")?)?;
        let db = decl.parse_polyb(group_get(g, "db")?)?;
        let dgens = group_all(g, "dbgen")
            .iter()
            .map(|t| decl.parse_polyb(t))
            .collect::<Result<Vec<_>>>()?;
        check_sos(&db, &dgens)?;
        let dstripped = parse_count(group_get(g, "dstripped")?, "dstripped")?;
        let dprec = parse_count(group_get(g, "dprec")?, "dprec")?;
        check_mixed_identity(&d, &da, &db, dstripped, dprec)?;
    }
    Ok(())
}

fn verify_qform_transfer_series(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let shifts = shifts_before(a, "block");
    let shift_refs: Vec<&str> = shifts.iter().map(String::as_str).collect();
    let sigma = parse_substitution(&shift_refs, &decl)?;
    let groups = a.groups("block");
    if groups.is_empty() {
        return Err(Error::BadFormat("no blocks".into()));
    }
    let n = decl.vars.len();
    for g in groups {
        let c = decl.parse_multi(group_get(g, "c")?)?;
        let cpoly = decl.parse_multi(group_get(g, "cpoly")?)?;
        let cstripped = parse_count(group_get(g, "cstripped")?, "cstripped")?;
        let cratio = decl.parse_multi(group_get(g, "cratio")?)?;
        let cprec = parse_count(group_get(g, "cprec")?, "cprec")?;
        let moved = sigma.apply(&c);
        let mut strip = vec![0u32; n];
        strip[0] = cstripped as u32;
        let sq = &cratio * &cratio;
        let lhs = (&sq * &cpoly).mul_monomial(&strip, &Scalar::one());
        if !series_congruent(&lhs, &moved, cprec) {
            return fail("ratio^2 * t1-power * c-polynomial does not reproduce c");
        }

        let d = decl.parse_multi(group_get(g, "dtarget")?)?;
        let da = decl.parse_multi(group_get(g, "da")?)?;
        let db = decl.parse_multi(group_get(g, "db")?)?;
        let dgens = group_all(g, "dbgen")
            .iter()
            .map(|t| decl.parse_multi(t))
            .collect::<Result<Vec<_>>>()?;
        check_sos(&db, &dgens)?;
        let dstripped = parse_count(group_get(g, "dstripped")?, "dstripped")?;
        let dprec = parse_count(group_get(g, "dprec")?, "dprec")?;
        check_series_identity(&sigma.apply(&d), &da, &db, dstripped, dprec)?;
    }
    Ok(())
}

fn verify_valuation(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let f = decl.parse_multi(a.get("f")?)?;
    if blowup::origin_valuation(&f)? != parse_usize(a, "value")? {
        return mismatch("stated value disagrees with the recomputed one");
    }
    Ok(())
}

fn verify_valuation_residue(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let f = decl.parse_multi(a.get("f")?)?;
    let g = decl.parse_multi(a.get("g")?)?;
    let value = parse_usize(a, "value")?;
    if blowup::origin_valuation(&f)? != value || blowup::origin_valuation(&g)? != value {
        return mismatch("stated value disagrees with the recomputed ones");
    }
    let uvars = uvar_names(decl.vars.len() - 1);
    let uvar_refs: Vec<&str> = uvars.iter().map(String::as_str).collect();
    let num = expr::parse_mpoly(a.get("num")?, &uvar_refs, &decl.field)?;
    let den = expr::parse_mpoly(a.get("den")?, &uvar_refs, &decl.field)?;
    if den.is_zero() {
        return Err(Error::ZeroInput);
    }
    if blowup::residue_ratio(&f, &g)? != RatFn::new(num, den) {
        return mismatch("stated residue disagrees with the recomputed one");
    }
    Ok(())
}

fn verify_valuation_blowup2(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    if decl.vars.len() != 2 {
        return Err(Error::BadFormat("the second blow-up is a two-variable construction".into()));
    }
    let f = decl.parse_multi(a.get("f")?)?;
    let point = expr::parse_xpoly(a.get("point")?, "u", &CoefficientField::Rationals)?;
    let value = parse_usize(a, "value")?;
    let residue_field = a.get("residuefield")?;
    match a.get_opt("g") {
        None => {
            let res = blowup::second_blowup_valuation(&f, &point)?;
            if res.value != value || res.residue_field != residue_field {
                return mismatch("stated value disagrees with the recomputed one");
            }
        }
        Some(gt) => {
            let g = decl.parse_multi(gt)?;
            let res = blowup::second_blowup_residue(&f, &g, &point)?;
            if res.value != value || res.residue_field != residue_field {
                return mismatch("stated value disagrees with the recomputed one");
            }
            let ext = match a.get_opt("extfield") {
                Some(s) => parse_field(s)?,
                None => CoefficientField::Rationals,
            };
            let num = expr::parse_mpoly(a.get("num")?, &["s"], &ext)?;
            let den = expr::parse_mpoly(a.get("den")?, &["s"], &ext)?;
            if den.is_zero() {
                return Err(Error::ZeroInput);
            }
            if res.residue != Some(RatFn::new(num, den)) {
                return mismatch("stated residue disagrees with the recomputed one");
            }
        }
    }
    Ok(())
}

fn verify_residue_certificate(a: &Artifact) -> Result<()> {
    let decl = decl_of(a, &[RingKind::Multi])?;
    let target = decl.parse_multi(a.get("target")?)?;
    let gens = a
        .all("gen")
        .iter()
        .map(|t| decl.parse_multi(t))
        .collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        return Err(Error::BadFormat("certificate has no generators".into()));
    }
    let prec = joint_prec(&target, &gens).expect("series elements carry precisions");
    let cert = SosCertificate::new(target, gens, Some(prec));
    let res = blowup::residue_sos_check(&cert)?;
    if res.value != parse_usize(a, "value")? || res.residue_field != a.get("residuefield")? {
        return mismatch("stated value disagrees with the recomputed one");
    }
    let uvars = uvar_names(decl.vars.len().saturating_sub(1));
    let uvar_refs: Vec<&str> = uvars.iter().map(String::as_str).collect();
    let rtarget = expr::parse_mpoly(a.get("rtarget")?, &uvar_refs, &decl.field)?;
    if res.certificate.target != rtarget {
        return mismatch("stated residue target disagrees with the recomputed one");
    }
    let rgens = a
        .all("rgen")
        .iter()
        .map(|t| expr::parse_mpoly(t, &uvar_refs, &decl.field))
        .collect::<Result<Vec<_>>>()?;
    if res.certificate.gens != rgens {
        return mismatch("stated residue generators disagree with the recomputed ones");
    }
    Ok(())
}

fn verify_ratfn_sos(a: &Artifact) -> Result<()> {
    let vars: Vec<String> = a
        .get("vars")?
        .split(',')
        .map(|v| v.trim().to_string())
        .collect();
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let field = parse_field(a.get("field")?)?;
    let target = expr::parse_mpoly(a.get("target")?, &var_refs, &field)?;
    let den = expr::parse_mpoly(a.get("den")?, &var_refs, &field)?;
    if den.is_zero() {
        return Err(Error::ZeroInput);
    }
    let nums = a
        .all("num")
        .iter()
        .map(|t| expr::parse_mpoly(t, &var_refs, &field))
        .collect::<Result<Vec<_>>>()?;
    if nums.is_empty() {
        return Err(Error::BadFormat("certificate has no numerators".into()));
    }
    let lhs = sum_of_squares(&nums);
    let rhs = &target * &(&den * &den);
    if lhs != rhs {
        return fail("numerator squares do not sum to target * denominator^2");
    }
    Ok(())
}
