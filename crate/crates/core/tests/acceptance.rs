//! Acceptance gate: one line per criterion, all of which must hold.
//! Randomness is seeded so every run checks the same instances.

use std::time::Instant;

use laurent_core::blowup;
use laurent_core::mpoly::MPoly;
use laurent_core::quadform::{self, DiagonalForm, Place};
use laurent_core::rational_sos;
use laurent_core::scalar::{CoefficientField, Scalar};
use laurent_core::series::{MixedA, MultiSeries, XPoly};
use laurent_core::sos::{self, check_mixed_transfer, check_series_transfer, SosCertificate};
use laurent_core::weierstrass::{self, order_in_tn};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

macro_rules! ensure {
    ($cond:expr, $($m:tt)*) => {
        if !$cond {
            return Err(format!($($m)*));
        }
    };
}

type Check = fn() -> Result<(), String>;

#[test]
fn acceptance() {
    let checks: [(&str, Check); 8] = [
        ("1 (series division)", division_random_pairs),
        ("2 (series preparation)", preparation_random_inputs),
        ("3 (mixed-ring transfer)", mixed_transfer_random_certificates),
        ("4 (unit-times-polynomial)", factorization_fixture_and_random),
        ("5 (rational sos length)", sos_length_against_brute_force),
        ("6 (denominator descent)", inflate_then_descend),
        ("7 (quadratic forms)", quadratic_form_invariants),
        ("8 (blow-up valuations)", valuations_and_residues),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(why) => {
                println!("criterion {name}: FAIL - {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

fn q() -> CoefficientField {
    CoefficientField::Rationals
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rand_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_integer(rng.gen_range(-3..=3))
}

fn rand_nonzero_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = rand_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Sparse random series: a handful of low-degree terms.
fn rand_series(rng: &mut ChaCha8Rng, n: usize, prec: usize, terms: usize) -> MultiSeries {
    let mut f = MultiSeries::zero(n, prec);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        for x in e.iter_mut() {
            *x = rng.gen_range(0..=3);
        }
        if e.iter().map(|&x| x as usize).sum::<usize>() >= prec {
            continue;
        }
        f.insert_add(e, rand_scalar(rng));
    }
    f
}

/// Random series that is tn-regular of order exactly `s`: no pure-tn terms
/// below s, a unit coefficient at tn^s.
fn rand_regular(rng: &mut ChaCha8Rng, n: usize, prec: usize, s: usize) -> MultiSeries {
    let mut f = rand_series(rng, n, prec, 8);
    for j in 0..s {
        let mut e = vec![0u32; n];
        e[n - 1] = j as u32;
        let c = f.coeff(&e);
        if !c.is_zero() {
            f.insert_add(e, -&c);
        }
    }
    let mut e = vec![0u32; n];
    e[n - 1] = s as u32;
    let c = f.coeff(&e);
    f.insert_add(e, &rand_nonzero_scalar(rng) + &(-&c));
    f
}

fn rand_xpoly(rng: &mut ChaCha8Rng, maxdeg: usize) -> XPoly {
    XPoly::new((0..=maxdeg).map(|_| rand_scalar(rng)).collect())
}

fn rand_mixed(rng: &mut ChaCha8Rng, prec: usize, maxdeg: usize) -> MixedA {
    MixedA::new((0..prec).map(|_| rand_xpoly(rng, maxdeg)).collect(), prec)
}

fn division_random_pairs() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let started = Instant::now();
    for i in 0..100 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let s = rng.gen_range(0..=3usize);
        let prec = 12;
        let f = rand_regular(&mut rng, n, prec, s);
        let order = order_in_tn(&f).map_err(|e| format!("instance #{i} is not regular: {e}"))?;
        ensure!(order == s, "generator produced regularity order {order}, wanted {s}");
        let g = rand_series(&mut rng, n, prec, 8);
        let div = weierstrass::weierstrass_divide(&g, &f)
            .map_err(|e| format!("division #{i} failed: {e}"))?;
        ensure!(
            div.remainder.deg_tn().map_or(0, |d| d + 1) <= s,
            "remainder degree reaches the order in instance #{i}"
        );
        let back = &(&div.quotient * &f) + &div.remainder.to_series();
        ensure!(
            back.prec() >= div.prec && back.agrees_mod(&g, div.prec),
            "recomposition disagrees at the documented precision in instance #{i}"
        );
        ensure!(div.prec == prec - s, "unexpected output precision in instance #{i}");
    }
    let elapsed = started.elapsed();
    ensure!(
        elapsed.as_secs() < 30,
        "100 divisions took {elapsed:?}, over the 30s budget"
    );
    Ok(())
}

fn preparation_random_inputs() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for i in 0..100 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let s = rng.gen_range(0..=3usize);
        let f = rand_regular(&mut rng, n, 16, s);
        let w = weierstrass::weierstrass_prepare(&f)
            .map_err(|e| format!("preparation #{i} failed: {e}"))?;
        ensure!(w.order == s, "wrong order in instance #{i}");
        ensure!(
            w.distinguished.deg_tn() == Some(s) || (s == 0 && w.distinguished.deg_tn().is_none()),
            "distinguished degree differs from the order in instance #{i}"
        );
        let pure = w.distinguished.at_tprime_zero();
        let expected = if s == 0 {
            XPoly::one()
        } else {
            XPoly::monomial(s, Scalar::one())
        };
        ensure!(
            pure == expected,
            "distinguished part is not tn^{s} at the origin in instance #{i}"
        );
        ensure!(w.prec >= 10, "output precision dropped below 10 in instance #{i}");
        let back = &w.unit * &w.distinguished.to_series();
        ensure!(
            back.prec() >= 10 && f.prec() >= 10 && back.agrees_mod(&f, 10),
            "unit * distinguished disagrees with the input mod degree 10 in instance #{i}"
        );
    }
    Ok(())
}

fn mixed_transfer_random_certificates() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for i in 0..50 {
        let m = rng.gen_range(1..=4usize);
        let prec = 12;
        // every fourth instance carries a stripped t-power
        let e = usize::from(i % 4 == 0);
        let mut gens = Vec::with_capacity(m);
        for k in 0..m {
            let mut g = rand_mixed(&mut rng, prec, 2);
            if k == 0 {
                // anchor the t-order so the target stays nonzero of order 2e
                g = &g + &MixedA::constant(
                    XPoly::constant(rand_nonzero_scalar(&mut rng)),
                    prec,
                );
            }
            gens.push(g.mul_t_pow(e));
        }
        let mut target = MixedA::zero(prec);
        for g in &gens {
            target = &target + &(g * g);
        }
        ensure!(!target.is_zero(), "degenerate random target in instance #{i}");
        let cert = SosCertificate::new(target.clone(), gens, Some(prec));
        let res = sos::lemma41_transfer(&cert, &q())
            .map_err(|err| format!("transfer #{i} failed: {err}"))?;
        ensure!(res.b_cert.m() == m, "number of squares changed in instance #{i}");
        ensure!(res.stripped_power == e, "unexpected stripped power in instance #{i}");
        ensure!(
            check_mixed_transfer(&target, &res),
            "transfer identity fails at full precision in instance #{i}"
        );
        ensure!(res.prec >= 10, "output precision dropped below 10 in instance #{i}");
        // remainder-route generators stay below the x-degree of the
        // constant-order part of the stripped target
        let f0 = target
            .div_t_pow(2 * e)
            .map_err(|err| err.to_string())?
            .coeff(0);
        if let Some(d0) = f0.deg() {
            if d0 > 0 {
                for g in &res.b_cert.gens {
                    ensure!(
                        g.deg_x().map_or(0, |d| d + 1) <= d0,
                        "a generator reaches the constant-order degree in instance #{i}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn factorization_fixture_and_random() -> Result<(), String> {
    // f = x + t x^2 factors as (1 + x t) * x exactly
    let prec = 10;
    let f = MixedA::new(
        vec![XPoly::monomial(1, Scalar::one()), XPoly::monomial(2, Scalar::one())],
        prec,
    );
    let fac = sos::lemma47_factor(&f).map_err(|e| e.to_string())?;
    let expected_unit = MixedA::new(vec![XPoly::one(), XPoly::monomial(1, Scalar::one())], prec);
    ensure!(fac.stripped == 0, "fixture should not strip a t-power");
    ensure!(fac.unit == expected_unit, "fixture unit is not 1 + x t");
    ensure!(
        fac.poly.deg_x() == Some(1) && fac.poly.coeff(1) == laurent_core::series::UniSeries::one(prec)
            && fac.poly.coeff(0).is_zero(),
        "fixture polynomial part is not x"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for i in 0..50 {
        let prec = 10;
        let mut f = rand_mixed(&mut rng, prec, 3);
        if f.coeff(0).is_zero() {
            f = &f + &MixedA::constant(XPoly::constant(rand_nonzero_scalar(&mut rng)), prec);
        }
        let fac = sos::lemma47_factor(&f).map_err(|e| format!("factorization #{i}: {e}"))?;
        ensure!(
            fac.unit.coeff(0) == XPoly::one(),
            "unit not normalized in instance #{i}"
        );
        let f0 = f.div_t_pow(fac.stripped).map_err(|e| e.to_string())?.coeff(0);
        ensure!(
            fac.poly.deg_x() <= f0.deg(),
            "polynomial part exceeds the constant-level degree in instance #{i}"
        );
        let back = (&fac.unit * &laurent_core::series::convert::polyb_to_mixed(&fac.poly))
            .mul_t_pow(fac.stripped);
        ensure!(
            back.prec() >= prec && back.agrees_mod(&f, prec),
            "recomposition disagrees mod t^{prec} in instance #{i}"
        );
    }
    Ok(())
}

/// Independent shortest-length oracle for integers: a positive integer is a
/// sum of m rational squares iff it is a sum of m integer squares, so small
/// cases reduce to finite search.
fn brute_force_length(n: u64) -> u32 {
    let isqrt = |v: u64| -> u64 {
        let mut r = (v as f64).sqrt() as u64;
        while r * r > v {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= v {
            r += 1;
        }
        r
    };
    let is_square = |v: u64| {
        let r = isqrt(v);
        r * r == v
    };
    if is_square(n) {
        return 1;
    }
    for a in 1..=isqrt(n) {
        if is_square(n - a * a) {
            return 2;
        }
    }
    for a in 1..=isqrt(n) {
        for b in a..=isqrt(n - a * a) {
            let rest = n - a * a - b * b;
            if rest > 0 && is_square(rest) {
                return 3;
            }
        }
    }
    4
}

fn sos_length_against_brute_force() -> Result<(), String> {
    for n in 1..=200u64 {
        let got = rational_sos::sos_length(&rat(n as i64, 1)).map_err(|e| e.to_string())?;
        let want = brute_force_length(n);
        ensure!(got == want, "length({n}) = {got}, brute force says {want}");
    }
    let seven = rational_sos::sos_length(&rat(7, 1)).map_err(|e| e.to_string())?;
    ensure!(seven == 4, "7 must need four squares");
    let one = rational_sos::sos_length(&rat(1, 1)).map_err(|e| e.to_string())?;
    ensure!(one == 1, "1 must need one square");

    let bridge = rational_sos::bridge_certificate(&rat(7, 1)).map_err(|e| e.to_string())?;
    ensure!(bridge.certificate.m() == 5, "t^2 + 7 must use five squares");
    ensure!(bridge.certificate.verifies(), "bridge certificate must verify");
    let expected =
        XPoly::new(vec![Scalar::from_integer(7), Scalar::zero(), Scalar::one()]);
    ensure!(bridge.certificate.target == expected, "bridge target is not t^2 + 7");
    Ok(())
}

fn inflate_then_descend() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for i in 0..20 {
        let m = rng.gen_range(1..=4usize);
        let mut gens = Vec::with_capacity(m);
        for _ in 0..m {
            gens.push(rand_xpoly(&mut rng, 3));
        }
        if gens.iter().all(|g| g.deg().is_none()) {
            gens[0] = XPoly::one();
        }
        let mut f = XPoly::zero();
        for g in &gens {
            f = &f + &(g * g);
        }
        let mut den = rand_xpoly(&mut rng, 2);
        while den.deg().unwrap_or(0) < 1 {
            den = rand_xpoly(&mut rng, 2);
        }
        let nums: Vec<XPoly> = gens.iter().map(|g| g * &den).collect();
        let res = sos::cassels_pfister_descend(&f, &nums, &den, &q())
            .map_err(|e| format!("descent #{i} failed: {e}"))?;
        ensure!(res.certificate.m() == m, "number of squares changed in instance #{i}");
        ensure!(
            res.certificate.verifies(),
            "final certificate is not exact in instance #{i}"
        );
        ensure!(res.certificate.target == f, "target drifted in instance #{i}");
        ensure!(
            res.denominator_degrees.windows(2).all(|w| w[0] > w[1]),
            "denominator degrees do not strictly decrease in instance #{i}: {:?}",
            res.denominator_degrees
        );
    }
    Ok(())
}

fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let n = rng.gen_range(-30..=30i64);
        let d = rng.gen_range(1..=30i64);
        if n != 0 {
            return rat(n, d);
        }
    }
}

/// Places where a Hilbert symbol of the pair can be nontrivial: the real
/// place, 2, and odd primes dividing either numerator or denominator.
fn pair_places(a: &BigRational, b: &BigRational) -> Vec<Place> {
    let mut places = vec![Place::Real, Place::Prime(2)];
    let mut primes = Vec::new();
    for x in [a, b] {
        for part in [x.numer().abs(), x.denom().abs()] {
            let mut v: u64 = part.try_into().expect("small test values");
            while v.is_multiple_of(2) {
                v /= 2;
            }
            let mut p = 3;
            while p * p <= v {
                if v.is_multiple_of(p) {
                    primes.push(p);
                    while v.is_multiple_of(p) {
                        v /= p;
                    }
                }
                p += 2;
            }
            if v > 2 {
                primes.push(v);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    places.extend(primes.into_iter().map(Place::Prime));
    places
}

fn quadratic_form_invariants() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for i in 0..200 {
        let a = random_nonzero_rational(&mut rng);
        let b = random_nonzero_rational(&mut rng);
        let mut product = 1i32;
        for place in pair_places(&a, &b) {
            product *= i32::from(quadform::hilbert_symbol(&a, &b, &place));
        }
        ensure!(
            product == 1,
            "hilbert product formula fails for pair #{i}: ({a}, {b})"
        );
    }

    let aniso = DiagonalForm::new(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(-7, 1)])
        .map_err(|e| e.to_string())?;
    let res = quadform::is_isotropic_q(&aniso).map_err(|e| e.to_string())?;
    ensure!(!res.isotropic, "<1,1,1,-7> must be anisotropic");

    let iso = DiagonalForm::new(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1), rat(-7, 1)])
        .map_err(|e| e.to_string())?;
    let res = quadform::is_isotropic_q(&iso).map_err(|e| e.to_string())?;
    ensure!(res.isotropic, "<1,1,1,1,-7> must be isotropic");
    let witness = res.witness.ok_or("five-dimensional witness missing")?;
    let expected: Vec<BigRational> =
        [2, 1, 1, 1, 1].iter().map(|&v| rat(v, 1)).collect();
    ensure!(witness == expected, "unexpected witness {witness:?}");

    // binary torsion blocks: ten mixed-ring and ten series-ring transfers
    for i in 0..10 {
        let prec = 9;
        let mut c = rand_mixed(&mut rng, prec, 2);
        if c.is_zero() {
            c = MixedA::one(prec);
        }
        let m = rng.gen_range(1..=3usize);
        let mut gens = Vec::new();
        for k in 0..m {
            let mut g = rand_mixed(&mut rng, prec, 2);
            if k == 0 {
                g = &g + &MixedA::constant(XPoly::constant(rand_nonzero_scalar(&mut rng)), prec);
            }
            gens.push(g);
        }
        let mut d = MixedA::zero(prec);
        for g in &gens {
            d = &d + &(g * g);
        }
        let cert = SosCertificate::new(d.clone(), gens, Some(prec));
        let (_, blocks) = quadform::prop54_transfer_mixed(&[(c.clone(), cert)], &q())
            .map_err(|e| format!("mixed block #{i} failed: {e}"))?;
        ensure!(
            quadform::check_mixed_block(&c, &d, &blocks[0]),
            "mixed block #{i} fails its re-verification"
        );
    }
    for i in 0..10 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let prec = 9;
        let mut c = rand_series(&mut rng, n, prec, 6);
        if c.is_zero() {
            c = MultiSeries::one(n, prec);
        }
        let m = rng.gen_range(1..=3usize);
        let mut gens = Vec::new();
        for k in 0..m {
            let mut g = rand_series(&mut rng, n, prec, 5);
            if k == 0 && g.is_zero() {
                g = MultiSeries::one(n, prec);
            }
            gens.push(g);
        }
        // over the rationals a sum of squares only vanishes termwise, so the
        // nonzero first generator keeps d nonzero
        let mut d = MultiSeries::zero(n, prec);
        for g in &gens {
            d = &d + &(g * g);
        }
        let cert = SosCertificate::new(d.clone(), gens, Some(prec));
        let (sigma, blocks) = quadform::prop54_transfer_series(&[(c.clone(), cert)], &q())
            .map_err(|e| format!("series block #{i} failed: {e}"))?;
        ensure!(
            quadform::check_series_block(&sigma.apply(&c), &sigma.apply(&d), &blocks[0]),
            "series block #{i} fails its re-verification"
        );
        if sigma.is_identity() {
            ensure!(
                check_series_transfer(&d, &blocks[0].d_transfer),
                "stored d-transfer must re-verify against the unmoved input in instance #{i}"
            );
        }
    }
    Ok(())
}

fn motzkin_identity() -> Result<(), String> {
    let x = MPoly::var(0, 2);
    let y = MPoly::var(1, 2);
    let one = MPoly::one(2);
    let two = MPoly::constant(Scalar::from_integer(2), 2);
    let three = MPoly::constant(Scalar::from_integer(3), 2);
    let x2 = &x * &x;
    let y2 = &y * &y;
    let x2y2 = &x2 * &y2;
    let m = &(&(&(&x2 * &x2y2) + &(&x2y2 * &y2)) - &(&three * &x2y2)) + &one;
    let s = &(&x2 + &y2) - &two;
    let den = &x2 + &y2;
    let nums = [
        &(&x2 * &y) * &s,
        &(&x * &y2) * &s,
        &(&x * &y) * &s,
        &x2 - &y2,
    ];
    let mut lhs = MPoly::zero(2);
    for p in &nums {
        lhs = &lhs + &(p * p);
    }
    let rhs = &m * &(&den * &den);
    ensure!(lhs == rhs, "the four-square identity for the Motzkin polynomial fails");
    Ok(())
}

fn valuations_and_residues() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for i in 0..200 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let prec = 12;
        let f = rand_series(&mut rng, n, prec, 6);
        let g = rand_series(&mut rng, n, prec, 6);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let vf = blowup::origin_valuation(&f).map_err(|e| e.to_string())?;
        let vg = blowup::origin_valuation(&g).map_err(|e| e.to_string())?;
        if vf + vg < prec {
            // below the truncation the product's valuation is representable
            let vfg = blowup::origin_valuation(&(&f * &g)).map_err(|e| e.to_string())?;
            ensure!(vf + vg == vfg, "multiplicativity fails in instance #{i}");
        }
        let sum = &f + &g;
        if let Ok(vs) = blowup::origin_valuation(&sum) {
            ensure!(
                vs >= vf.min(vg),
                "ultrametric inequality fails in instance #{i}"
            );
        }
    }

    for i in 0..20 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let prec = 10;
        let m = rng.gen_range(1..=3usize);
        let mut gens = Vec::new();
        for k in 0..m {
            let mut g = rand_series(&mut rng, n, prec, 4);
            if k == 0 && g.is_zero() {
                g = MultiSeries::var(0, n, prec);
            }
            gens.push(g);
        }
        // leading forms of squares cannot cancel over the rationals, so the
        // target is nonzero with even valuation and the residue always exists
        let mut target = MultiSeries::zero(n, prec);
        for g in &gens {
            target = &target + &(g * g);
        }
        let cert = SosCertificate::new(target, gens, Some(prec));
        let res = blowup::residue_sos_check(&cert)
            .map_err(|e| format!("residue push #{i} failed: {e}"))?;
        ensure!(
            res.certificate.verifies(),
            "residue certificate #{i} does not verify exactly"
        );
        ensure!(
            res.certificate.prec.is_none(),
            "residue certificate #{i} is not exact"
        );
    }

    motzkin_identity()
}
