//! One runner per subcommand. Each parses its inputs, calls into the core
//! library, and produces a human-readable summary plus a structured
//! artifact; inputs are re-serialized canonically so artifacts always
//! round-trip through `verify`.

use std::fs;
use std::path::Path;

use laurent_core::blowup;
use laurent_core::error::{Error, Result};
use laurent_core::expr;
use laurent_core::mpoly::RatFn;
use laurent_core::quadform::{self, DiagonalForm};
use laurent_core::rational_sos;
use laurent_core::scalar::CoefficientField;
use laurent_core::series::{MixedA, MultiSeries, TnPoly};
use laurent_core::sos::{self, RingElem, SosCertificate, TransferResult};
use laurent_core::weierstrass::{self, Substitution};
use num_rational::BigRational;
use num_traits::Zero;

use crate::artifact::{format_substitution, group_all, group_get, Artifact, RingDecl, RingKind};
use crate::verify::{self, parse_place, parse_rational_csv, uvar_names};

pub struct Output {
    pub summary: String,
    pub artifact: Artifact,
}

fn load_artifact(path: &Path) -> Result<Artifact> {
    Artifact::parse(&fs::read_to_string(path)?)
}

/// Reads a stored sum-of-squares certificate over k[x][[t]].
fn load_mixed_cert(art: &Artifact) -> Result<(RingDecl, SosCertificate<MixedA>)> {
    expect_kind(art, "sos-certificate")?;
    let decl = RingDecl::from_artifact(art)?;
    if decl.ring != RingKind::Mixed {
        return Err(Error::BadFormat(format!(
            "expected a mixed-ring certificate, found `{}`",
            decl.ring.name()
        )));
    }
    let target = decl.parse_mixed(art.get("target")?)?;
    let gens = art
        .all("gen")
        .iter()
        .map(|t| decl.parse_mixed(t))
        .collect::<Result<Vec<_>>>()?;
    Ok((decl, build_cert(target, gens)?))
}

/// Reads a stored sum-of-squares certificate over k[[t1,...,tn]].
fn load_multi_cert(art: &Artifact) -> Result<(RingDecl, SosCertificate<MultiSeries>)> {
    expect_kind(art, "sos-certificate")?;
    let decl = RingDecl::from_artifact(art)?;
    if decl.ring != RingKind::Multi {
        return Err(Error::BadFormat(format!(
            "expected a series-ring certificate, found `{}`",
            decl.ring.name()
        )));
    }
    let target = decl.parse_multi(art.get("target")?)?;
    let gens = art
        .all("gen")
        .iter()
        .map(|t| decl.parse_multi(t))
        .collect::<Result<Vec<_>>>()?;
    Ok((decl, build_cert(target, gens)?))
}

fn expect_kind(art: &Artifact, kind: &str) -> Result<()> {
    if art.kind != kind {
        return Err(Error::BadFormat(format!(
            "expected a `{kind}` artifact, found `{}`",
            art.kind
        )));
    }
    Ok(())
}

fn build_cert<T: RingElem>(target: T, gens: Vec<T>) -> Result<SosCertificate<T>> {
    if gens.is_empty() {
        return Err(Error::BadFormat("certificate has no generators".into()));
    }
    let mut prec = target.prec_of();
    for g in &gens {
        prec = match (prec, g.prec_of()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
    }
    Ok(SosCertificate::new(target, gens, prec))
}

pub fn run_divide(decl: &RingDecl, g_text: &str, f_text: &str) -> Result<Output> {
    let g = decl.parse_multi(g_text)?;
    let f = decl.parse_multi(f_text)?;
    let div = weierstrass::weierstrass_divide(&g, &f)?;
    let order = weierstrass::order_in_tn(&f)?;
    let mut art = Artifact::new("division");
    decl.push_to(&mut art);
    art.push("f", decl.format_multi(&f));
    art.push("g", decl.format_multi(&g));
    art.push("order", order.to_string());
    art.push("quotient", decl.format_multi(&div.quotient));
    art.push("remainder", decl.format_multi(&div.remainder.to_series()));
    art.push("checkprec", div.prec.to_string());
    let summary = format!(
        "order: {order}\nquotient: {}\nremainder: {}\nprecision: {}",
        art.get("quotient")?,
        art.get("remainder")?,
        div.prec
    );
    Ok(Output { summary, artifact: art })
}

pub fn run_prepare(decl: &RingDecl, f_text: &str) -> Result<Output> {
    let f = decl.parse_multi(f_text)?;
    let w = weierstrass::weierstrass_prepare(&f)?;
    let mut art = Artifact::new("preparation");
    decl.push_to(&mut art);
    art.push("f", decl.format_multi(&f));
    art.push("order", w.order.to_string());
    art.push("unit", decl.format_multi(&w.unit));
    art.push("distinguished", decl.format_multi(&w.distinguished.to_series()));
    art.push("checkprec", w.prec.to_string());
    let summary = format!(
        "order: {}\nunit: {}\ndistinguished: {}\nprecision: {}",
        w.order,
        art.get("unit")?,
        art.get("distinguished")?,
        w.prec
    );
    Ok(Output { summary, artifact: art })
}

fn describe_substitution(sigma: &Substitution, decl: &RingDecl) -> String {
    if sigma.is_identity() {
        return "substitution: identity".to_string();
    }
    let tn = decl.vars.last().expect("at least one variable");
    sigma
        .assignments()
        .iter()
        .map(|(i, lambda, power)| {
            format!(
                "substitution: {v} <- {v} + {}*{tn}^{power}",
                expr::format_scalar(lambda),
                v = decl.vars[*i],
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn run_regularize(decl: &RingDecl, inputs: &[String]) -> Result<Output> {
    let fs: Vec<MultiSeries> = inputs
        .iter()
        .map(|t| decl.parse_multi(t))
        .collect::<Result<_>>()?;
    let sigma = weierstrass::regularize(&fs)?;
    let mut art = Artifact::new("substitution");
    decl.push_to(&mut art);
    for f in &fs {
        art.push("input", decl.format_multi(f));
    }
    format_substitution(&sigma, decl, &mut art);
    let mut lines = vec![describe_substitution(&sigma, decl)];
    for f in &fs {
        let order = weierstrass::order_in_tn(&sigma.apply(f))?;
        lines.push(format!("order: {order}"));
    }
    Ok(Output { summary: lines.join("\n"), artifact: art })
}

fn push_series_transfer(
    art: &mut Artifact,
    decl: &RingDecl,
    f: &MultiSeries,
    res: &TransferResult<MultiSeries, TnPoly>,
) {
    art.push("f", decl.format_multi(f));
    art.push("stripped", res.stripped_power.to_string());
    art.push("a", decl.format_multi(&res.a));
    art.push("b", decl.format_multi(&res.b_cert.target.to_series()));
    for g in &res.b_cert.gens {
        art.push("bgen", decl.format_multi(&g.to_series()));
    }
    art.push("checkprec", res.prec.to_string());
}

fn transfer_summary(stripped: usize, a: &str, b: &str, m: usize, prec: usize) -> String {
    format!(
        "stripped: {stripped}\na: {a}\nb: {b}\nsquares: {m}\nprecision: {prec}"
    )
}

pub fn run_sos_transfer(variant: &str, cert_paths: &[std::path::PathBuf]) -> Result<Output> {
    match variant {
        "lemma41" => {
            let [path] = cert_paths else {
                return Err(Error::BadFormat("lemma41 takes exactly one certificate".into()));
            };
            let (decl, cert) = load_mixed_cert(&load_artifact(path)?)?;
            let res = sos::lemma41_transfer(&cert, &decl.field)?;
            let mut art = Artifact::new("transfer");
            art.push("variant", "lemma41");
            decl.push_to(&mut art);
            art.push("f", decl.format_mixed(&cert.target));
            art.push("stripped", res.stripped_power.to_string());
            art.push("a", decl.format_mixed(&res.a));
            art.push("b", decl.format_polyb(&res.b_cert.target));
            for g in &res.b_cert.gens {
                art.push("bgen", decl.format_polyb(g));
            }
            art.push("checkprec", res.prec.to_string());
            let summary = transfer_summary(
                res.stripped_power,
                art.get("a")?,
                art.get("b")?,
                res.b_cert.m(),
                res.prec,
            );
            Ok(Output { summary, artifact: art })
        }
        "lemma52" => {
            let [path] = cert_paths else {
                return Err(Error::BadFormat("lemma52 takes exactly one certificate".into()));
            };
            let (decl, cert) = load_multi_cert(&load_artifact(path)?)?;
            let res = sos::lemma52_transfer(&cert, &decl.field)?;
            let mut art = Artifact::new("transfer");
            art.push("variant", "lemma52");
            decl.push_to(&mut art);
            push_series_transfer(&mut art, &decl, &cert.target, &res);
            let summary = transfer_summary(
                res.stripped_power,
                art.get("a")?,
                art.get("b")?,
                res.b_cert.m(),
                res.prec,
            );
            Ok(Output { summary, artifact: art })
        }
        "prop53" => {
            if cert_paths.is_empty() {
                return Err(Error::BadFormat("prop53 needs at least one certificate".into()));
            }
            let mut decls = Vec::new();
            let mut certs = Vec::new();
            for path in cert_paths {
                let (decl, cert) = load_multi_cert(&load_artifact(path)?)?;
                decls.push(decl);
                certs.push(cert);
            }
            let decl = decls[0].clone();
            for d in &decls[1..] {
                if d.vars != decl.vars || d.field != decl.field {
                    return Err(Error::BadFormat(
                        "certificates live in different rings".into(),
                    ));
                }
            }
            let (sigma, results) = sos::prop53_transform(&certs, &decl.field)?;
            let mut art = Artifact::new("transfer-list");
            decl.push_to(&mut art);
            format_substitution(&sigma, &decl, &mut art);
            for (cert, res) in certs.iter().zip(&results) {
                art.push("transfer", "");
                push_series_transfer(&mut art, &decl, &cert.target, res);
            }
            let mut lines = vec![describe_substitution(&sigma, &decl)];
            for res in &results {
                lines.push(format!(
                    "stripped: {}, squares: {}, precision: {}",
                    res.stripped_power,
                    res.b_cert.m(),
                    res.prec
                ));
            }
            Ok(Output { summary: lines.join("\n"), artifact: art })
        }
        other => Err(Error::BadFormat(format!("unknown transfer variant `{other}`"))),
    }
}

pub fn run_factor(decl: &RingDecl, f_text: &str) -> Result<Output> {
    let f = decl.parse_mixed(f_text)?;
    let fac = sos::lemma47_factor(&f)?;
    let mut art = Artifact::new("factorization");
    decl.push_to(&mut art);
    art.push("f", decl.format_mixed(&f));
    art.push("stripped", fac.stripped.to_string());
    art.push("unit", decl.format_mixed(&fac.unit));
    art.push("poly", decl.format_polyb(&fac.poly));
    art.push("checkprec", (fac.prec + fac.stripped).to_string());
    let summary = format!(
        "stripped: {}\nunit: {}\npoly: {}\nprecision: {}",
        fac.stripped,
        art.get("unit")?,
        art.get("poly")?,
        fac.prec
    );
    Ok(Output { summary, artifact: art })
}

pub fn run_cp_descend(
    var: &str,
    field: &CoefficientField,
    f_text: &str,
    den_text: &str,
    num_texts: &[String],
) -> Result<Output> {
    let f = expr::parse_xpoly(f_text, var, field)?;
    let den = expr::parse_xpoly(den_text, var, field)?;
    let nums = num_texts
        .iter()
        .map(|t| expr::parse_xpoly(t, var, field))
        .collect::<Result<Vec<_>>>()?;
    let res = sos::cassels_pfister_descend(&f, &nums, &den, field)?;
    let mut art = Artifact::new("descent");
    art.push("var", var);
    art.push("field", field.to_string());
    art.push("f", expr::format_xpoly(&res.certificate.target, var));
    for g in &res.certificate.gens {
        art.push("gen", expr::format_xpoly(g, var));
    }
    let degrees: Vec<String> = res
        .denominator_degrees
        .iter()
        .map(ToString::to_string)
        .collect();
    art.push("degrees", degrees.join(","));
    let mut lines = vec![format!("squares: {}", res.certificate.m())];
    for g in &res.certificate.gens {
        lines.push(format!("gen: {}", expr::format_xpoly(g, var)));
    }
    lines.push(format!("denominator degrees: {}", degrees.join(",")));
    Ok(Output { summary: lines.join("\n"), artifact: art })
}

pub fn run_sos_length(value_text: &str) -> Result<Output> {
    let value = expr::parse_rational(value_text)?;
    let res = rational_sos::sos_analyze(&value)?;
    let witness: Vec<String> = res.witness.iter().map(expr::format_rational).collect();
    let mut art = Artifact::new("sos-length");
    art.push("value", expr::format_rational(&res.value));
    art.push("length", res.length.to_string());
    art.push("witness", witness.join(","));
    let summary = format!("length: {}\nwitness: {}", res.length, witness.join(","));
    Ok(Output { summary, artifact: art })
}

pub fn run_bridge(a_text: &str) -> Result<Output> {
    let a = expr::parse_rational(a_text)?;
    let res = rational_sos::bridge_certificate(&a)?;
    let mut art = Artifact::new("bridge");
    art.push("a", expr::format_rational(&a));
    art.push("var", "t");
    art.push("target", expr::format_xpoly(&res.certificate.target, "t"));
    for g in &res.certificate.gens {
        art.push("gen", expr::format_xpoly(g, "t"));
    }
    art.push("note", &res.minimality_note);
    let mut lines = vec![
        format!("target: {}", art.get("target")?),
        format!("squares: {}", res.certificate.m()),
    ];
    for g in &res.certificate.gens {
        lines.push(format!("gen: {}", expr::format_xpoly(g, "t")));
    }
    lines.push(format!("note: {}", res.minimality_note));
    Ok(Output { summary: lines.join("\n"), artifact: art })
}

pub fn run_qform_hilbert(a_text: &str, b_text: &str, place_text: &str) -> Result<Output> {
    let a = expr::parse_rational(a_text)?;
    let b = expr::parse_rational(b_text)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let place = parse_place(place_text)?;
    let symbol = quadform::hilbert_symbol(&a, &b, &place);
    let mut art = Artifact::new("qform-hilbert");
    art.push("a", expr::format_rational(&a));
    art.push("b", expr::format_rational(&b));
    art.push("place", place.to_string());
    art.push("symbol", symbol.to_string());
    Ok(Output { summary: format!("symbol: {symbol}"), artifact: art })
}

fn entries_from_args(args: &[String]) -> Result<Vec<BigRational>> {
    let joined = args.join(",");
    let entries = parse_rational_csv(&joined)?;
    if entries.is_empty() {
        return Err(Error::BadFormat("no diagonal entries given".into()));
    }
    Ok(entries)
}

fn format_rational_csv(xs: &[BigRational]) -> String {
    xs.iter().map(expr::format_rational).collect::<Vec<_>>().join(",")
}

pub fn run_qform_isotropic(args: &[String]) -> Result<Output> {
    let entries = entries_from_args(args)?;
    let form = DiagonalForm::new(&entries)?;
    let res = quadform::is_isotropic_q(&form)?;
    let mut art = Artifact::new("qform-isotropy");
    art.push("entries", format_rational_csv(&entries));
    art.push("isotropic", res.isotropic.to_string());
    let mut summary = format!("isotropic: {}", res.isotropic);
    if let Some(w) = &res.witness {
        art.push("witness", format_rational_csv(w));
        summary.push_str(&format!("\nwitness: {}", format_rational_csv(w)));
    }
    Ok(Output { summary, artifact: art })
}

pub fn run_qform_torsion(args: &[String]) -> Result<Output> {
    let entries = entries_from_args(args)?;
    let form = DiagonalForm::new(&entries)?;
    let torsion = quadform::is_torsion_q(&form);
    let signature = form.signature();
    let mut art = Artifact::new("qform-torsion");
    art.push("entries", format_rational_csv(&entries));
    art.push("torsion", torsion.to_string());
    art.push("signature", signature.to_string());
    let summary = format!("torsion: {torsion}\nsignature: {signature}");
    Ok(Output { summary, artifact: art })
}

/// Reads the `qform-blocks` input file: pairs (c, d-certificate) sharing one
/// ring declaration.
pub fn run_qform_transfer(blocks_path: &Path) -> Result<Output> {
    let input = load_artifact(blocks_path)?;
    expect_kind(&input, "qform-blocks")?;
    let decl = RingDecl::from_artifact(&input)?;
    let groups = input.groups("block");
    if groups.is_empty() {
        return Err(Error::BadFormat("no blocks".into()));
    }
    match decl.ring {
        RingKind::Mixed => {
            let mut blocks = Vec::new();
            for g in &groups {
                let c = decl.parse_mixed(group_get(g, "c")?)?;
                let d = decl.parse_mixed(group_get(g, "dtarget")?)?;
                let gens = group_all(g, "dgen")
                    .iter()
                    .map(|t| decl.parse_mixed(t))
                    .collect::<Result<Vec<_>>>()?;
                blocks.push((c, build_cert(d, gens)?));
            }
            let (_, out) = quadform::prop54_transfer_mixed(&blocks, &decl.field)?;
            let mut art = Artifact::new("qform-transfer");
            art.push("variant", "mixed");
            decl.push_to(&mut art);
            let mut lines = Vec::new();
            for ((c, dcert), block) in blocks.iter().zip(&out) {
                art.push("block", "");
                art.push("c", decl.format_mixed(c));
                art.push("dtarget", decl.format_mixed(&dcert.target));
                art.push("cpoly", decl.format_polyb(&block.c_poly));
                art.push("cstripped", block.c_stripped.to_string());
                art.push("cratio", decl.format_mixed(&block.c_ratio_sqrt));
                art.push("cprec", block.c_prec.to_string());
                let d = &block.d_transfer;
                art.push("da", decl.format_mixed(&d.a));
                art.push("dstripped", d.stripped_power.to_string());
                art.push("db", decl.format_polyb(&d.b_cert.target));
                for g in &d.b_cert.gens {
                    art.push("dbgen", decl.format_polyb(g));
                }
                art.push("dprec", d.prec.to_string());
                lines.push(format!(
                    "block: c-power {} / d-squares {}",
                    block.c_stripped,
                    d.b_cert.m()
                ));
            }
            Ok(Output { summary: lines.join("\n"), artifact: art })
        }
        RingKind::Multi => {
            let mut blocks = Vec::new();
            for g in &groups {
                let c = decl.parse_multi(group_get(g, "c")?)?;
                let d = decl.parse_multi(group_get(g, "dtarget")?)?;
                let gens = group_all(g, "dgen")
                    .iter()
                    .map(|t| decl.parse_multi(t))
                    .collect::<Result<Vec<_>>>()?;
                blocks.push((c, build_cert(d, gens)?));
            }
            let (sigma, out) = quadform::prop54_transfer_series(&blocks, &decl.field)?;
            let mut art = Artifact::new("qform-transfer");
            art.push("variant", "series");
            decl.push_to(&mut art);
            format_substitution(&sigma, &decl, &mut art);
            let mut lines = vec![describe_substitution(&sigma, &decl)];
            for ((c, dcert), block) in blocks.iter().zip(&out) {
                art.push("block", "");
                art.push("c", decl.format_multi(c));
                art.push("dtarget", decl.format_multi(&dcert.target));
                art.push("cpoly", decl.format_multi(&block.c_poly.to_series()));
                art.push("cstripped", block.c_stripped.to_string());
                art.push("cratio", decl.format_multi(&block.c_ratio_sqrt));
                art.push("cprec", block.c_prec.to_string());
                let d = &block.d_transfer;
                art.push("da", decl.format_multi(&d.a));
                art.push("dstripped", d.stripped_power.to_string());
                art.push("db", decl.format_multi(&d.b_cert.target.to_series()));
                for g in &d.b_cert.gens {
                    art.push("dbgen", decl.format_multi(&g.to_series()));
                }
                art.push("dprec", d.prec.to_string());
                lines.push(format!(
                    "block: c-power {} / d-squares {}",
                    block.c_stripped,
                    d.b_cert.m()
                ));
            }
            Ok(Output { summary: lines.join("\n"), artifact: art })
        }
        _ => Err(Error::BadFormat(format!(
            "qform transfer does not support ring `{}`",
            decl.ring.name()
        ))),
    }
}

pub fn run_valuation_origin(decl: &RingDecl, f_text: &str) -> Result<Output> {
    let f = decl.parse_multi(f_text)?;
    let value = blowup::origin_valuation(&f)?;
    let mut art = Artifact::new("valuation");
    decl.push_to(&mut art);
    art.push("f", decl.format_multi(&f));
    art.push("value", value.to_string());
    Ok(Output { summary: format!("value: {value}"), artifact: art })
}

pub fn run_valuation_residue(decl: &RingDecl, f_text: &str, g_text: &str) -> Result<Output> {
    let f = decl.parse_multi(f_text)?;
    let g = decl.parse_multi(g_text)?;
    let value = blowup::origin_valuation(&f)?;
    let ratio = blowup::residue_ratio(&f, &g)?;
    let uvars = uvar_names(decl.vars.len() - 1);
    let uvar_refs: Vec<&str> = uvars.iter().map(String::as_str).collect();
    let mut art = Artifact::new("valuation-residue");
    decl.push_to(&mut art);
    art.push("f", decl.format_multi(&f));
    art.push("g", decl.format_multi(&g));
    art.push("value", value.to_string());
    art.push("num", expr::format_mpoly(ratio.num(), &uvar_refs));
    art.push("den", expr::format_mpoly(ratio.den(), &uvar_refs));
    let summary = format!(
        "value: {value}\nresidue: {}",
        expr::format_ratfn(&ratio, &uvar_refs)
    );
    Ok(Output { summary, artifact: art })
}

/// The quadratic extension a rational-function residue lives in, if any.
fn ratio_extension(r: &RatFn) -> Option<i64> {
    r.num()
        .terms()
        .chain(r.den().terms())
        .find_map(|(_, c)| c.ext())
}

pub fn run_valuation_blowup2(
    decl: &RingDecl,
    f_text: &str,
    g_text: Option<&str>,
    point_text: &str,
) -> Result<Output> {
    if decl.vars.len() != 2 {
        return Err(Error::BadFormat(
            "the second blow-up is a two-variable construction".into(),
        ));
    }
    let f = decl.parse_multi(f_text)?;
    let point = expr::parse_xpoly(point_text, "u", &CoefficientField::Rationals)?;
    let mut art = Artifact::new("valuation-blowup2");
    decl.push_to(&mut art);
    art.push("f", decl.format_multi(&f));
    art.push("point", expr::format_xpoly(&point, "u"));
    match g_text {
        None => {
            let res = blowup::second_blowup_valuation(&f, &point)?;
            art.push("value", res.value.to_string());
            art.push("residuefield", &res.residue_field);
            let summary = format!(
                "value: {}\nresidue field: {}",
                res.value, res.residue_field
            );
            Ok(Output { summary, artifact: art })
        }
        Some(gt) => {
            let g = decl.parse_multi(gt)?;
            let res = blowup::second_blowup_residue(&f, &g, &point)?;
            art.push("g", decl.format_multi(&g));
            art.push("value", res.value.to_string());
            art.push("residuefield", &res.residue_field);
            let ratio = res.residue.expect("residue requested");
            if let Some(d) = ratio_extension(&ratio) {
                art.push("extfield", format!("q-sqrt:{d}"));
            }
            art.push("num", expr::format_mpoly(ratio.num(), &["s"]));
            art.push("den", expr::format_mpoly(ratio.den(), &["s"]));
            let summary = format!(
                "value: {}\nresidue field: {}\nresidue: {}",
                res.value,
                res.residue_field,
                expr::format_ratfn(&ratio, &["s"])
            );
            Ok(Output { summary, artifact: art })
        }
    }
}

pub fn run_valuation_sos_residue(cert_path: &Path) -> Result<Output> {
    let (decl, cert) = load_multi_cert(&load_artifact(cert_path)?)?;
    let res = blowup::residue_sos_check(&cert)?;
    let uvars = uvar_names(decl.vars.len().saturating_sub(1));
    let uvar_refs: Vec<&str> = uvars.iter().map(String::as_str).collect();
    let mut art = Artifact::new("residue-certificate");
    decl.push_to(&mut art);
    art.push("target", decl.format_multi(&cert.target));
    for g in &cert.gens {
        art.push("gen", decl.format_multi(g));
    }
    art.push("value", res.value.to_string());
    art.push("residuefield", &res.residue_field);
    art.push("rtarget", expr::format_mpoly(&res.certificate.target, &uvar_refs));
    for g in &res.certificate.gens {
        art.push("rgen", expr::format_mpoly(g, &uvar_refs));
    }
    let mut lines = vec![
        format!("value: {}", res.value),
        format!("residue field: {}", res.residue_field),
        format!("residue target: {}", art.get("rtarget")?),
    ];
    for g in &res.certificate.gens {
        lines.push(format!("residue gen: {}", expr::format_mpoly(g, &uvar_refs)));
    }
    Ok(Output { summary: lines.join("\n"), artifact: art })
}

pub fn run_verify(path: &Path) -> Result<Output> {
    let art = load_artifact(path)?;
    verify::verify_artifact(&art)?;
    Ok(Output {
        summary: format!("ok: {} artifact verifies", art.kind),
        artifact: art,
    })
}
