//! Expression parsing and canonical printing for ring elements.
//!
//! The grammar covers integer and rational literals, declared variables,
//! `+ - * / ^` with nonnegative integer exponents, parentheses, and the
//! reserved name `r` for the generator of a declared quadratic extension.
//! A trailing `+ O(deg N)` (total-degree rings) or `+ O(t^N)` (t-adic
//! rings) marker pins the precision and wins over the caller's default.
//!
//! Printing is canonical: terms ascend by total degree and descend
//! lexicographically by exponent tuple within a degree, rationals are
//! reduced, and the precision marker is always appended for series rings.
//! Parsing a printed element reproduces it exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, RatFn};
use crate::scalar::{CoefficientField, Scalar};
use crate::series::{MixedA, MultiSeries, PolyB, UniSeries, XPoly};

/// Names the grammar reserves; they cannot be declared as variables.
pub const RESERVED: [&str; 3] = ["r", "O", "deg"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos)> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                    col += 1;
                }
                out.push((Tok::Int(digits.parse().expect("digits")), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                    name.push(*d);
                    chars.next();
                    col += 1;
                }
                out.push((Tok::Ident(name), pos));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(Error::Syntax {
                            line,
                            col,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                chars.next();
                col += 1;
                out.push((tok, pos));
            }
        }
    }
    Ok((out, Pos { line, col }))
}

/// Abstract syntax of a ring-element expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

/// Trailing precision marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrecMarker {
    /// `O(deg N)`: total degree N and beyond unknown.
    Deg(usize),
    /// `O(t^N)`: powers t^N and beyond unknown, tagged with the variable.
    TPow(String, usize),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    eof: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.i + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.eof, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let p = self.pos();
        Err(Error::Syntax { line: p.line, col: p.col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Pos> {
        match self.next() {
            Some((t, p)) if t == want => Ok(p),
            _ => {
                self.i = self.i.saturating_sub(1);
                self.err(format!("expected {what}"))
            }
        }
    }

    /// True when the upcoming tokens start the `+ O(...)` marker.
    fn at_marker(&self) -> bool {
        matches!(self.peek(), Some(Tok::Plus))
            && matches!(self.peek2(), Some(Tok::Ident(name)) if name == "O")
            && matches!(self.toks.get(self.i + 2).map(|(t, _)| t), Some(Tok::LParen))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.at_marker() {
                break;
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let (_, p) = self.next().expect("peeked");
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?), p);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.next();
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            true
        } else {
            false
        };
        let p = self.pos();
        let Some((Tok::Int(n), _)) = self.next() else {
            self.i = self.i.saturating_sub(1);
            return self.err("expected integer exponent");
        };
        if negative {
            return Err(Error::NegativeExponent { line: p.line, col: p.col });
        }
        let e: u32 = (&n)
            .try_into()
            .map_err(|_| Error::Syntax { line: p.line, col: p.col, msg: "exponent too large".into() })?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.next() {
            Some((Tok::Int(n), _)) => Ok(Expr::Int(n)),
            Some((Tok::Ident(name), p)) => Ok(Expr::Var(name, p)),
            Some((Tok::LParen, _)) => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => {
                self.i = self.i.saturating_sub(1);
                self.err("expected a literal, variable, or `(`")
            }
        }
    }

    fn marker(&mut self) -> Result<PrecMarker> {
        self.expect(Tok::Plus, "`+`")?;
        match self.next() {
            Some((Tok::Ident(o), _)) if o == "O" => {}
            _ => {
                self.i = self.i.saturating_sub(1);
                return self.err("expected `O`");
            }
        }
        self.expect(Tok::LParen, "`(`")?;
        let marker = match self.next() {
            Some((Tok::Ident(name), p)) if name == "deg" => {
                let Some((Tok::Int(n), _)) = self.next() else {
                    self.i = self.i.saturating_sub(1);
                    return self.err("expected degree bound");
                };
                let n: usize = (&n).try_into().map_err(|_| Error::Syntax {
                    line: p.line,
                    col: p.col,
                    msg: "precision too large".into(),
                })?;
                PrecMarker::Deg(n)
            }
            Some((Tok::Ident(var), p)) => {
                self.expect(Tok::Caret, "`^`")?;
                let Some((Tok::Int(n), _)) = self.next() else {
                    self.i = self.i.saturating_sub(1);
                    return self.err("expected power bound");
                };
                let n: usize = (&n).try_into().map_err(|_| Error::Syntax {
                    line: p.line,
                    col: p.col,
                    msg: "precision too large".into(),
                })?;
                PrecMarker::TPow(var, n)
            }
            _ => {
                self.i = self.i.saturating_sub(1);
                return self.err("expected `deg N` or `t^N`");
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(marker)
    }
}

/// Parses an expression with an optional trailing precision marker.
pub fn parse_expr(text: &str) -> Result<(Expr, Option<PrecMarker>)> {
    let (toks, eof) = lex(text)?;
    let mut p = Parser { toks, i: 0, eof };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let expr = p.sum()?;
    let marker = if p.at_marker() { Some(p.marker()?) } else { None };
    if p.peek().is_some() {
        return p.err("trailing input after expression");
    }
    Ok((expr, marker))
}

/// Evaluates an expression to an exact polynomial in the declared variables.
pub fn eval_poly(expr: &Expr, vars: &[&str], field: &CoefficientField) -> Result<MPoly> {
    debug_assert!(vars.iter().all(|v| !RESERVED.contains(v)), "reserved name declared");
    let n = vars.len();
    match expr {
        Expr::Int(k) => Ok(MPoly::constant(
            Scalar::from_rational(BigRational::from(k.clone())),
            n,
        )),
        Expr::Var(name, pos) => {
            if let Some(i) = vars.iter().position(|v| v == name) {
                Ok(MPoly::var(i, n))
            } else if name == "r" {
                Ok(MPoly::constant(Scalar::sqrt_gen(field)?, n))
            } else {
                Err(Error::UnknownVariable {
                    name: name.clone(),
                    line: pos.line,
                    col: pos.col,
                })
            }
        }
        Expr::Neg(e) => Ok(eval_poly(e, vars, field)?.scalar_mul(&-Scalar::one())),
        Expr::Add(a, b) => Ok(&eval_poly(a, vars, field)? + &eval_poly(b, vars, field)?),
        Expr::Sub(a, b) => {
            Ok(&eval_poly(a, vars, field)? + &eval_poly(b, vars, field)?.scalar_mul(&-Scalar::one()))
        }
        Expr::Mul(a, b) => Ok(&eval_poly(a, vars, field)? * &eval_poly(b, vars, field)?),
        Expr::Div(a, b, pos) => {
            let num = eval_poly(a, vars, field)?;
            let den = eval_poly(b, vars, field)?;
            if !den.is_constant() {
                return Err(Error::Syntax {
                    line: pos.line,
                    col: pos.col,
                    msg: "division is only defined by nonzero constants".into(),
                });
            }
            let c = den.coeff(&vec![0; n]);
            if c.is_zero() {
                return Err(Error::Syntax {
                    line: pos.line,
                    col: pos.col,
                    msg: "division by zero".into(),
                });
            }
            Ok(num.scalar_mul(&c.inverse().expect("nonzero")))
        }
        Expr::Pow(a, e) => Ok(eval_poly(a, vars, field)?.pow(*e)),
    }
}

fn take_marker_prec(
    marker: Option<PrecMarker>,
    tvar: Option<&str>,
    default_prec: usize,
) -> Result<usize> {
    match (marker, tvar) {
        (None, _) => Ok(default_prec),
        (Some(PrecMarker::Deg(n)), None) => Ok(n),
        (Some(PrecMarker::TPow(v, n)), Some(t)) if v == t => Ok(n),
        (Some(m), _) => Err(Error::BadFormat(format!(
            "precision marker {m:?} does not match the declared ring"
        ))),
    }
}

/// Parses an exact constant in the declared coefficient field.
pub fn parse_scalar(text: &str, field: &CoefficientField) -> Result<Scalar> {
    let (expr, marker) = parse_expr(text)?;
    if marker.is_some() {
        return Err(Error::BadFormat("constants carry no precision marker".into()));
    }
    let p = eval_poly(&expr, &[], field)?;
    Ok(p.coeff(&[]))
}

/// Parses an exact rational number.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = parse_scalar(text, &CoefficientField::Rationals)?;
    Ok(s.as_rational().expect("rational field").clone())
}

/// Parses an exact polynomial in one variable.
pub fn parse_xpoly(text: &str, var: &str, field: &CoefficientField) -> Result<XPoly> {
    let (expr, marker) = parse_expr(text)?;
    if marker.is_some() {
        return Err(Error::BadFormat("polynomials carry no precision marker".into()));
    }
    let p = eval_poly(&expr, &[var], field)?;
    let deg = p.total_deg().unwrap_or(0);
    let coeffs = (0..=deg as u32).map(|i| p.coeff(&[i])).collect();
    Ok(XPoly::new(coeffs))
}

/// Parses an exact polynomial in several variables.
pub fn parse_mpoly(text: &str, vars: &[&str], field: &CoefficientField) -> Result<MPoly> {
    let (expr, marker) = parse_expr(text)?;
    if marker.is_some() {
        return Err(Error::BadFormat("polynomials carry no precision marker".into()));
    }
    eval_poly(&expr, vars, field)
}

/// Parses a one-variable series truncated at the marker or default precision.
pub fn parse_uni(
    text: &str,
    var: &str,
    field: &CoefficientField,
    default_prec: usize,
) -> Result<UniSeries> {
    let (expr, marker) = parse_expr(text)?;
    let prec = take_marker_prec(marker, Some(var), default_prec)?;
    let p = eval_poly(&expr, &[var], field)?;
    let mut coeffs = vec![Scalar::zero(); p.total_deg().map_or(0, |d| d + 1).min(prec)];
    for (exps, c) in p.terms() {
        if (exps[0] as usize) < prec {
            coeffs[exps[0] as usize] = c.clone();
        }
    }
    Ok(UniSeries::new(coeffs, prec))
}

/// Parses an n-variable series truncated at total degree.
pub fn parse_multi(
    text: &str,
    vars: &[&str],
    field: &CoefficientField,
    default_prec: usize,
) -> Result<MultiSeries> {
    let (expr, marker) = parse_expr(text)?;
    let prec = take_marker_prec(marker, None, default_prec)?;
    let p = eval_poly(&expr, vars, field)?;
    let mut out = MultiSeries::zero(vars.len(), prec);
    for (exps, c) in p.terms() {
        out.insert_add(exps.clone(), c.clone());
    }
    Ok(out)
}

/// Parses an element of k[x][[t]]: polynomial coefficients, t-adic tail.
pub fn parse_mixed(
    text: &str,
    xvar: &str,
    tvar: &str,
    field: &CoefficientField,
    default_prec: usize,
) -> Result<MixedA> {
    let (expr, marker) = parse_expr(text)?;
    let prec = take_marker_prec(marker, Some(tvar), default_prec)?;
    let p = eval_poly(&expr, &[xvar, tvar], field)?;
    let tdeg = p.deg_in(1).unwrap_or(0) as usize;
    let mut levels = vec![Vec::new(); tdeg.min(prec.saturating_sub(1)) + 1];
    for (exps, c) in p.terms() {
        let (a, b) = (exps[0] as usize, exps[1] as usize);
        if b >= prec {
            continue;
        }
        if levels[b].len() <= a {
            levels[b].resize(a + 1, Scalar::zero());
        }
        levels[b][a] = c.clone();
    }
    Ok(MixedA::new(levels.into_iter().map(XPoly::new).collect(), prec))
}

/// Parses an element of k[[t]][x]: series coefficients, polynomial in x.
pub fn parse_polyb(
    text: &str,
    xvar: &str,
    tvar: &str,
    field: &CoefficientField,
    default_prec: usize,
) -> Result<PolyB> {
    let (expr, marker) = parse_expr(text)?;
    let prec = take_marker_prec(marker, Some(tvar), default_prec)?;
    let p = eval_poly(&expr, &[xvar, tvar], field)?;
    let xdeg = p.deg_in(0).unwrap_or(0) as usize;
    let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); xdeg + 1];
    for (exps, c) in p.terms() {
        let (a, b) = (exps[0] as usize, exps[1] as usize);
        if b >= prec {
            continue;
        }
        if cols[a].len() <= b {
            cols[a].resize(b + 1, Scalar::zero());
        }
        cols[a][b] = c.clone();
    }
    Ok(PolyB::new(
        cols.into_iter().map(|c| UniSeries::new(c, prec)).collect(),
        prec,
    ))
}

// ---------------------------------------------------------------------------
// canonical printing

/// Canonical text for a field constant: `a`, `b*r`, or `a + b*r`.
pub fn format_scalar(s: &Scalar) -> String {
    let a = s.rational_part();
    let b = s.radical_part();
    if b.is_zero() {
        return format_rational(a);
    }
    let radical = if b.is_one() {
        "r".to_string()
    } else if (-b).is_one() {
        "-r".to_string()
    } else {
        format!("{}*r", format_rational(b))
    };
    if a.is_zero() {
        radical
    } else if b.is_negative() {
        format!("{} - {}", format_rational(a), radical.trim_start_matches('-'))
    } else {
        format!("{} + {}", format_rational(a), radical)
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn monomial_text(exps: &[u32], vars: &[&str]) -> String {
    let mut parts = Vec::new();
    for (e, v) in exps.iter().zip(vars) {
        match e {
            0 => {}
            1 => parts.push((*v).to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

/// Renders (exponents, coefficient) terms in canonical order with an
/// optional precision marker.
fn format_terms(mut terms: Vec<(Vec<u32>, Scalar)>, vars: &[&str], marker: Option<String>) -> String {
    terms.retain(|(_, c)| !c.is_zero());
    terms.sort_by(|(ea, _), (eb, _)| {
        let da: u32 = ea.iter().sum();
        let db: u32 = eb.iter().sum();
        da.cmp(&db).then_with(|| eb.cmp(ea))
    });
    let mut out = String::new();
    for (exps, c) in &terms {
        let mono = monomial_text(exps, vars);
        // rational coefficients fold their sign into the joiner; radical
        // coefficients are parenthesized and always joined with `+`
        let (joiner, body) = match c.as_rational() {
            Some(q) => {
                let neg = q.is_negative();
                let mag = if neg { -q } else { q.clone() };
                let body = if mono.is_empty() {
                    format_rational(&mag)
                } else if mag.is_one() {
                    mono.clone()
                } else {
                    format!("{}*{}", format_rational(&mag), mono)
                };
                (if neg { " - " } else { " + " }, body)
            }
            None => {
                let body = if mono.is_empty() {
                    format!("({})", format_scalar(c))
                } else {
                    format!("({})*{}", format_scalar(c), mono)
                };
                (" + ", body)
            }
        };
        if out.is_empty() {
            if joiner == " - " {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(joiner);
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    if let Some(m) = marker {
        out.push_str(" + ");
        out.push_str(&m);
    }
    out
}

pub fn format_mpoly(p: &MPoly, vars: &[&str]) -> String {
    let terms = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    format_terms(terms, vars, None)
}

pub fn format_xpoly(p: &XPoly, var: &str) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (vec![i as u32], c.clone()))
        .collect();
    format_terms(terms, &[var], None)
}

pub fn format_multi(f: &MultiSeries, vars: &[&str]) -> String {
    let terms = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    format_terms(terms, vars, Some(format!("O(deg {})", f.prec())))
}

pub fn format_uni(f: &UniSeries, var: &str) -> String {
    let terms = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (vec![i as u32], c.clone()))
        .collect();
    format_terms(terms, &[var], Some(format!("O({var}^{})", f.prec())))
}

pub fn format_mixed(f: &MixedA, xvar: &str, tvar: &str) -> String {
    let mut terms = Vec::new();
    for (b, xp) in f.coeffs().iter().enumerate() {
        for (a, c) in xp.coeffs().iter().enumerate() {
            terms.push((vec![a as u32, b as u32], c.clone()));
        }
    }
    format_terms(terms, &[xvar, tvar], Some(format!("O({tvar}^{})", f.prec())))
}

pub fn format_polyb(f: &PolyB, xvar: &str, tvar: &str) -> String {
    let mut terms = Vec::new();
    for (a, col) in f.coeffs().iter().enumerate() {
        for (b, c) in col.coeffs().iter().enumerate() {
            terms.push((vec![a as u32, b as u32], c.clone()));
        }
    }
    format_terms(terms, &[xvar, tvar], Some(format!("O({tvar}^{})", f.prec())))
}

/// `num / den` with the denominator omitted when it is 1.
pub fn format_ratfn(r: &RatFn, vars: &[&str]) -> String {
    if r.den() == &MPoly::one(r.nvars()) {
        format_mpoly(r.num(), vars)
    } else {
        format!("({}) / ({})", format_mpoly(r.num(), vars), format_mpoly(r.den(), vars))
    }
}
