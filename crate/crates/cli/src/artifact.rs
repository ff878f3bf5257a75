//! Plain-text artifact files: a versioned header line, then `key: value`
//! pairs in order, with repeated keys for lists and bare `block:`-style
//! markers to open groups. Every command writes one; `verify` reads them
//! back and re-checks the mathematical content.

use laurent_core::error::{Error, Result};
use laurent_core::expr;
use laurent_core::scalar::CoefficientField;
use laurent_core::series::{MixedA, MultiSeries, PolyB};
use laurent_core::weierstrass::Substitution;

pub const FORMAT_VERSION: &str = "v1";

/// Ordered key/value document with a kind header.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Artifact {
    pub fn new(kind: &str) -> Self {
        Artifact { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn get_opt(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.get_opt(key)
            .ok_or_else(|| Error::BadFormat(format!("missing key `{key}`")))
    }

    pub fn all(&self, key: &str) -> Vec<&str> {
        self.fields
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// Splits the fields at each occurrence of the marker key; the part
    /// before the first marker is dropped (it holds shared headers).
    pub fn groups(&self, marker: &str) -> Vec<&[(String, String)]> {
        let starts: Vec<usize> = self
            .fields
            .iter()
            .enumerate()
            .filter(|(_, (k, _))| k == marker)
            .map(|(i, _)| i)
            .collect();
        starts
            .iter()
            .enumerate()
            .map(|(gi, &s)| {
                let end = starts.get(gi + 1).copied().unwrap_or(self.fields.len());
                &self.fields[s + 1..end]
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {FORMAT_VERSION}\n", self.kind);
        for (k, v) in &self.fields {
            if v.is_empty() {
                out.push_str(&format!("{k}:\n"));
            } else {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Artifact> {
        let mut lines = text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::BadFormat("empty artifact".into()))?
            .trim();
        let kind = header
            .strip_suffix(&format!(" {FORMAT_VERSION}"))
            .ok_or_else(|| {
                Error::BadFormat(format!("unsupported artifact header `{header}`"))
            })?
            .to_string();
        let mut fields = Vec::new();
        for line in lines {
            let line = line.trim_end();
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::BadFormat(format!("expected `key: value`, got `{line}`")))?;
            fields.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Artifact { kind, fields })
    }
}

/// Group lookup helpers mirroring [`Artifact`] accessors.
pub fn group_get<'a>(group: &'a [(String, String)], key: &str) -> Result<&'a str> {
    group
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::BadFormat(format!("missing key `{key}` in block")))
}

pub fn group_all<'a>(group: &'a [(String, String)], key: &str) -> Vec<&'a str> {
    group
        .iter()
        .filter(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Uni,
    Multi,
    Mixed,
    Polyb,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::Uni => "uni",
            RingKind::Multi => "multi",
            RingKind::Mixed => "mixed",
            RingKind::Polyb => "polyb",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "uni" => Ok(RingKind::Uni),
            "multi" => Ok(RingKind::Multi),
            "mixed" => Ok(RingKind::Mixed),
            "polyb" => Ok(RingKind::Polyb),
            other => Err(Error::BadFormat(format!("unknown ring `{other}`"))),
        }
    }
}

/// Which ring expressions live in, with variable names, coefficient field,
/// and default precision.
#[derive(Debug, Clone)]
pub struct RingDecl {
    pub ring: RingKind,
    pub vars: Vec<String>,
    pub field: CoefficientField,
    pub prec: usize,
}

pub fn parse_field(s: &str) -> Result<CoefficientField> {
    if s == "q" {
        return Ok(CoefficientField::Rationals);
    }
    if let Some(d) = s.strip_prefix("q-sqrt:") {
        let d: i64 = d
            .parse()
            .map_err(|_| Error::BadFormat(format!("bad extension descriptor `{s}`")))?;
        return CoefficientField::quadratic(d);
    }
    Err(Error::BadFormat(format!(
        "unknown field `{s}`, expected `q` or `q-sqrt:<d>`"
    )))
}

impl RingDecl {
    pub fn new(ring: RingKind, vars: Vec<String>, field: CoefficientField, prec: usize) -> Result<Self> {
        let expected = match ring {
            RingKind::Uni => 1..=1,
            RingKind::Mixed | RingKind::Polyb => 2..=2,
            RingKind::Multi => 1..=4,
        };
        if !expected.contains(&vars.len()) {
            return Err(Error::BadFormat(format!(
                "ring `{}` takes {:?} variables, got {}",
                ring.name(),
                expected,
                vars.len()
            )));
        }
        for v in &vars {
            if expr::RESERVED.contains(&v.as_str()) {
                return Err(Error::BadFormat(format!("`{v}` is a reserved name")));
            }
            if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric())
            {
                return Err(Error::BadFormat(format!("bad variable name `{v}`")));
            }
        }
        if prec == 0 {
            return Err(Error::BadFormat("precision must be at least 1".into()));
        }
        Ok(RingDecl { ring, vars, field, prec })
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn push_to(&self, a: &mut Artifact) {
        a.push("ring", self.ring.name());
        a.push("vars", self.vars.join(","));
        a.push("field", self.field.to_string());
        a.push("prec", self.prec.to_string());
    }

    pub fn from_artifact(a: &Artifact) -> Result<Self> {
        let ring = RingKind::from_name(a.get("ring")?)?;
        let vars: Vec<String> = a
            .get("vars")?
            .split(',')
            .map(|v| v.trim().to_string())
            .collect();
        let field = parse_field(a.get("field")?)?;
        let prec: usize = a
            .get("prec")?
            .parse()
            .map_err(|_| Error::BadFormat("bad precision".into()))?;
        RingDecl::new(ring, vars, field, prec)
    }

    pub fn parse_multi(&self, text: &str) -> Result<MultiSeries> {
        expr::parse_multi(text, &self.var_refs(), &self.field, self.prec)
    }

    pub fn format_multi(&self, f: &MultiSeries) -> String {
        expr::format_multi(f, &self.var_refs())
    }

    pub fn parse_mixed(&self, text: &str) -> Result<MixedA> {
        expr::parse_mixed(text, &self.vars[0], &self.vars[1], &self.field, self.prec)
    }

    pub fn format_mixed(&self, f: &MixedA) -> String {
        expr::format_mixed(f, &self.vars[0], &self.vars[1])
    }

    pub fn parse_polyb(&self, text: &str) -> Result<PolyB> {
        expr::parse_polyb(text, &self.vars[0], &self.vars[1], &self.field, self.prec)
    }

    pub fn format_polyb(&self, f: &PolyB) -> String {
        expr::format_polyb(f, &self.vars[0], &self.vars[1])
    }
}

/// One shift line `t1 2 3` means t1 <- t1 + 2*tn^3.
pub fn format_substitution(sigma: &Substitution, decl: &RingDecl, a: &mut Artifact) {
    for (i, lambda, power) in sigma.assignments() {
        a.push(
            "shift",
            format!("{} {} {}", decl.vars[i], expr::format_scalar(&lambda), power),
        );
    }
}

pub fn parse_substitution(lines: &[&str], decl: &RingDecl) -> Result<Substitution> {
    let mut assignments = Vec::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::BadFormat(format!("bad shift line `{line}`")));
        }
        let var = decl
            .vars
            .iter()
            .position(|v| v == parts[0])
            .ok_or_else(|| Error::BadFormat(format!("unknown shift variable `{}`", parts[0])))?;
        let lambda = expr::parse_scalar(parts[1], &decl.field)?;
        let power: u32 = parts[2]
            .parse()
            .map_err(|_| Error::BadFormat(format!("bad shift power `{}`", parts[2])))?;
        assignments.push((var, lambda, power));
    }
    Ok(Substitution::new(decl.vars.len(), &assignments))
}

pub fn parse_usize(a: &Artifact, key: &str) -> Result<usize> {
    a.get(key)?
        .parse()
        .map_err(|_| Error::BadFormat(format!("bad integer for `{key}`")))
}
