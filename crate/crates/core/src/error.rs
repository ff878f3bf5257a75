//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. The [`ErrorClass`] split is
//! what front ends need to map failures onto exit codes: malformed input,
//! a genuine mathematical obstruction, or running out of stated precision.

use thiserror::Error;

/// Coarse classification of an [`Error`], used for exit-code mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input: syntax, unknown variables, bad file formats.
    Input,
    /// A mathematical precondition failed or a search was exhausted.
    Math,
    /// The requested computation is not determined at the stated precision.
    Precision,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("constant term is not invertible")]
    NotAUnit,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("constant term is not a nonzero square in the coefficient field")]
    ConstantNotASquare,
    #[error("no ring inclusion supports this conversion: {0}")]
    UnsupportedDirection(String),
    #[error("element is not regular in the last variable at the stated precision")]
    NotRegular,
    #[error("substitution search exhausted: {0}")]
    SearchExhausted(String),
    #[error("operation requires a formally real coefficient field")]
    NotFormallyReal,
    #[error("input is zero modulo its precision")]
    ZeroInput,
    #[error("number of squares {m} exceeds the level {level} of the coefficient field")]
    LevelViolation { m: usize, level: u32 },
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("input must be a positive rational")]
    NonPositive,
    #[error("requested length {requested} is below the minimal length {minimal}")]
    LengthTooSmall { requested: usize, minimal: usize },
    #[error("diagonal form needs dimension >= 2")]
    DimTooSmall,
    #[error("values disagree: {0}")]
    ValueMismatch(String),
    #[error("not a closed point of the exceptional line: {0}")]
    NotAPoint(String),
    #[error("valuation of the target is odd")]
    OddValue,
    #[error("certificate does not verify: {0}")]
    CertificateInvalid(String),
    #[error("{d} does not describe a quadratic extension (need squarefree, not 0 or 1)")]
    InvalidExtension { d: i64 },
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("negative exponent at {line}:{col}")]
    NegativeExponent { line: usize, col: usize },
    #[error("bad file format: {0}")]
    BadFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::PrecisionExhausted(_) => ErrorClass::Precision,
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::InvalidExtension { .. }
            | Error::BadFormat(_)
            | Error::Io(_) => ErrorClass::Input,
            _ => ErrorClass::Math,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
