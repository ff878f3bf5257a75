//! Exact arithmetic in truncated power series rings over Q and its
//! quadratic extensions, with Weierstrass division and preparation,
//! sum-of-squares certificate transfer between series and polynomial
//! rings, rational sum-of-squares lengths, quadratic form invariants
//! over Q, and blowup valuations with residue certificates.

pub mod blowup;
pub mod error;
pub mod expr;
pub mod mpoly;
pub mod quadform;
pub mod rational_sos;
pub mod scalar;
pub mod series;
pub mod sos;
pub mod weierstrass;

pub use error::{Error, ErrorClass, Result};
pub use scalar::{CoefficientField, Level, Scalar};
