//! Truncated series and polynomial rings over the exact coefficient field.

pub mod convert;
pub mod mixed;
pub mod multi;
pub mod poly;
pub mod uni;

pub use mixed::MixedA;
pub use multi::MultiSeries;
pub use poly::{PolyB, TnPoly, XPoly};
pub use uni::UniSeries;
