//! Conversions along the ring inclusions
//! k[[t]] -> k[x][[t]] and k[[t]][x] -> k[x][[t]] -> k[[x,t]],
//! plus the embedding of tn-polynomials into the full series ring.
//!
//! Each conversion reports a justified output precision:
//! - t-adic to t-adic inclusions keep the precision;
//! - k[x][[t]] to k[[x,t]] keeps the numeric value, reading t-adic
//!   precision N as total-degree precision N (terms of total degree < N
//!   have t-degree < N, so they are all known; known terms of higher
//!   x-degree are discarded by the truncation).

use crate::series::mixed::MixedA;
use crate::series::multi::MultiSeries;
use crate::series::poly::{PolyB, XPoly};
use crate::series::uni::UniSeries;

pub fn uni_to_mixed(u: &UniSeries) -> MixedA {
    let coeffs = u.coeffs().iter().map(|c| XPoly::constant(c.clone())).collect();
    MixedA::new(coeffs, u.prec())
}

/// Sends t to the last variable tn of an n-variable series ring.
pub fn uni_to_multi(u: &UniSeries, nvars: usize) -> MultiSeries {
    let mut out = MultiSeries::zero(nvars, u.prec());
    for (j, c) in u.coeffs().iter().enumerate() {
        let mut e = vec![0u32; nvars];
        e[nvars - 1] = j as u32;
        out.insert_add(e, c.clone());
    }
    out
}

pub fn polyb_to_mixed(p: &PolyB) -> MixedA {
    let prec = p.prec();
    let mut coeffs = vec![XPoly::zero(); prec];
    for (i, series) in p.coeffs().iter().enumerate() {
        for (j, c) in series.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut poly = coeffs[j].coeffs().to_vec();
            poly.resize(poly.len().max(i + 1), crate::scalar::Scalar::zero());
            poly[i] = c.clone();
            coeffs[j] = XPoly::new(poly);
        }
    }
    MixedA::new(coeffs, prec)
}

/// Views k[x][[t]] inside k[[x,t]] with x = t1 and t = t2.
pub fn mixed_to_multi(m: &MixedA) -> MultiSeries {
    let mut out = MultiSeries::zero(2, m.prec());
    for (j, poly) in m.coeffs().iter().enumerate() {
        for (i, c) in poly.coeffs().iter().enumerate() {
            out.insert_add(vec![i as u32, j as u32], c.clone());
        }
    }
    out
}

pub fn polyb_to_multi(p: &PolyB) -> MultiSeries {
    mixed_to_multi(&polyb_to_mixed(p))
}

/// Views an exact polynomial in t as a series at the given precision.
pub fn xpoly_to_uni(p: &XPoly, prec: usize) -> UniSeries {
    UniSeries::new(p.coeffs().to_vec(), prec)
}
