use super::{MatSeries, TruncSeries, DEFAULT_DET_BOUND};
use crate::error::{Error, Result};

/// Möbius function by trial division.
pub fn mobius(n: usize) -> i32 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `prod_{s=1..N} 1 / det P(t^s)` for a matrix series with `P(0) = 1`.
///
/// Only `s <= N` can contribute after truncation. Substitution is a ring
/// map, so the determinant is taken once and then substituted.
pub fn infinite_product_zeta(p: &MatSeries) -> Result<TruncSeries> {
    infinite_product_zeta_bounded(p, DEFAULT_DET_BOUND)
}

pub fn infinite_product_zeta_bounded(p: &MatSeries, det_bound: usize) -> Result<TruncSeries> {
    if !p.constant_is_identity() {
        return Err(Error::ConstantNotIdentity);
    }
    let n = p.order();
    let det = p.det_bounded(det_bound)?;
    let mut acc = TruncSeries::one(n);
    for s in 1..=n {
        let ds = det.substitute_power(s as i64)?;
        acc = acc.mul(&ds.inv()?)?;
    }
    Ok(acc)
}
