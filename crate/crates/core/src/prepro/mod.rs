//! Preprojective and partial preprojective algebras of quivers.

mod affine;
mod chebyshev;
mod molien;

pub use affine::{
    affine_family, affine_identity_all, affine_identity_check, affine_shape, dynkin_d_closed_form, dynkin_d_polynomial,
    IdentityReport,
};
pub use chebyshev::{scalar_chebyshev, ChebyshevTable, IntMatrix};
pub use molien::{molien_check, molien_series, FiniteSubgroupSL2, GroupKind};

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::Presentation;
use crate::datum::{circ_product_hilbert, circ_product_oa, VLDatum};
use crate::error::{Error, Result};
use crate::quiver::{cartan_matrix_series, cartan_matrix_series_on, classify, Classification, Quiver};
use crate::series::{infinite_product_zeta_bounded, MatSeries, TruncSeries};

/// Printed alongside `h(Pi)` for Dynkin quivers, where the algebra is finite dimensional.
pub const DYNKIN_WARNING: &str =
    "Dynkin quiver: the preprojective algebra is finite dimensional and the series (1 - tc + t^2)^{-1} is not its Hilbert series";

fn check_base(q: &Quiver) -> Result<()> {
    if !q.all_degree_one() {
        return Err(Error::InvalidQuiver("preprojective algebras need degree-1 edges".into()));
    }
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    if q.edges().is_empty() {
        return Err(Error::InvalidQuiver("quiver has no edges".into()));
    }
    Ok(())
}

/// `(V, L)` datum of the preprojective algebra: `h(V) = t c`, `h(L) = t^2`, `m_2 = 1`,
/// with the relations attached.
pub fn preprojective_datum(q: &Quiver) -> Result<VLDatum> {
    check_base(q)?;
    let n = q.num_vertices();
    let c = q.double().adjacency();
    let dims_v = (0..n).map(|i| (0..n).map(|j| vec![0, c.get(i, j)]).collect()).collect();
    let dims_l = (0..n).map(|i| (0..n).map(|j| if i == j { vec![0, 0, 1] } else { vec![] }).collect()).collect();
    let pres = Presentation::preprojective(q, &vec![false; n])?;
    VLDatum::new(n, dims_v, dims_l, vec![0, 0, 1], Some(pres))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreprojectiveHilbert {
    pub h_pi: MatSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// `h(Pi) = (1 - t c + t^2)^{-1}`; Dynkin quivers get a warning instead of a refusal.
pub fn hilbert_pi(q: &Quiver, order: usize) -> Result<PreprojectiveHilbert> {
    check_base(q)?;
    let warning = classify(q)?.is_dynkin().then(|| DYNKIN_WARNING.to_string());
    let h_pi = cartan_matrix_series(&q.double().adjacency(), order).inv()?;
    Ok(PreprojectiveHilbert { h_pi, warning })
}

/// `h(O(Pi)) = 1/(1 - t^2) prod_r 1/det(1 - t^r c + t^{2r})`, only for quivers
/// that are neither Dynkin nor extended Dynkin.
pub fn hilbert_o_pi(q: &Quiver, order: usize, det_bound: usize) -> Result<TruncSeries> {
    check_base(q)?;
    match classify(q)? {
        Classification::Wild => {}
        other => {
            return Err(Error::Hypothesis(format!(
                "h(O(Pi)) needs a quiver that is neither Dynkin nor extended Dynkin, got {other}"
            )))
        }
    }
    let zeta = infinite_product_zeta_bounded(&cartan_matrix_series(&q.double().adjacency(), order), det_bound)?;
    zeta.mul(&TruncSeries::one_minus_power(2, order).inv()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSeries {
    pub h: MatSeries,
    pub h_o: TruncSeries,
}

fn vertex_mask(q: &Quiver, j: &[usize]) -> Result<Vec<bool>> {
    if j.is_empty() {
        return Err(Error::InvalidArgument("the vertex set J must be nonempty".into()));
    }
    let mut in_j = vec![false; q.num_vertices()];
    for &v in j {
        *in_j.get_mut(v).ok_or_else(|| Error::InvalidArgument(format!("vertex {v} out of range")))? = true;
    }
    Ok(in_j)
}

/// Relations of the partial preprojective algebra: one per vertex outside `J`.
pub fn partial_presentation(q: &Quiver, j: &[usize]) -> Result<Presentation> {
    check_base(q)?;
    Presentation::preprojective(q, &vertex_mask(q, j)?)
}

/// `h = (1 - c t + t^2 1_{I \ J})^{-1}` and `h_O = prod_s 1/det(1 - t^s c + t^{2s} 1_{I \ J})`.
pub fn partial_preprojective(q: &Quiver, j: &[usize], order: usize, det_bound: usize) -> Result<PartialSeries> {
    check_base(q)?;
    let outside: Vec<bool> = vertex_mask(q, j)?.into_iter().map(|b| !b).collect();
    let cartan = cartan_matrix_series_on(&q.double().adjacency(), &outside, order);
    Ok(PartialSeries { h: cartan.inv()?, h_o: infinite_product_zeta_bounded(&cartan, det_bound)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgnSeries {
    pub h_a: TruncSeries,
    pub h_oa: TruncSeries,
}

fn check_g_n(g: usize, n: usize) -> Result<()> {
    if g <= 1 {
        return Err(Error::Hypothesis(format!("the formula for A_{{g,n}} fails if g = 1 (got g = {g})")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// `1 - 2g t^s + 2g t^{(2n+1)s} - t^{(2n+2)s}`, or `1 - 2g t^s + t^{2s}` when `n = 1`.
fn agn_denominator(g: usize, n: usize, s: usize, order: usize) -> TruncSeries {
    let two_g = BigInt::from(2 * g);
    let mut d = TruncSeries::one(order);
    let mut bump = |k: usize, c: BigInt| {
        if k <= order {
            let v = d.coeff(k) + c;
            d.set_coeff(k, v);
        }
    };
    bump(s, -two_g.clone());
    if n == 1 {
        bump(2 * s, BigInt::from(1));
    } else {
        bump((2 * n + 1) * s, two_g);
        bump((2 * n + 2) * s, BigInt::from(-1));
    }
    d
}

/// Closed forms for the surface-type algebras `A_{g,n}`.
pub fn a_g_n_series(g: usize, n: usize, order: usize) -> Result<AgnSeries> {
    check_g_n(g, n)?;
    let num = |s: usize| {
        if n == 1 {
            TruncSeries::one(order)
        } else {
            TruncSeries::one_minus_power(2 * (n - 1 + s), order)
        }
    };
    let h_a = if n == 1 {
        agn_denominator(g, 1, 1, order).inv()?
    } else {
        TruncSeries::one_minus_power(2 * n, order).mul(&agn_denominator(g, n, 1, order).inv()?)?
    };
    let mut h_oa = if n == 1 { TruncSeries::one_minus_power(2, order).inv()? } else { TruncSeries::one(order) };
    for s in 1..=order {
        h_oa = h_oa.mul(&num(s))?.mul(&agn_denominator(g, n, s, order).inv()?)?;
    }
    Ok(AgnSeries { h_a, h_oa })
}

/// `A_{g,n}` rebuilt as `A_{g,1}` glued with `C[z]/(z^n)`, `deg z = 2`, through the
/// circ-product formulas. Returns the reports for `h(A)` and `h(O(A))`.
pub fn a_g_n_circ_check(
    g: usize,
    n: usize,
    order: usize,
    order_o: usize,
    det_bound: usize,
) -> Result<(IdentityReport, IdentityReport)> {
    check_g_n(g, n)?;
    let scalar = |s: TruncSeries| MatSeries::from_fn(1, s.order(), |_, _| s.clone());
    let h_d = |ord: usize| TruncSeries::one_minus_power(2 * n, ord).mul(&TruncSeries::one_minus_power(2, ord).inv()?);
    let h_v = |ord: usize| TruncSeries::monomial(1, BigInt::from(2 * g), ord);
    let h_l = |ord: usize| TruncSeries::monomial(2, BigInt::from(1), ord);

    let h = circ_product_hilbert(&scalar(h_v(order)), &scalar(h_l(order)), &scalar(h_d(order)?))?.get(0, 0).clone();
    let closed = a_g_n_series(g, n, order.max(order_o))?;
    let rep_h = IdentityReport::compare("riemsur-h", Some(format!("A_{{{g},{n}}}")), closed.h_a.truncate(order), h);

    let mut h_od = TruncSeries::one(order_o);
    for i in 1..n {
        h_od = h_od.mul(&TruncSeries::one_minus_power(2 * i, order_o).inv()?)?;
    }
    let oa =
        circ_product_oa(&scalar(h_v(order_o)), &scalar(h_l(order_o)), &scalar(h_d(order_o)?), &h_od, &[], det_bound)?;
    let rep_o = IdentityReport::compare("riemsur-o", Some(format!("A_{{{g},{n}}}")), closed.h_oa.truncate(order_o), oa);
    Ok((rep_h, rep_o))
}

/// Exponents `<w, phi_k(c) w>` for `k = 0..=max_k`.
pub fn quiver_variety_exponents(q: &Quiver, w: &[i64], max_k: usize) -> Result<Vec<BigInt>> {
    check_base(q)?;
    if w.len() != q.num_vertices() {
        return Err(Error::ShapeMismatch { left: w.len(), right: q.num_vertices() });
    }
    if w.iter().any(|&x| x < 0) || w.iter().all(|&x| x == 0) {
        return Err(Error::Hypothesis("the framing vector w must be nonnegative and nonzero".into()));
    }
    let table = ChebyshevTable::new(&q.double().adjacency(), max_k);
    Ok((0..=max_k).map(|k| table.pairing(k, w)).collect())
}

/// `prod_s 1/det(1 - t^s c + t^{2s}) * prod_{k>=0} (1 - t^{k+2})^{-<w, phi_k(c) w>}`
/// for a quiver that is not Dynkin.
pub fn quiver_variety_limit_series(q: &Quiver, w: &[i64], order: usize, det_bound: usize) -> Result<TruncSeries> {
    check_base(q)?;
    if let Classification::Dynkin(s) = classify(q)? {
        return Err(Error::Hypothesis(format!("needs a non-Dynkin quiver, got Dynkin {s}")));
    }
    let exps = quiver_variety_exponents(q, w, order.saturating_sub(2))?;
    let mut acc = infinite_product_zeta_bounded(&cartan_matrix_series(&q.double().adjacency(), order), det_bound)?;
    for (k, e) in exps.iter().enumerate() {
        if k + 2 <= order {
            acc = acc.mul(&TruncSeries::one_minus_power_pow(k + 2, &-e, order))?;
        }
    }
    Ok(acc)
}
