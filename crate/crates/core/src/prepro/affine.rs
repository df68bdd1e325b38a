use serde::Serialize;

use super::chebyshev::ChebyshevTable;
use crate::error::{Error, Result};
use crate::quiver::{cartan_matrix_series, classify, shapes, Classification, Quiver, ShapeType};
use crate::series::TruncSeries;

/// Outcome of comparing two series: the schema shared by every identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub order: usize,
    pub equal: bool,
    pub first_diff: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
}

impl IdentityReport {
    pub fn compare(identity: &str, subject: Option<String>, lhs: TruncSeries, rhs: TruncSeries) -> Self {
        let order = lhs.order().min(rhs.order());
        let first_diff = (0..=order).find(|&k| lhs.coeff(k) != rhs.coeff(k));
        Self { identity: identity.into(), order, equal: first_diff.is_none(), first_diff, subject, lhs, rhs }
    }
}

/// The affine Dynkin quiver of a shape together with its extending vertex.
pub fn affine_shape(shape: ShapeType) -> Result<(Quiver, usize)> {
    Ok(match shape {
        ShapeType::A(n) => shapes::affine_a(n),
        ShapeType::D(n) if n >= 4 => shapes::affine_d(n),
        ShapeType::E(n) if (6..=8).contains(&n) => shapes::affine_e(n),
        other => return Err(Error::InvalidArgument(format!("no affine shape ~{other}"))),
    })
}

/// Every affine shape of rank up to the acceptance bounds: `~A1..~A7`, `~D4..~D8`, `~E6..~E8`.
pub fn affine_family() -> Vec<ShapeType> {
    (1..=7).map(ShapeType::A).chain((4..=8).map(ShapeType::D)).chain((6..=8).map(ShapeType::E)).collect()
}

fn extending_vertices(q: &Quiver) -> Result<Vec<usize>> {
    match classify(q)? {
        Classification::ExtendedDynkin { extending, .. } => Ok(extending),
        other => Err(Error::Hypothesis(format!("needs an extended Dynkin quiver, got {other}"))),
    }
}

/// `prod_{r>=1} det(1 - t^r c + t^{2r}) = prod_{k>=1} (1 - t^k)^{kind1_k(c)_oo}`,
/// checked at the extending vertex `o`.
pub fn affine_identity_check(q: &Quiver, o: usize, order: usize, det_bound: usize) -> Result<IdentityReport> {
    let ext = extending_vertices(q)?;
    if !ext.contains(&o) {
        return Err(Error::Hypothesis(format!("vertex {o} is not an extending vertex")));
    }
    let c = q.double().adjacency();
    let det = cartan_matrix_series(&c, order).det_bounded(det_bound)?;
    let mut lhs = TruncSeries::one(order);
    for r in 1..=order {
        lhs = lhs.mul(&det.substitute_power(r as i64)?)?;
    }
    let table = ChebyshevTable::new(&c, order);
    let mut rhs = TruncSeries::one(order);
    for k in 1..=order {
        let e = &table.kind1[k][o][o];
        rhs = rhs.mul(&TruncSeries::one_minus_power_pow(k, e, order))?;
    }
    Ok(IdentityReport::compare("curious", Some(format!("vertex {o}")), lhs, rhs))
}

/// Checks the identity at every extending vertex.
pub fn affine_identity_all(q: &Quiver, order: usize, det_bound: usize) -> Result<Vec<IdentityReport>> {
    extending_vertices(q)?.into_iter().map(|o| affine_identity_check(q, o, order, det_bound)).collect()
}

fn one_minus(k: usize, order: usize) -> TruncSeries {
    TruncSeries::one_minus_power(k, order)
}

/// Tabulated `det(1 - t c + t^2)` for an affine shape.
pub fn dynkin_d_closed_form(shape: ShapeType, order: usize) -> Result<TruncSeries> {
    let prod = |ks: &[usize]| {
        ks.iter().fold(TruncSeries::one(order), |acc, &k| acc.mul(&one_minus(k, order)).expect("shared order"))
    };
    let over_one_minus_t2 = |s: TruncSeries| s.mul(&one_minus(2, order).inv().expect("unit constant"));
    Ok(match shape {
        ShapeType::A(n) => prod(&[n + 1, n + 1]),
        ShapeType::D(n) if n >= 4 => over_one_minus_t2(prod(&[4, 4, 2 * n - 4]))?,
        ShapeType::E(6) => over_one_minus_t2(prod(&[4, 6, 6]))?,
        ShapeType::E(7) => over_one_minus_t2(prod(&[4, 6, 8]))?,
        ShapeType::E(8) => over_one_minus_t2(prod(&[4, 6, 10]))?,
        other => return Err(Error::InvalidArgument(format!("no tabulated polynomial for ~{other}"))),
    })
}

/// Computed determinant against the tabulated polynomial. The order is raised
/// to the polynomial degree `2|I|` when smaller so nothing is lost to truncation.
pub fn dynkin_d_polynomial(shape: ShapeType, order: usize, det_bound: usize) -> Result<IdentityReport> {
    let (q, _) = affine_shape(shape)?;
    let c = q.double().adjacency();
    let order = order.max(2 * c.dim());
    let det = cartan_matrix_series(&c, order).det_bounded(det_bound)?;
    let closed = dynkin_d_closed_form(shape, order)?;
    Ok(IdentityReport::compare("dtable", Some(format!("~{shape}")), det, closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DEFAULT_DET_BOUND;

    #[test]
    fn affine_a1_both_sides() {
        let (q, o) = shapes::affine_a(1);
        let rep = affine_identity_check(&q, o, 20, DEFAULT_DET_BOUND).unwrap();
        let mut expected = TruncSeries::one(20);
        for r in 1..=10 {
            let f = one_minus(2 * r, 20);
            expected = expected.mul(&f).unwrap().mul(&f).unwrap();
        }
        assert!(rep.equal);
        assert_eq!(rep.lhs, expected);
    }

    #[test]
    fn affine_family_at_order_30() {
        for shape in affine_family() {
            let (q, o) = affine_shape(shape).unwrap();
            let rep = affine_identity_check(&q, o, 30, DEFAULT_DET_BOUND).unwrap();
            assert!(rep.equal, "~{shape}: first difference at {:?}", rep.first_diff);
        }
    }

    #[test]
    fn all_extending_vertices_agree() {
        let (q, _) = shapes::affine_a(4);
        let reps = affine_identity_all(&q, 20, DEFAULT_DET_BOUND).unwrap();
        assert_eq!(reps.len(), 5);
        assert!(reps.iter().all(|r| r.equal && r.rhs == reps[0].rhs));
    }

    #[test]
    fn d_table() {
        for shape in affine_family() {
            let rep = dynkin_d_polynomial(shape, 0, DEFAULT_DET_BOUND).unwrap();
            assert!(rep.equal, "~{shape}");
        }
        let a3 = dynkin_d_closed_form(ShapeType::A(3), 8).unwrap();
        assert_eq!(a3.to_i64s().unwrap(), vec![1, 0, 0, 0, -2, 0, 0, 0, 1]);
    }

    #[test]
    fn refuses_non_affine() {
        assert!(matches!(affine_identity_check(&shapes::loops(2), 0, 5, 12), Err(Error::Hypothesis(_))));
        let (q, _) = shapes::affine_d(4);
        assert!(matches!(affine_identity_check(&q, 2, 5, 12), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn report_json_schema() {
        let rep = IdentityReport::compare("curious", None, TruncSeries::one(2), TruncSeries::one(2));
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["identity"], "curious");
        assert_eq!(v["order"], 2);
        assert_eq!(v["equal"], true);
        assert!(v["first_diff"].is_null());
    }
}
