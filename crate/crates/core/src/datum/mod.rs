//! Graded (V, L) data and the closed-form series they determine.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{compute_l_circ, Presentation};
use crate::error::{Error, Result};
use crate::series::{infinite_product_zeta_bounded, MatSeries, TruncSeries, DEFAULT_DET_BOUND};

/// Hypothesis the caller asserts whenever an 𝒪(A) or Hochschild series is reported.
pub const OA_HYPOTHESIS: &str =
    "asserted, not checked: A is an asymptotic representation complete intersection, so h(O(A)) = zeta(V,L) / lambda(L°)";

/// Signed graded dimensions of `V`, `L` and `L°` over a vertex set of size `dim_i`.
///
/// `dims_v[i][j][r]` is the even minus odd dimension of `V_ij[r]`; lists may
/// have any length and are read as zero past their end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VLDatum {
    dim_i: usize,
    dims_v: Vec<Vec<Vec<i64>>>,
    dims_l: Vec<Vec<Vec<i64>>>,
    m: Vec<i64>,
    presentation: Option<Presentation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hochschild {
    pub hh0: TruncSeries,
    pub hh1: TruncSeries,
    pub hh2: TruncSeries,
}

fn check_block(name: &str, dim_i: usize, dims: &[Vec<Vec<i64>>]) -> Result<()> {
    if dims.len() != dim_i || dims.iter().any(|row| row.len() != dim_i) {
        return Err(Error::InvalidDatum(format!("{name} must be {dim_i}x{dim_i}")));
    }
    if dims.iter().flatten().any(|d| d.first().is_some_and(|&c| c != 0)) {
        return Err(Error::InvalidDatum(format!("{name} has a nonzero weight-0 part")));
    }
    Ok(())
}

fn block_series(dims: &[Vec<Vec<i64>>], order: usize) -> MatSeries {
    let n = dims.len();
    MatSeries::from_fn(n, order, |i, j| TruncSeries::from_i64s(&dims[i][j], order))
}

fn block_of(m: &MatSeries) -> Vec<Vec<Vec<i64>>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.get(i, j).to_i64s().expect("dimensions fit in i64")).collect())
        .collect()
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn same_dims(a: &[i64], b: &[i64]) -> bool {
    trim(a.to_vec()) == trim(b.to_vec())
}

impl VLDatum {
    pub fn new(
        dim_i: usize,
        dims_v: Vec<Vec<Vec<i64>>>,
        dims_l: Vec<Vec<Vec<i64>>>,
        m: Vec<i64>,
        presentation: Option<Presentation>,
    ) -> Result<Self> {
        if dim_i == 0 {
            return Err(Error::InvalidDatum("vertex set is empty".into()));
        }
        check_block("dims_v", dim_i, &dims_v)?;
        check_block("dims_l", dim_i, &dims_l)?;
        if m.first().is_some_and(|&c| c != 0) {
            return Err(Error::InvalidDatum("m has a nonzero weight-0 part".into()));
        }
        let d = Self { dim_i, dims_v, dims_l, m, presentation };
        if let Some(p) = &d.presentation {
            d.check_against(p)?;
        }
        Ok(d)
    }

    /// Reads `V`, `L` and `L°` off an explicit presentation up to weight `order`.
    pub fn from_presentation(p: Presentation, order: usize) -> Self {
        let dims_v = block_of(&p.generator_series(order));
        let dims_l = block_of(&p.relation_series(order));
        let m = compute_l_circ(&p, order).to_i64s().expect("dimensions fit in i64");
        Self { dim_i: p.num_vertices(), dims_v, dims_l, m, presentation: Some(p) }
    }

    fn check_against(&self, p: &Presentation) -> Result<()> {
        if p.num_vertices() != self.dim_i {
            return Err(Error::InvalidDatum("presentation has a different vertex count".into()));
        }
        let order = self.max_weight().max(p.relations.iter().map(|r| r.weight()).max().unwrap_or(0)).max(1);
        let v = block_of(&p.generator_series(order));
        let l = block_of(&p.relation_series(order));
        for i in 0..self.dim_i {
            for j in 0..self.dim_i {
                if !same_dims(&v[i][j], &self.dims_v[i][j]) {
                    return Err(Error::InvalidDatum(format!("dims_v[{i}][{j}] disagrees with the presentation")));
                }
                if !same_dims(&l[i][j], &self.dims_l[i][j]) {
                    return Err(Error::InvalidDatum(format!("dims_l[{i}][{j}] disagrees with the presentation")));
                }
            }
        }
        let m = compute_l_circ(p, order).to_i64s().expect("dimensions fit in i64");
        if !same_dims(&m, &self.m) {
            return Err(Error::InvalidDatum(format!(
                "m = {:?} disagrees with the presentation ({:?})",
                self.m,
                trim(m)
            )));
        }
        Ok(())
    }

    fn max_weight(&self) -> usize {
        let blocks = self.dims_v.iter().chain(&self.dims_l).flatten().map(|d| d.len());
        blocks.chain(std::iter::once(self.m.len())).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn dim_i(&self) -> usize {
        self.dim_i
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn h_v(&self, order: usize) -> MatSeries {
        block_series(&self.dims_v, order)
    }

    pub fn h_l(&self, order: usize) -> MatSeries {
        block_series(&self.dims_l, order)
    }

    /// `1 - h(V) + h(L)`.
    pub fn cartan_poly(&self, order: usize) -> MatSeries {
        let id = MatSeries::identity(self.dim_i, order);
        id.sub(&self.h_v(order)).and_then(|p| p.add(&self.h_l(order))).expect("shapes agree")
    }

    pub fn hilbert_a(&self, order: usize) -> Result<MatSeries> {
        self.cartan_poly(order).inv()
    }

    /// `prod_r (1 - t^r)^{m_r}`.
    pub fn lambda_poly(&self, order: usize) -> TruncSeries {
        lambda_of(&self.m, order)
    }

    pub fn zeta(&self, order: usize) -> Result<TruncSeries> {
        self.zeta_bounded(order, DEFAULT_DET_BOUND)
    }

    pub fn zeta_bounded(&self, order: usize, det_bound: usize) -> Result<TruncSeries> {
        infinite_product_zeta_bounded(&self.cartan_poly(order), det_bound)
    }

    /// `zeta / lambda`. See [`OA_HYPOTHESIS`].
    pub fn hilbert_oa(&self, order: usize) -> Result<TruncSeries> {
        self.hilbert_oa_bounded(order, DEFAULT_DET_BOUND)
    }

    pub fn hilbert_oa_bounded(&self, order: usize, det_bound: usize) -> Result<TruncSeries> {
        self.zeta_bounded(order, det_bound)?.mul(&self.lambda_poly(order).inv()?)
    }

    pub fn hochschild_series(&self, order: usize) -> Result<Hochschild> {
        self.hochschild_series_bounded(order, DEFAULT_DET_BOUND)
    }

    /// `HH_2 = L°`, `HH_0 = R + A_+/[A,A]`, `HH_1 = A_+/[A,A] + L°`.
    pub fn hochschild_series_bounded(&self, order: usize, det_bound: usize) -> Result<Hochschild> {
        let hh2 = TruncSeries::from_i64s(&self.m, order);
        let cyclic = self.hilbert_oa_bounded(order, det_bound)?.sym_log()?;
        let units = TruncSeries::constant(BigInt::from(self.dim_i), order);
        let hh0 = units.add(&cyclic)?;
        let hh1 = cyclic.add(&hh2)?;
        Ok(Hochschild { hh0, hh1, hh2 })
    }
}

impl Hochschild {
    /// `|I| - HH_0 + HH_1 - HH_2`, zero by construction.
    pub fn euler_characteristic(&self, dim_i: usize) -> Result<TruncSeries> {
        let units = TruncSeries::constant(BigInt::from(dim_i), self.hh0.order());
        units.sub(&self.hh0)?.add(&self.hh1)?.sub(&self.hh2)
    }
}

/// `prod_r (1 - t^r)^{m_r}` for a list indexed by `r`.
pub fn lambda_of(m: &[i64], order: usize) -> TruncSeries {
    let mut acc = TruncSeries::one(order);
    for (r, &mr) in m.iter().enumerate().skip(1) {
        if mr != 0 && r <= order {
            let f = TruncSeries::one_minus_power_pow(r, &BigInt::from(mr), order);
            acc = acc.mul(&f).expect("shared order");
        }
    }
    acc
}

/// `(h(A1)^{-1} + h(A2)^{-1} - 1)^{-1}`.
pub fn free_product(d1: &VLDatum, d2: &VLDatum, order: usize) -> Result<MatSeries> {
    if d1.dim_i != d2.dim_i {
        return Err(Error::ShapeMismatch { left: d1.dim_i, right: d2.dim_i });
    }
    let id = MatSeries::identity(d1.dim_i, order);
    d1.cartan_poly(order).add(&d2.cartan_poly(order))?.sub(&id)?.inv()
}

/// `[1 - h(D) (h(V) - h(L))]^{-1} h(D)`, assuming `B` with data `(V, L)` is NCCI.
pub fn circ_product_hilbert(h_v: &MatSeries, h_l: &MatSeries, h_d: &MatSeries) -> Result<MatSeries> {
    circ_kernel(h_v, h_l, h_d)?.inv()?.mul(h_d)
}

fn circ_kernel(h_v: &MatSeries, h_l: &MatSeries, h_d: &MatSeries) -> Result<MatSeries> {
    let id = MatSeries::identity(h_v.dim(), h_v.order());
    id.sub(&h_d.mul(&h_v.sub(h_l)?)?)
}

/// `h(𝒪(D)) / (lambda(Q) prod_s det(1 - h(D;t^s)(h(V;t^s) - h(L;t^s))))`.
///
/// `m_q` lists the graded dimensions of `Q`; it is taken as given.
pub fn circ_product_oa(
    h_v: &MatSeries,
    h_l: &MatSeries,
    h_d: &MatSeries,
    h_od: &TruncSeries,
    m_q: &[i64],
    det_bound: usize,
) -> Result<TruncSeries> {
    let order = h_v.order();
    let zeta = infinite_product_zeta_bounded(&circ_kernel(h_v, h_l, h_d)?, det_bound)?;
    zeta.mul(h_od)?.mul(&lambda_of(m_q, order).inv()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Dim(i64);

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(v) => Ok(Dim(v)),
            Raw::S(s) => s.trim().parse().map(Dim).map_err(|e| D::Error::custom(format!("bad dimension {s:?}: {e}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    dim_i: usize,
    dims_v: Vec<Vec<Vec<Dim>>>,
    dims_l: Vec<Vec<Vec<Dim>>>,
    #[serde(default)]
    m: Vec<Dim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<Presentation>,
}

fn wrap(b: &[Vec<Vec<i64>>]) -> Vec<Vec<Vec<Dim>>> {
    b.iter().map(|row| row.iter().map(|d| d.iter().map(|&x| Dim(x)).collect()).collect()).collect()
}

fn unwrap(b: Vec<Vec<Vec<Dim>>>) -> Vec<Vec<Vec<i64>>> {
    b.into_iter().map(|row| row.into_iter().map(|d| d.into_iter().map(|x| x.0).collect()).collect()).collect()
}

impl Serialize for VLDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DatumJson {
            dim_i: self.dim_i,
            dims_v: wrap(&self.dims_v),
            dims_l: wrap(&self.dims_l),
            m: self.m.iter().map(|&x| Dim(x)).collect(),
            presentation: self.presentation.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VLDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DatumJson::deserialize(d)?;
        VLDatum::new(
            raw.dim_i,
            unwrap(raw.dims_v),
            unwrap(raw.dims_l),
            raw.m.into_iter().map(|x| x.0).collect(),
            raw.presentation,
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{brute_algebra_matrix, brute_cyclic_dims, NCPoly, DEFAULT_PATH_CAP};
    use crate::quiver::shapes;
    use proptest::prelude::*;

    fn one_vertex(v: &[i64], l: &[i64], m: &[i64]) -> VLDatum {
        VLDatum::new(1, vec![vec![v.to_vec()]], vec![vec![l.to_vec()]], m.to_vec(), None).unwrap()
    }

    fn two_loop_preprojective() -> VLDatum {
        one_vertex(&[0, 4], &[0, 0, 1], &[0, 0, 1])
    }

    fn ints(s: &TruncSeries) -> Vec<i64> {
        s.to_i64s().unwrap()
    }

    #[test]
    fn cartan_poly_examples() {
        assert_eq!(one_vertex(&[0, 2], &[], &[]).cartan_poly(2).get(0, 0), &TruncSeries::from_i64s(&[1, -2], 2));
        assert_eq!(one_vertex(&[0, -1], &[], &[]).cartan_poly(2).get(0, 0), &TruncSeries::from_i64s(&[1, 1], 2));
        assert_eq!(two_loop_preprojective().cartan_poly(2).get(0, 0), &TruncSeries::from_i64s(&[1, -4, 1], 2));
    }

    #[test]
    fn hilbert_a_two_loops() {
        assert_eq!(ints(two_loop_preprojective().hilbert_a(3).unwrap().get(0, 0)), vec![1, 4, 15, 56]);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(ints(&two_loop_preprojective().lambda_poly(4)), vec![1, 0, -1, 0, 0]);
        assert_eq!(lambda_of(&[], 4), TruncSeries::one(4));
        let expected = TruncSeries::from_i64s(&[1, 0, -1], 8).pow(2).mul(&TruncSeries::one_minus_power(3, 8)).unwrap();
        assert_eq!(lambda_of(&[0, 0, 2, 1], 8), expected);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(ints(&one_vertex(&[0, 1], &[], &[]).zeta(5).unwrap()), vec![1, 1, 2, 3, 5, 7]);
        let odd = one_vertex(&[0, -1], &[], &[]).zeta(12).unwrap();
        let mut expected = TruncSeries::one(12);
        for s in 1..=12 {
            let mut f = TruncSeries::one(12);
            f.set_coeff(s, BigInt::from(1));
            expected = expected.mul(&f.inv().unwrap()).unwrap();
        }
        assert_eq!(odd, expected);
    }

    #[test]
    fn hilbert_oa_two_loops() {
        let d = two_loop_preprojective();
        let oa = d.hilbert_oa(5).unwrap();
        assert_eq!(&ints(&oa)[..3], &[1, 4, 20]);
        let p = Presentation::preprojective(&shapes::loops(2), &[false]).unwrap();
        let cyc = brute_cyclic_dims(&p, 5, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(cyc.sym_exp().unwrap(), oa);
    }

    #[test]
    fn monomial_xy_oa() {
        let q = shapes::loops(2);
        let rel = NCPoly::from_ints(&q, &[(1, &[0, 1])]).unwrap();
        let d = VLDatum::from_presentation(Presentation::new(q, vec![rel]).unwrap(), 8);
        assert!(d.lambda_poly(8) == TruncSeries::one(8));
        let expected = TruncSeries::from_i64s(&[0, 2, 2, 2, 2, 2, 2, 2, 2], 8).sym_exp().unwrap();
        assert_eq!(d.hilbert_oa(8).unwrap(), expected);
    }

    #[test]
    fn hochschild_examples() {
        let d = two_loop_preprojective();
        let h = d.hochschild_series(8).unwrap();
        assert_eq!(ints(&h.hh2), vec![0, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert!(h.euler_characteristic(1).unwrap().is_zero());
        let zeta = d.zeta(8).unwrap();
        let lambda = d.lambda_poly(8);
        let target = zeta.mul(&lambda.mul(&lambda).unwrap().inv().unwrap()).unwrap();
        assert_eq!(h.hh1.sym_exp().unwrap(), target);

        let free = one_vertex(&[0, 2], &[], &[]).hochschild_series(6).unwrap();
        assert!(free.hh2.is_zero());
        assert_eq!(free.hh1, free.hh0.sub(&TruncSeries::one(6)).unwrap());
    }

    #[test]
    fn oa_is_zeta_times_sym_hh2() {
        let d = two_loop_preprojective();
        let hh2 = TruncSeries::from_i64s(d.m(), 10);
        let rhs = d.zeta(10).unwrap().mul(&hh2.sym_exp().unwrap()).unwrap();
        assert_eq!(d.hilbert_oa(10).unwrap(), rhs);
    }

    #[test]
    fn free_products() {
        let x = one_vertex(&[0, 1], &[], &[]);
        let fp = free_product(&x, &x, 5).unwrap();
        assert_eq!(ints(fp.get(0, 0)), vec![1, 2, 4, 8, 16, 32]);
        let r = one_vertex(&[], &[], &[]);
        let d = two_loop_preprojective();
        assert_eq!(free_product(&d, &r, 6).unwrap(), d.hilbert_a(6).unwrap());
    }

    #[test]
    fn free_product_of_one_loop_preprojectives_matches_oracle() {
        // Two copies of C<x,x*>/[x,x*] glued at the vertex.
        let mut q = shapes::loops(1).double().quiver().clone();
        q.add_named_edge(0, 0, 1, "b");
        q.add_named_edge(0, 0, 1, "b*");
        let rels = vec![
            NCPoly::from_ints(&q, &[(1, &[0, 1]), (-1, &[1, 0])]).unwrap(),
            NCPoly::from_ints(&q, &[(1, &[2, 3]), (-1, &[3, 2])]).unwrap(),
        ];
        let brute = brute_algebra_matrix(&Presentation::new(q, rels).unwrap(), 6, DEFAULT_PATH_CAP).unwrap();
        let one = one_vertex(&[0, 2], &[0, 0, 1], &[0, 0, 1]);
        assert_eq!(free_product(&one, &one, 6).unwrap(), brute);
    }

    #[test]
    fn circ_product_with_trivial_d() {
        let d = two_loop_preprojective();
        let id = MatSeries::identity(1, 8);
        let h = circ_product_hilbert(&d.h_v(8), &d.h_l(8), &id).unwrap();
        assert_eq!(h, d.hilbert_a(8).unwrap());
        let oa = circ_product_oa(&d.h_v(8), &d.h_l(8), &id, &TruncSeries::one(8), &[], DEFAULT_DET_BOUND).unwrap();
        assert_eq!(oa, d.zeta(8).unwrap());
    }

    #[test]
    fn datum_json_round_trip() {
        let text = r#"{"dim_i":1,"dims_v":[[[0,4]]],"dims_l":[[["0","0","1"]]],"m":[0,0,1]}"#;
        let d: VLDatum = serde_json::from_str(text).unwrap();
        assert_eq!(d, two_loop_preprojective());
        let back: VLDatum = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn datum_validation() {
        assert!(VLDatum::new(1, vec![vec![vec![1]]], vec![vec![vec![]]], vec![], None).is_err());
        assert!(VLDatum::new(2, vec![vec![vec![]]], vec![vec![vec![]]], vec![], None).is_err());
        let p = Presentation::preprojective(&shapes::loops(2), &[false]).unwrap();
        let wrong_m = VLDatum::new(1, vec![vec![vec![0, 4]]], vec![vec![vec![0, 0, 1]]], vec![], Some(p.clone()));
        assert!(matches!(wrong_m, Err(Error::InvalidDatum(_))));
        assert!(VLDatum::new(1, vec![vec![vec![0, 4]]], vec![vec![vec![0, 0, 1]]], vec![0, 0, 1], Some(p)).is_ok());
    }

    proptest! {
        #[test]
        fn hilbert_a_inverts_cartan(v in proptest::collection::vec(0i64..3, 9), l in proptest::collection::vec(0i64..2, 4)) {
            let dims_v: Vec<Vec<Vec<i64>>> = (0..2).map(|i| (0..2).map(|j| vec![0, v[2 * i + j], v[4 + 2 * i + j] % 2]).collect()).collect();
            let dims_l: Vec<Vec<Vec<i64>>> = (0..2).map(|i| (0..2).map(|j| vec![0, 0, l[2 * i + j]]).collect()).collect();
            let d = VLDatum::new(2, dims_v, dims_l, vec![], None).unwrap();
            let prod = d.hilbert_a(6).unwrap().mul(&d.cartan_poly(6)).unwrap();
            prop_assert_eq!(prod, MatSeries::identity(2, 6));
        }

        #[test]
        fn oa_round_trips_through_sym_log(m2 in 0i64..3, v1 in 1i64..4) {
            let d = one_vertex(&[0, v1], &[0, 0, m2], &[0, 0, m2]);
            let oa = d.hilbert_oa(8).unwrap();
            prop_assert_eq!(oa.sym_log().unwrap().sym_exp().unwrap(), oa);
        }
    }
}
