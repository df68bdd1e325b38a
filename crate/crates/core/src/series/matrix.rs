use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{bigint_vec_str, TruncSeries};
use crate::error::{Error, Result};

/// Largest matrix handed to [`MatSeries::det`] unless the caller raises it.
pub const DEFAULT_DET_BOUND: usize = 12;

/// Square matrix of truncated series sharing one order, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatSeries {
    dim: usize,
    order: usize,
    entries: Vec<TruncSeries>,
}

impl MatSeries {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self { dim, order, entries: vec![TruncSeries::zero(order); dim * dim] }
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut m = Self::zero(dim, order);
        for i in 0..dim {
            m.entries[i * dim + i] = TruncSeries::one(order);
        }
        m
    }

    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(usize, usize) -> TruncSeries) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = f(i, j);
                assert_eq!(e.order(), order, "entry ({i},{j}) has the wrong order");
                entries.push(e);
            }
        }
        Self { dim, order, entries }
    }

    /// `t^k * c` for an integer matrix `c` given row-major.
    pub fn monomial_matrix(c: &[Vec<i64>], k: usize, order: usize) -> Self {
        let dim = c.len();
        Self::from_fn(dim, order, |i, j| TruncSeries::monomial(k, BigInt::from(c[i][j]), order))
    }

    /// 1x1 matrix holding a scalar series.
    pub fn scalar(s: TruncSeries) -> Self {
        Self { dim: 1, order: s.order(), entries: vec![s] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: TruncSeries) {
        assert_eq!(s.order(), self.order);
        self.entries[i * self.dim + j] = s;
    }

    pub fn entries(&self) -> &[TruncSeries] {
        &self.entries
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch { left: self.dim, right: other.dim });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Self { entries, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(Self { entries, ..*self })
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(TruncSeries::neg).collect(), ..*self }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let n = self.dim;
        let mut out = Self::zero(n, self.order);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul_unchecked(b))?;
                }
            }
        }
        Ok(out)
    }

    /// Multiplies every entry by a scalar series.
    pub fn scale(&self, s: &TruncSeries) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.mul(s)).collect::<Result<_>>()?;
        Ok(Self { entries, ..*self })
    }

    pub fn substitute_power(&self, s: i64) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.substitute_power(s)).collect::<Result<_>>()?;
        Ok(Self { entries, ..*self })
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { dim: self.dim, order, entries: self.entries.iter().map(|e| e.truncate(order)).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, self.order, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncSeries::is_zero)
    }

    pub fn constant_is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let c = &self.get(i, j).coeffs()[0];
                if i == j {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
        })
    }

    /// Lowest-degree nonzero coefficient as `(degree, i, j, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, BigInt)> {
        (0..=self.order).find_map(|k| {
            (0..self.dim * self.dim).find_map(|idx| {
                let c = &self.entries[idx].coeffs()[k];
                (!c.is_zero()).then(|| (k, idx / self.dim, idx % self.dim, c.clone()))
            })
        })
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> TruncSeries {
        self.entries.iter().fold(TruncSeries::zero(self.order), |acc, e| acc.add(e).expect("shared order"))
    }

    /// Inverse by the Neumann series `sum_k (1 - A)^k`; requires `A(0) = 1`.
    pub fn inv(&self) -> Result<Self> {
        if !self.constant_is_identity() {
            return Err(Error::ConstantNotIdentity);
        }
        let id = Self::identity(self.dim, self.order);
        let b = id.sub(self)?;
        // After k steps x agrees with the inverse through t^k.
        let mut x = id.clone();
        for _ in 0..self.order {
            x = id.add(&b.mul(&x)?)?;
        }
        Ok(x)
    }

    pub fn det(&self) -> Result<TruncSeries> {
        self.det_bounded(DEFAULT_DET_BOUND)
    }

    /// Determinant by cofactor expansion along rows, memoising minors on
    /// column subsets so the cost is `dim * 2^dim` series products.
    pub fn det_bounded(&self, bound: usize) -> Result<TruncSeries> {
        let n = self.dim;
        if n > bound {
            return Err(Error::DetBound { dim: n, bound });
        }
        if n == 0 {
            return Ok(TruncSeries::one(self.order));
        }
        let full = (1usize << n) - 1;
        let mut minors: Vec<Option<TruncSeries>> = vec![None; full + 1];
        minors[0] = Some(TruncSeries::one(self.order));
        let mut masks: Vec<usize> = (1..=full).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let size = mask.count_ones() as usize;
            let row = n - size;
            let mut acc = TruncSeries::zero(self.order);
            let mut below = 0usize;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let a = self.get(row, j);
                if !a.is_zero() {
                    let minor = minors[mask & !(1 << j)].as_ref().expect("smaller minors come first");
                    if !minor.is_zero() {
                        let term = a.mul_unchecked(minor);
                        acc = if below.is_multiple_of(2) { acc.add(&term)? } else { acc.sub(&term)? };
                    }
                }
                below += 1;
            }
            minors[mask] = Some(acc);
        }
        Ok(minors[full].take().expect("full minor computed"))
    }
}

#[derive(Serialize, Deserialize)]
struct MatJson {
    dim: usize,
    order: usize,
    entries: Vec<Vec<CoeffList>>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct CoeffList(#[serde(with = "bigint_vec_str")] Vec<BigInt>);

impl Serialize for MatSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| CoeffList(self.get(i, j).coeffs().to_vec())).collect())
            .collect();
        MatJson { dim: self.dim, order: self.order, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatJson::deserialize(d)?;
        if raw.entries.len() != raw.dim || raw.entries.iter().any(|r| r.len() != raw.dim) {
            return Err(D::Error::custom("matrix entries do not match dim"));
        }
        let mut entries = Vec::with_capacity(raw.dim * raw.dim);
        for row in raw.entries {
            for CoeffList(c) in row {
                if c.len() != raw.order + 1 {
                    return Err(D::Error::custom("entry length does not match order"));
                }
                entries.push(TruncSeries::new(c));
            }
        }
        Ok(MatSeries { dim: raw.dim, order: raw.order, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cartan(c: &[Vec<i64>], order: usize) -> MatSeries {
        let n = c.len();
        let id = MatSeries::identity(n, order);
        let tc = MatSeries::monomial_matrix(c, 1, order);
        let t2 = MatSeries::monomial_matrix(
            &(0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect::<Vec<_>>(),
            2,
            order,
        );
        id.sub(&tc).unwrap().add(&t2).unwrap()
    }

    #[test]
    fn identity_laws() {
        let a = cartan(&[vec![0, 1], vec![1, 0]], 4);
        let id = MatSeries::identity(2, 4);
        assert_eq!(id.mul(&a).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(id.inv().unwrap(), id);
        assert_eq!(id.det().unwrap(), TruncSeries::one(4));
    }

    #[test]
    fn hand_square() {
        let a = MatSeries::monomial_matrix(&[vec![0, 2], vec![2, 0]], 1, 3);
        let sq = a.mul(&a).unwrap();
        let expected = MatSeries::monomial_matrix(&[vec![4, 0], vec![0, 4]], 2, 3);
        assert_eq!(sq, expected);
    }

    #[test]
    fn affine_a1_determinant() {
        let p = cartan(&[vec![0, 2], vec![2, 0]], 6);
        assert_eq!(p.det().unwrap(), TruncSeries::from_i64s(&[1, 0, -2, 0, 1], 6));
    }

    #[test]
    fn diagonal_determinant() {
        let d = MatSeries::from_fn(3, 4, |i, j| {
            if i == j {
                TruncSeries::from_i64s(&[1, i as i64 + 1], 4)
            } else {
                TruncSeries::zero(4)
            }
        });
        let expected =
            (0..3).fold(TruncSeries::one(4), |acc, i| acc.mul(&TruncSeries::from_i64s(&[1, i + 1], 4)).unwrap());
        assert_eq!(d.det().unwrap(), expected);
    }

    #[test]
    fn scalar_inverse_matches_series_inverse() {
        let m = MatSeries::scalar(TruncSeries::from_i64s(&[1, -4, 1], 5));
        assert_eq!(m.inv().unwrap().get(0, 0), &TruncSeries::from_i64s(&[1, 4, 15, 56, 209, 780], 5));
    }

    #[test]
    fn inverse_rejects_non_identity_constant() {
        let m = MatSeries::scalar(TruncSeries::from_i64s(&[2, 1], 3));
        assert_eq!(m.inv(), Err(Error::ConstantNotIdentity));
        let swap = MatSeries::monomial_matrix(&[vec![0, 1], vec![1, 0]], 0, 3);
        assert_eq!(swap.inv(), Err(Error::ConstantNotIdentity));
    }

    #[test]
    fn det_bound_is_enforced() {
        let m = MatSeries::identity(5, 2);
        assert_eq!(m.det_bounded(4), Err(Error::DetBound { dim: 5, bound: 4 }));
        assert!(m.det_bounded(5).is_ok());
    }

    #[test]
    fn shape_errors() {
        let a = MatSeries::identity(2, 3);
        let b = MatSeries::identity(3, 3);
        assert_eq!(a.mul(&b), Err(Error::ShapeMismatch { left: 2, right: 3 }));
        let c = MatSeries::identity(2, 4);
        assert_eq!(a.add(&c), Err(Error::OrderMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn json_shape() {
        let m = MatSeries::monomial_matrix(&[vec![0, 2], vec![2, 0]], 1, 1);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"dim":2,"order":1,"entries":[[["0","0"],["0","2"]],[["0","2"],["0","0"]]]}"#);
        let back: MatSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    fn arb_cartan_like(dim: usize, order: usize) -> impl Strategy<Value = MatSeries> {
        proptest::collection::vec(-3i64..4, dim * dim * 2).prop_map(move |v| {
            MatSeries::from_fn(dim, order, |i, j| {
                let k = (i * dim + j) * 2;
                TruncSeries::from_i64s(&[(i == j) as i64, v[k], v[k + 1]], order)
            })
        })
    }

    proptest! {
        #[test]
        fn neumann_inverse_is_two_sided(a in arb_cartan_like(3, 6)) {
            let inv = a.inv().unwrap();
            let id = MatSeries::identity(3, 6);
            prop_assert_eq!(a.mul(&inv).unwrap(), id.clone());
            prop_assert_eq!(inv.mul(&a).unwrap(), id);
        }

        #[test]
        fn det_is_multiplicative(a in arb_cartan_like(3, 6), b in arb_cartan_like(3, 6)) {
            let lhs = a.mul(&b).unwrap().det().unwrap();
            let rhs = a.det().unwrap().mul(&b.det().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn det_of_transpose(a in arb_cartan_like(4, 5)) {
            prop_assert_eq!(a.det().unwrap(), a.transpose().det().unwrap());
        }
    }
}
