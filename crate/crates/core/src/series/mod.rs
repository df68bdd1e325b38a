//! Exact truncated power series in one variable `t`.
//!
//! A [`TruncSeries`] of order `N` stores the coefficients of `t^0..=t^N`
//! as arbitrary-precision integers. Binary operations require equal orders;
//! re-truncation is always explicit through [`TruncSeries::truncate`].

mod matrix;
mod plethystic;
mod rational;

pub use matrix::{MatSeries, DEFAULT_DET_BOUND};
pub use plethystic::{infinite_product_zeta, infinite_product_zeta_bounded, mobius};
pub use rational::RatSeries;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    /// Builds a series from `order + 1` coefficients.
    ///
    /// An empty coefficient list is rejected by padding to order 0.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    /// Builds a series of the given order from a (possibly shorter or longer)
    /// list of small coefficients; missing entries are zero, extra ones dropped.
    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let coeffs = (0..=order).map(|k| BigInt::from(values.get(k).copied().unwrap_or(0))).collect();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigInt::one(), order)
    }

    pub fn constant(c: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k`, or zero when `k` exceeds the order.
    pub fn monomial(k: usize, c: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 - t^k` truncated at `order`.
    pub fn one_minus_power(k: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] -= BigInt::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: BigInt) {
        if k <= self.order() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Re-truncates (or zero-extends) to a new order.
    pub fn truncate(&self, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| self.coeff(k)).collect();
        Self { coeffs }
    }

    /// Coefficients as `i64`, if every one fits.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be a unit (±1).
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        let n = self.order();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        // c0 is ±1, so dividing by it is multiplying by it.
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-(acc * c0));
        }
        Ok(Self { coeffs: out })
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Replaces `t` by `t^s`, keeping the truncation order.
    pub fn substitute_power(&self, s: i64) -> Result<Self> {
        if s <= 0 {
            return Err(Error::BadSubstitution(s));
        }
        let s = s as usize;
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        for (r, c) in self.coeffs.iter().enumerate() {
            let k = r * s;
            if k > n {
                break;
            }
            out[k] = c.clone();
        }
        Ok(Self { coeffs: out })
    }

    /// `(1 - t^r)^e` for any integer `e`, truncated at `order`.
    ///
    /// Uses the binomial series `sum_k C(e, k) (-t^r)^k`, which terminates for
    /// `e >= 0` and is the generalised binomial series otherwise.
    pub fn one_minus_power_pow(r: usize, e: &BigInt, order: usize) -> Self {
        assert!(r >= 1, "exponent base degree must be positive");
        let mut out = Self::zero(order);
        let mut binom = BigInt::one();
        let mut k = 0usize;
        while k * r <= order {
            if binom.is_zero() {
                break;
            }
            let term = if k.is_multiple_of(2) { binom.clone() } else { -binom.clone() };
            out.coeffs[k * r] += term;
            // C(e, k+1) = C(e, k) * (e - k) / (k + 1), exact at every step.
            let next = binom * (e - BigInt::from(k));
            let (q, rem) = next.div_rem(&BigInt::from(k + 1));
            debug_assert!(rem.is_zero());
            binom = q;
            k += 1;
        }
        out
    }

    /// Hilbert series of the (super)symmetric algebra on a graded space whose
    /// signed dimension series is `self`: `prod_r (1 - t^r)^{-a_r}`.
    pub fn sym_exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut acc = Self::one(n);
        for r in 1..=n {
            let a = &self.coeffs[r];
            if a.is_zero() {
                continue;
            }
            let factor = Self::one_minus_power_pow(r, &(-a), n);
            acc = acc.mul_unchecked(&factor);
        }
        Ok(acc)
    }

    /// Inverse of [`TruncSeries::sym_exp`].
    ///
    /// `c_m = m [t^m] log H`, then `a_m = (1/m) sum_{d | m} mu(m/d) c_d`.
    pub fn sym_log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantNotOne(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let log = RatSeries::from(self).log()?;
        let c: Vec<BigInt> = (0..=n)
            .map(|m| {
                let v = &log.coeffs()[m] * BigInt::from(m);
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        let mut out = vec![BigInt::zero(); n + 1];
        for (m, slot) in out.iter_mut().enumerate().skip(1) {
            let mut acc = BigInt::zero();
            for (d, cd) in c.iter().enumerate().take(m + 1).skip(1) {
                if m.is_multiple_of(d) {
                    let mu = mobius(m / d);
                    if mu != 0 {
                        acc += cd * BigInt::from(mu);
                    }
                }
            }
            let (q, rem) = acc.div_rem(&BigInt::from(m));
            if !rem.is_zero() {
                return Err(Error::NotPlethystic { degree: m });
            }
            *slot = q;
        }
        Ok(Self { coeffs: out })
    }

    /// Sum of all coefficients (the value at `t = 1` of the truncated polynomial).
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "t")?,
                1 => write!(f, "{abs}t")?,
                _ if abs.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{abs}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// JSON integer that accepts either a number or a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    I(i64),
    U(u64),
    S(String),
}

impl IntRepr {
    pub(crate) fn into_bigint(self) -> std::result::Result<BigInt, String> {
        match self {
            IntRepr::I(v) => Ok(BigInt::from(v)),
            IntRepr::U(v) => Ok(BigInt::from(v)),
            IntRepr::S(s) => s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}")),
        }
    }
}

/// Serde adapter for `Vec<BigInt>` as decimal strings.
pub(crate) mod bigint_vec_str {
    use super::IntRepr;
    use num_bigint::BigInt;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?.into_iter().map(|r| r.into_bigint().map_err(D::Error::custom)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    #[serde(with = "bigint_vec_str")]
    coeffs: Vec<BigInt>,
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { order: self.order(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TruncSeries { coeffs: raw.coeffs })
    }
}
