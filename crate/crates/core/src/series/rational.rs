use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::TruncSeries;
use crate::error::{Error, Result};

/// Truncated series with exact rational coefficients.
///
/// Only used transiently: logarithms, group averages and oracle arithmetic
/// that needs division before the result is known to be integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<BigRational>,
}

impl RatSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Formal logarithm of a series with constant term 1, via `(log H)' = H'/H`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantNotOne(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let inv = self.inv()?;
        let mut deriv = Self::zero(n);
        for k in 1..=n {
            deriv.coeffs[k - 1] = &self.coeffs[k] * BigRational::from_integer(BigInt::from(k));
        }
        let q = deriv.mul(&inv)?;
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = &q.coeffs[k - 1] / BigRational::from_integer(BigInt::from(k));
        }
        Ok(out)
    }

    /// Converts back to an integer series if every coefficient is integral.
    pub fn to_integer(&self) -> Option<TruncSeries> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(TruncSeries::new)
    }
}

impl From<&TruncSeries> for RatSeries {
    fn from(s: &TruncSeries) -> Self {
        Self { coeffs: s.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }
}
