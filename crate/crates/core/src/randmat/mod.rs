//! Haar-unitary Monte Carlo for the matrix integral and trace moments.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::datum::VLDatum;
use crate::error::{Error, Result};
use crate::series::TruncSeries;

/// Truncated power series with complex double coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Complex64::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_exact(s: &TruncSeries) -> Self {
        Self::new(s.coeffs().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `exp(f)` for `f` with zero constant term, via `k g_k = sum_j j f_j g_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].norm() > 0.0 {
            return Err(Error::NonzeroConstant(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut g = vec![Complex64::zero(); n + 1];
        g[0] = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            let mut acc = Complex64::zero();
            for j in 1..=k {
                acc += self.coeffs[j] * g[k - j] * j as f64;
            }
            g[k] = acc / k as f64;
        }
        Ok(Self::new(g))
    }
}

/// Haar-distributed element of `U(d)`: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for x in q.column_mut(j).iter_mut() {
            *x *= phase;
        }
    }
    q
}

/// `Tr(u^k)` for `k = 1..=max_k`, from the eigenvalues of a Schur form.
pub fn power_traces(u: &DMatrix<Complex64>, max_k: usize) -> Vec<Complex64> {
    if u.nrows() == 0 {
        return vec![Complex64::zero(); max_k];
    }
    let (_, t) = u.clone().schur().unpack();
    let eig: Vec<Complex64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    let mut pw = eig.clone();
    let mut out = Vec::with_capacity(max_k);
    for _ in 0..max_k {
        out.push(pw.iter().sum());
        for (p, e) in pw.iter_mut().zip(&eig) {
            *p *= e;
        }
    }
    out
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Mean and standard error of per-sample vectors, reduced in sample order.
fn mean_stderr(samples: &[Vec<Complex64>]) -> (Vec<Complex64>, Vec<f64>) {
    let n = samples.len() as f64;
    let len = samples.first().map_or(0, Vec::len);
    let mut mean = vec![Complex64::zero(); len];
    for s in samples {
        for (m, x) in mean.iter_mut().zip(s) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = vec![0.0; len];
    for s in samples {
        for ((v, x), m) in var.iter_mut().zip(s).zip(&mean) {
            *v += (x - m).norm_sqr();
        }
    }
    let stderr = var.iter().map(|v| if n > 1.0 { (v / (n - 1.0) / n).sqrt() } else { f64::INFINITY }).collect();
    (mean, stderr)
}

/// One factor `Tr(u^s)^{m_s} conj(Tr(u^s))^{n_s}` of a trace moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MomentTerm {
    pub s: usize,
    pub m: u32,
    pub n: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentEstimate {
    pub mean_re: f64,
    pub mean_im: f64,
    pub stderr: f64,
    pub exact: f64,
    pub samples: usize,
    pub seed: u64,
    pub d: usize,
    /// `d` is below `sum_s s max(m_s, n_s)`, where the exact value is not guaranteed.
    pub below_threshold: bool,
}

impl MomentEstimate {
    /// Distance from the exact value in standard errors.
    pub fn sigma_distance(&self) -> f64 {
        let dist = Complex64::new(self.mean_re - self.exact, self.mean_im).norm();
        if self.stderr > 0.0 {
            dist / self.stderr
        } else if dist == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// `prod_s s^{m_s} m_s! delta_{m_s, n_s}`.
pub fn ds_exact(spec: &[MomentTerm]) -> f64 {
    let mut merged: Vec<MomentTerm> = Vec::new();
    for t in spec {
        match merged.iter_mut().find(|u| u.s == t.s) {
            Some(u) => {
                u.m += t.m;
                u.n += t.n;
            }
            None => merged.push(*t),
        }
    }
    merged
        .iter()
        .map(
            |t| {
                if t.m != t.n {
                    0.0
                } else {
                    (t.s as f64).powi(t.m as i32) * (1..=t.m).map(f64::from).product::<f64>()
                }
            },
        )
        .product()
}

pub fn ds_threshold(spec: &[MomentTerm]) -> usize {
    spec.iter().map(|t| t.s * t.m.max(t.n) as usize).sum()
}

/// Monte Carlo estimate of `E[prod_s Tr(u^s)^{m_s} conj(Tr(u^s))^{n_s}]` over Haar `U(d)`.
pub fn ds_moment(d: usize, spec: &[MomentTerm], samples: usize, seed: u64) -> Result<MomentEstimate> {
    if d == 0 || samples == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and at least one sample".into()));
    }
    if spec.iter().any(|t| t.s == 0) {
        return Err(Error::InvalidArgument("trace powers start at s = 1".into()));
    }
    let max_s = spec.iter().map(|t| t.s).max().unwrap_or(1).max(1);
    let values: Vec<Vec<Complex64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let tr = power_traces(&haar_unitary(d, &mut rng), max_s);
            let v = spec.iter().fold(Complex64::new(1.0, 0.0), |acc, t| {
                let x = tr[t.s - 1];
                acc * x.powu(t.m) * x.conj().powu(t.n)
            });
            vec![v]
        })
        .collect();
    let (mean, stderr) = mean_stderr(&values);
    Ok(MomentEstimate {
        mean_re: mean[0].re,
        mean_im: mean[0].im,
        stderr: stderr[0],
        exact: ds_exact(spec),
        samples,
        seed,
        d,
        below_threshold: d < ds_threshold(spec),
    })
}

/// `c^r_ij = dim V_ij[r] - dim L_ij[r]` as floats, indexed `[r][i][j]`.
fn exponent_table(datum: &VLDatum, order: usize) -> Result<Vec<Vec<Vec<f64>>>> {
    let diff = datum.h_v(order).sub(&datum.h_l(order))?;
    let n = datum.dim_i();
    Ok((0..=order)
        .map(|r| {
            (0..n).map(|i| (0..n).map(|j| diff.get(i, j).coeff(r).to_f64().unwrap_or(f64::NAN)).collect()).collect()
        })
        .collect())
}

/// `exp(sum_{i,j,r,k} c^r_ij conj(Tr g_i^k) Tr g_j^k t^{rk} / k)` from power traces.
fn integrand_from_traces(c: &[Vec<Vec<f64>>], traces: &[Vec<Complex64>], order: usize) -> Result<ComplexSeries> {
    let mut log = vec![Complex64::zero(); order + 1];
    for (r, block) in c.iter().enumerate().skip(1) {
        for (i, row) in block.iter().enumerate() {
            for (j, &cij) in row.iter().enumerate() {
                if cij == 0.0 {
                    continue;
                }
                for k in 1..=order / r {
                    log[r * k] += traces[i][k - 1].conj() * traces[j][k - 1] * (cij / k as f64);
                }
            }
        }
    }
    ComplexSeries::new(log).exp()
}

/// The integrand `prod 1/det(1 - t^r g_i^v (x) g_j)^{c^r_ij}` at one tuple of unitaries.
pub fn integrand_series(datum: &VLDatum, g: &[DMatrix<Complex64>], order: usize) -> Result<ComplexSeries> {
    if g.len() != datum.dim_i() {
        return Err(Error::ShapeMismatch { left: g.len(), right: datum.dim_i() });
    }
    let c = exponent_table(datum, order)?;
    let traces: Vec<Vec<Complex64>> = g.iter().map(|u| power_traces(u, order)).collect();
    integrand_from_traces(&c, &traces, order)
}

#[derive(Clone, Debug, Serialize)]
pub struct MCEstimate {
    pub order: usize,
    pub mean: Vec<f64>,
    pub mean_im: Vec<f64>,
    pub stderr: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub over_lambda: bool,
}

impl MCEstimate {
    /// Coefficientwise agreement within `sigmas` standard errors plus an absolute floor.
    pub fn within(&self, target: &[f64], sigmas: f64, floor: f64) -> Vec<bool> {
        self.mean.iter().zip(&self.stderr).zip(target).map(|((m, s), t)| (m - t).abs() <= sigmas * s + floor).collect()
    }

    pub fn sigma_distances(&self, target: &[f64]) -> Vec<f64> {
        self.mean
            .iter()
            .zip(&self.stderr)
            .zip(target)
            .map(|((m, s), t)| {
                let d = (m - t).abs();
                if *s > 0.0 {
                    d / s
                } else if d < 1e-12 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .collect()
    }
}

/// Averages the integrand over Haar samples in `U(d_1) x ... x U(d_n)`, optionally
/// divided by `lambda(L°)` sample by sample.
pub fn mc_matrix_integral(
    datum: &VLDatum,
    dims: &[usize],
    order: usize,
    samples: usize,
    seed: u64,
    over_lambda: bool,
) -> Result<MCEstimate> {
    if dims.len() != datum.dim_i() {
        return Err(Error::ShapeMismatch { left: dims.len(), right: datum.dim_i() });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is needed".into()));
    }
    let c = exponent_table(datum, order)?;
    let inv_lambda = if over_lambda { Some(ComplexSeries::from_exact(&datum.lambda_poly(order).inv()?)) } else { None };
    let values: Vec<Vec<Complex64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let traces: Vec<Vec<Complex64>> =
                dims.iter().map(|&d| power_traces(&haar_unitary(d, &mut rng), order)).collect();
            let mut s = integrand_from_traces(&c, &traces, order)?;
            if let Some(l) = &inv_lambda {
                s = s.mul(l);
            }
            Ok(s.coeffs)
        })
        .collect::<Result<_>>()?;
    let (mean, stderr) = mean_stderr(&values);
    Ok(MCEstimate {
        order,
        mean: mean.iter().map(|m| m.re).collect(),
        mean_im: mean.iter().map(|m| m.im).collect(),
        stderr,
        samples,
        seed,
        dims: dims.to_vec(),
        over_lambda,
    })
}
