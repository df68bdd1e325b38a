use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::quiver::AdjacencyMatrix;

pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// Matrix Chebyshev polynomials of an adjacency matrix.
///
/// `kind2[k]` is the coefficient of `t^k` in `(1 - t c + t^2)^{-1}`;
/// `kind1[k] = kind2[k] - kind2[k-2]` for `k >= 2`, with `kind1[0] = 1`
/// and `kind1[1] = c`, so that `kind1[k](2 cos z) = 2 cos(k z)` for `k >= 1`.
#[derive(Clone, Debug)]
pub struct ChebyshevTable {
    pub kind1: Vec<IntMatrix>,
    pub kind2: Vec<IntMatrix>,
}

impl ChebyshevTable {
    pub fn new(c: &AdjacencyMatrix, max_k: usize) -> Self {
        let n = c.dim();
        let cm: IntMatrix = c.rows().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut kind2 = vec![identity(n)];
        if max_k >= 1 {
            kind2.push(cm.clone());
        }
        for k in 2..=max_k {
            let next = sub(&mul(&cm, &kind2[k - 1]), &kind2[k - 2]);
            kind2.push(next);
        }
        let kind1 = (0..=max_k)
            .map(|k| match k {
                0 => identity(n),
                1 => cm.clone(),
                _ => sub(&kind2[k], &kind2[k - 2]),
            })
            .collect();
        Self { kind1, kind2 }
    }

    pub fn max_k(&self) -> usize {
        self.kind2.len() - 1
    }

    /// `<w, phi_k(c) w> = sum_ij phi_k(c)_ij w_i w_j` for the second kind.
    pub fn pairing(&self, k: usize, w: &[i64]) -> BigInt {
        let m = &self.kind2[k];
        let mut acc = BigInt::zero();
        for (i, wi) in w.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                acc += &m[i][j] * wi * wj;
            }
        }
        acc
    }
}

/// Scalar Chebyshev values at a real point: `(kind1, kind2)` up to `max_k`.
pub fn scalar_chebyshev(x: f64, max_k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut kind2 = vec![1.0, x];
    for k in 2..=max_k {
        kind2.push(x * kind2[k - 1] - kind2[k - 2]);
    }
    kind2.truncate(max_k + 1);
    let kind1 = (0..=max_k)
        .map(|k| match k {
            0 => 1.0,
            1 => x,
            _ => kind2[k] - kind2[k - 2],
        })
        .collect();
    (kind1, kind2)
}
