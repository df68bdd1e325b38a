use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::affine::{affine_shape, IdentityReport};
use super::chebyshev::ChebyshevTable;
use crate::error::{Error, Result};
use crate::quiver::ShapeType;
use crate::series::TruncSeries;

type Mat2 = [[Complex64; 2]; 2];

const CLOSURE_TOL: f64 = 1e-8;
const ROUND_TOL: f64 = 1e-10;
const MAX_ORDER: usize = 240;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z/n` acting by `diag(zeta, zeta^{-1})`.
    Cyclic(usize),
    /// Binary dihedral group of order `4m`.
    BinaryDihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

/// A finite subgroup of `SL_2(C)` with its full element list.
#[derive(Clone, Debug)]
pub struct FiniteSubgroupSL2 {
    kind: GroupKind,
    elements: Vec<Mat2>,
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn close(a: &Mat2, b: &Mat2) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() < CLOSURE_TOL))
}

fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn diag(z: Complex64) -> Mat2 {
    [[z, Complex64::zero()], [Complex64::zero(), z.conj()]]
}

/// Unit quaternion `a + bi + cj + dk` as an element of `SU(2)`.
fn quaternion(a: f64, b: f64, c: f64, d: f64) -> Mat2 {
    [[Complex64::new(a, b), Complex64::new(c, d)], [Complex64::new(-c, d), Complex64::new(a, -b)]]
}

fn closure(gens: &[Mat2]) -> Result<Vec<Mat2>> {
    let id = diag(Complex64::new(1.0, 0.0));
    let mut elems = vec![id];
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g);
            if !elems.iter().any(|e| close(e, &y)) {
                if elems.len() >= MAX_ORDER {
                    return Err(Error::InvalidGroup(format!("generators span more than {MAX_ORDER} elements")));
                }
                elems.push(y);
                frontier.push(y);
            }
        }
    }
    Ok(elems)
}

impl FiniteSubgroupSL2 {
    pub fn new(kind: GroupKind) -> Result<Self> {
        let unit = |theta: f64| Complex64::from_polar(1.0, theta);
        let tau = std::f64::consts::TAU;
        let (gens, expected) = match kind {
            GroupKind::Cyclic(n) if n >= 1 => (vec![diag(unit(tau / n as f64))], n),
            GroupKind::BinaryDihedral(m) if m >= 2 => {
                (vec![diag(unit(tau / (2 * m) as f64)), quaternion(0.0, 0.0, 1.0, 0.0)], 4 * m)
            }
            GroupKind::Tetrahedral => (
                vec![quaternion(0.0, 1.0, 0.0, 0.0), quaternion(0.0, 0.0, 1.0, 0.0), quaternion(0.5, 0.5, 0.5, 0.5)],
                24,
            ),
            GroupKind::Octahedral => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                (vec![quaternion(0.5, 0.5, 0.5, 0.5), quaternion(r, r, 0.0, 0.0)], 48)
            }
            GroupKind::Icosahedral => {
                let phi = (1.0 + 5f64.sqrt()) / 2.0;
                (vec![quaternion(0.5, 0.5, 0.5, 0.5), quaternion(phi / 2.0, 0.5 / phi, 0.5, 0.0)], 120)
            }
            other => return Err(Error::InvalidGroup(format!("{other:?} is not a valid group"))),
        };
        let elements = closure(&gens)?;
        if elements.len() != expected {
            return Err(Error::InvalidGroup(format!(
                "{kind:?}: closure has {} elements, expected {expected}",
                elements.len()
            )));
        }
        let g = Self { kind, elements };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        for a in &self.elements {
            if (det(a) - Complex64::new(1.0, 0.0)).norm() > CLOSURE_TOL {
                return Err(Error::InvalidGroup("element with determinant != 1".into()));
            }
            for b in &self.elements {
                let ab = mul(a, b);
                if !self.elements.iter().any(|e| close(e, &ab)) {
                    return Err(Error::InvalidGroup("element list is not closed under product".into()));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Affine diagram attached by the McKay correspondence.
    pub fn mckay_shape(&self) -> ShapeType {
        match self.kind {
            GroupKind::Cyclic(n) => ShapeType::A(n - 1),
            GroupKind::BinaryDihedral(m) => ShapeType::D(m + 2),
            GroupKind::Tetrahedral => ShapeType::E(6),
            GroupKind::Octahedral => ShapeType::E(7),
            GroupKind::Icosahedral => ShapeType::E(8),
        }
    }
}

/// `x^n - 1 = prod_{d | n} Phi_d`, so `Phi_n` is `x^n - 1` divided by the smaller ones.
fn cyclotomic(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::from(1);
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        p = divide_exact(&p, &cyclotomic(d));
    }
    p
}

fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let mut quo = vec![BigInt::zero(); rem.len() - dl];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + dl] / &den[dl];
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// Remainder modulo a monic polynomial.
fn reduce(mut p: Vec<BigInt>, m: &[BigInt]) -> Vec<BigInt> {
    let ml = m.len() - 1;
    while p.len() > ml {
        let c = p.pop().unwrap();
        let k = p.len() - ml;
        for (i, d) in m[..ml].iter().enumerate() {
            p[k + i] -= &c * d;
        }
    }
    p
}

/// Exact Molien series of `Z/n`: the sum of `zeta^e` over the group is computed in
/// `Z[x]/Phi_n`, where it reduces to an integer.
fn cyclic_molien(n: usize, order: usize) -> Result<TruncSeries> {
    let phi = cyclotomic(n);
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut poly = vec![BigInt::zero(); n];
        for j in 0..n {
            for i in 0..=k {
                let e = (j as i64 * (2 * i as i64 - k as i64)).rem_euclid(n as i64) as usize;
                poly[e] += 1;
            }
        }
        let r = reduce(poly, &phi);
        if r.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::InvalidGroup(format!("Molien coefficient {k} is not rational")));
        }
        let total = r.first().cloned().unwrap_or_default();
        let (q, rem) = total.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::InvalidGroup(format!("Molien coefficient {k} is not an integer")));
        }
        coeffs.push(q);
    }
    Ok(TruncSeries::new(coeffs))
}

/// `(1/|G|) sum_g 1/det(1 - t g)`, using `h_k = tr(g) h_{k-1} - h_{k-2}` for the
/// expansion of each term.
fn numeric_molien(g: &FiniteSubgroupSL2, order: usize) -> Result<TruncSeries> {
    let mut sums = vec![0.0f64; order + 1];
    for e in &g.elements {
        let tr = (e[0][0] + e[1][1]).re;
        let (mut prev, mut cur) = (0.0, 1.0);
        sums[0] += 1.0;
        for s in sums.iter_mut().skip(1) {
            let next = tr * cur - prev;
            prev = cur;
            cur = next;
            *s += cur;
        }
    }
    let n = g.order() as f64;
    let coeffs = sums
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let v = s / n;
            let r = v.round();
            if (v - r).abs() > ROUND_TOL * (k as f64 + 1.0) {
                return Err(Error::InvalidGroup(format!("Molien coefficient {k} = {v} is not an integer")));
            }
            Ok(BigInt::from(r.to_i64().expect("small coefficient")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncSeries::new(coeffs))
}

/// Hilbert series of the invariants of `G` on polynomial functions on `C^2`.
pub fn molien_series(g: &FiniteSubgroupSL2, order: usize) -> Result<TruncSeries> {
    match g.kind {
        GroupKind::Cyclic(n) => cyclic_molien(n, order),
        _ => numeric_molien(g, order),
    }
}

/// Molien series against `sum_k phi_k(c)_oo t^k` for the McKay diagram.
pub fn molien_check(g: &FiniteSubgroupSL2, order: usize) -> Result<IdentityReport> {
    let shape = g.mckay_shape();
    let (q, o) = affine_shape(shape)?;
    let table = ChebyshevTable::new(&q.double().adjacency(), order);
    let rhs = TruncSeries::new((0..=order).map(|k| table.kind2[k][o][o].clone()).collect());
    let lhs = molien_series(g, order)?;
    Ok(IdentityReport::compare("molien", Some(format!("{:?} ~{shape}", g.kind)), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |v: Vec<BigInt>| v.into_iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(ints(cyclotomic(1)), vec![-1, 1]);
        assert_eq!(ints(cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(ints(cyclotomic(6)), vec![1, -1, 1]);
    }

    #[test]
    fn z2_by_hand() {
        let g = FiniteSubgroupSL2::new(GroupKind::Cyclic(2)).unwrap();
        let m = molien_series(&g, 8).unwrap();
        assert_eq!(m.to_i64s().unwrap(), vec![1, 0, 3, 0, 5, 0, 7, 0, 9]);
        assert!(molien_check(&g, 8).unwrap().equal);
    }

    #[test]
    fn cyclic_family() {
        for n in 1..=6 {
            let g = FiniteSubgroupSL2::new(GroupKind::Cyclic(n)).unwrap();
            assert_eq!(g.order(), n);
            let rep = molien_check(&g, 24).unwrap();
            assert!(rep.equal, "Z/{n}: {:?}", rep.first_diff);
            // numeric path agrees with the exact one
            assert_eq!(numeric_molien(&g, 24).unwrap(), rep.lhs);
        }
    }

    #[test]
    fn binary_polyhedral_groups() {
        let kinds = [
            GroupKind::BinaryDihedral(2),
            GroupKind::BinaryDihedral(4),
            GroupKind::Tetrahedral,
            GroupKind::Octahedral,
            GroupKind::Icosahedral,
        ];
        for kind in kinds {
            let g = FiniteSubgroupSL2::new(kind).unwrap();
            let rep = molien_check(&g, 30).unwrap();
            assert!(rep.equal, "{kind:?}: {:?}", rep.first_diff);
        }
        let ico = FiniteSubgroupSL2::new(GroupKind::Icosahedral).unwrap();
        // Klein: invariants in degrees 12, 20, 30
        let m = molien_series(&ico, 30).unwrap();
        let nonzero: Vec<usize> = (0..=30).filter(|&k| !m.coeff(k).is_zero()).collect();
        assert_eq!(nonzero, vec![0, 12, 20, 24, 30]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FiniteSubgroupSL2::new(GroupKind::Cyclic(0)).is_err());
        assert!(FiniteSubgroupSL2::new(GroupKind::BinaryDihedral(1)).is_err());
    }
}
