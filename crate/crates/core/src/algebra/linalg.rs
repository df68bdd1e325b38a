//! Sparse exact row echelon over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseVec = BTreeMap<usize, BigRational>;

/// Incrementally built echelon basis. Each stored row has leading
/// coefficient 1 at its pivot, the smallest column it touches.
#[derive(Default, Debug)]
pub struct Echelon {
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; returns the residue (empty when `v` is dependent).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut floor = 0;
        loop {
            let Some((&col, _)) = v.range(floor..).find(|(c, _)| self.pivots.contains_key(c)) else {
                return v;
            };
            let factor = v.remove(&col).expect("present");
            let row = &self.pivots[&col];
            for (&c, x) in row.iter().skip(1) {
                let entry = v.entry(c).or_insert_with(BigRational::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    v.remove(&c);
                }
            }
            floor = col + 1;
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&lead, lead_val)) = v.iter().next() else {
            return false;
        };
        let v = if lead_val.is_one() {
            v
        } else {
            let inv = lead_val.recip();
            v.into_iter().map(|(c, x)| (c, x * &inv)).collect()
        };
        self.pivots.insert(lead, v);
        true
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
