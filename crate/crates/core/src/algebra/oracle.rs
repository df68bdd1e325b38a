use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::linalg::{Echelon, SparseVec};
use super::{NCPoly, Path, Presentation};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::series::{MatSeries, TruncSeries};

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// All paths of each weight up to some order, in lexicographic edge order.
#[derive(Debug)]
pub struct PathTable {
    by_weight: Vec<Vec<Path>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    by_tail: Vec<Vec<Vec<usize>>>,
    by_head: Vec<Vec<Vec<usize>>>,
}

impl PathTable {
    pub fn build(q: &Quiver, order: usize, cap: usize) -> Result<Self> {
        let n = q.num_vertices();
        // Paths starting at each vertex, counted before anything is allocated.
        let mut counts = vec![vec![0u128; n]; order + 1];
        counts[0] = vec![1; n];
        for r in 1..=order {
            for e in q.edges() {
                if e.degree <= r {
                    counts[r][e.tail] = counts[r][e.tail].saturating_add(counts[r - e.degree][e.head]);
                }
            }
            if counts[r].iter().fold(0u128, |a, &b| a.saturating_add(b)) > cap as u128 {
                return Err(Error::PathCap { cap, weight: r });
            }
        }

        let mut by_weight: Vec<Vec<Path>> = Vec::with_capacity(order + 1);
        let mut by_tail: Vec<Vec<Vec<usize>>> = Vec::with_capacity(order + 1);
        by_weight.push((0..n).map(Path::empty).collect());
        by_tail.push((0..n).map(|v| vec![v]).collect());
        for r in 1..=order {
            let mut paths = Vec::new();
            for (a, e) in q.edges().iter().enumerate() {
                if e.degree > r {
                    continue;
                }
                for &k in &by_tail[r - e.degree][e.head] {
                    let rest = &by_weight[r - e.degree][k];
                    let mut edges = Vec::with_capacity(rest.edges.len() + 1);
                    edges.push(a);
                    edges.extend_from_slice(&rest.edges);
                    paths.push(Path { edges, tail: e.tail, head: rest.head, weight: r });
                }
            }
            let mut tails = vec![Vec::new(); n];
            for (k, p) in paths.iter().enumerate() {
                tails[p.tail].push(k);
            }
            by_weight.push(paths);
            by_tail.push(tails);
        }
        let by_head = by_weight
            .iter()
            .map(|paths| {
                let mut heads = vec![Vec::new(); n];
                for (k, p) in paths.iter().enumerate() {
                    heads[p.head].push(k);
                }
                heads
            })
            .collect();
        let index = by_weight
            .iter()
            .map(|paths| paths.iter().enumerate().map(|(k, p)| (p.edges.clone(), k)).collect())
            .collect();
        Ok(Self { by_weight, index, by_tail, by_head })
    }

    pub fn order(&self) -> usize {
        self.by_weight.len() - 1
    }

    pub fn paths(&self, weight: usize) -> &[Path] {
        &self.by_weight[weight]
    }

    pub fn starting_at(&self, weight: usize, v: usize) -> impl Iterator<Item = &Path> {
        self.by_tail[weight][v].iter().map(move |&k| &self.by_weight[weight][k])
    }

    pub fn ending_at(&self, weight: usize, v: usize) -> impl Iterator<Item = &Path> {
        self.by_head[weight][v].iter().map(move |&k| &self.by_weight[weight][k])
    }

    pub fn column(&self, weight: usize, edges: &[usize]) -> usize {
        self.index[weight][edges]
    }

    fn count(&self, weight: usize, i: usize, j: usize) -> usize {
        self.by_tail[weight][i].iter().filter(|&&k| self.by_weight[weight][k].head == j).count()
    }
}

/// All paths of weight exactly `r`, in lexicographic edge order.
pub fn enumerate_paths(q: &Quiver, r: usize, cap: usize) -> Result<Vec<Path>> {
    let mut table = PathTable::build(q, r, cap)?;
    Ok(table.by_weight.swap_remove(r))
}

/// Lexicographically least rotation of a closed edge sequence.
fn canonical_rotation(edges: &[usize]) -> Vec<usize> {
    let n = edges.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            let ra = edges[a..].iter().chain(&edges[..a]);
            let rb = edges[b..].iter().chain(&edges[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0);
    edges[best..].iter().chain(&edges[..best]).copied().collect()
}

fn cycle_classes(table: &PathTable, r: usize) -> HashMap<Vec<usize>, usize> {
    let mut classes = HashMap::new();
    for p in table.paths(r).iter().filter(|p| p.is_closed()) {
        let next = classes.len();
        classes.entry(canonical_rotation(&p.edges)).or_insert(next);
    }
    classes
}

/// Per-entry dimensions `dim e_i A[r] e_j` of `A = F / (relations)`.
///
/// The weight-`r` part of the ideal is spanned by `p ρ q` over paths `p, q`
/// and relations `ρ`; its rank is computed block by block over the rationals.
pub fn brute_algebra_matrix(pres: &Presentation, order: usize, cap: usize) -> Result<MatSeries> {
    let q = &pres.quiver;
    let n = q.num_vertices();
    let table = PathTable::build(q, order, cap)?;
    let per_weight: Vec<Vec<Vec<i64>>> = (0..=order)
        .into_par_iter()
        .map(|r| {
            let mut blocks: Vec<Echelon> = (0..n * n).map(|_| Echelon::new()).collect();
            for rho in pres.relations.iter().filter(|rho| rho.weight() <= r) {
                let rest = r - rho.weight();
                for a in 0..=rest {
                    for p in table.ending_at(a, rho.tail()) {
                        for s in table.starting_at(rest - a, rho.head()) {
                            let v: SparseVec = rho
                                .sandwich(&p.edges, &s.edges)
                                .map(|(e, c)| (table.column(r, &e), c.clone()))
                                .collect();
                            blocks[p.tail * n + s.head].insert(v);
                        }
                    }
                }
            }
            (0..n).map(|i| (0..n).map(|j| (table.count(r, i, j) - blocks[i * n + j].rank()) as i64).collect()).collect()
        })
        .collect();
    Ok(MatSeries::from_fn(n, order, |i, j| {
        let c: Vec<i64> = per_weight.iter().map(|m| m[i][j]).collect();
        TruncSeries::from_i64s(&c, order)
    }))
}

/// Total dimensions `dim A[r]`.
pub fn brute_algebra_dims(pres: &Presentation, order: usize, cap: usize) -> Result<TruncSeries> {
    Ok(brute_algebra_matrix(pres, order, cap)?.entry_sum())
}

/// Dimensions of `(A / [A, A])[r]` for `r >= 1`; the constant term is 0.
///
/// Modulo commutators `p ρ q` is equivalent to `ρ q p`, so the image of the
/// ideal in the space of cyclic words is spanned by `ρ w` with `w` running
/// over paths from the head of `ρ` back to its tail.
pub fn brute_cyclic_dims(pres: &Presentation, order: usize, cap: usize) -> Result<TruncSeries> {
    let table = PathTable::build(&pres.quiver, order, cap)?;
    let dims: Vec<i64> = (0..=order)
        .into_par_iter()
        .map(|r| {
            if r == 0 {
                return 0;
            }
            let classes = cycle_classes(&table, r);
            let mut e = Echelon::new();
            for rho in pres.relations.iter().filter(|rho| rho.weight() <= r) {
                for w in table.ending_at(r - rho.weight(), rho.tail()).filter(|w| w.tail == rho.head()) {
                    let mut v = SparseVec::new();
                    for (edges, c) in rho.sandwich(&[], &w.edges) {
                        *v.entry(classes[&canonical_rotation(&edges)]).or_default() += c;
                    }
                    v.retain(|_, c| !num_traits::Zero::is_zero(c));
                    e.insert(v);
                }
            }
            (classes.len() - e.rank()) as i64
        })
        .collect();
    Ok(TruncSeries::from_i64s(&dims, order))
}

/// Spanning set and rank of the commutator subspace `[F, F]` in weight `r`.
///
/// Spanning vectors are indexed by position in `paths`. A difference of two
/// rotations may mix closed paths at different vertices, so they are kept as
/// plain vectors rather than [`NCPoly`].
#[derive(Clone, Debug)]
pub struct CommutatorSubspace {
    pub paths: Vec<Path>,
    pub spanning: Vec<SparseVec>,
    pub rank: usize,
    /// `dim F[r] - rank`, the number of cyclic classes of closed paths.
    pub quotient_dim: usize,
}

/// Spanned by non-closed paths and `w - rot(w)` for closed `w` and each cut.
pub fn commutator_subspace(q: &Quiver, r: usize, cap: usize) -> Result<CommutatorSubspace> {
    if r == 0 {
        return Err(Error::InvalidArgument("commutator subspace needs weight >= 1".into()));
    }
    let paths = enumerate_paths(q, r, cap)?;
    let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(k, p)| (p.edges.as_slice(), k)).collect();
    let one = BigRational::one();
    let mut spanning = Vec::new();
    for (k, p) in paths.iter().enumerate() {
        if !p.is_closed() {
            spanning.push(SparseVec::from([(k, one.clone())]));
            continue;
        }
        for cut in 1..p.len() {
            let mut rotated = p.edges[cut..].to_vec();
            rotated.extend_from_slice(&p.edges[..cut]);
            if rotated != p.edges {
                spanning.push(SparseVec::from([(k, one.clone()), (index[rotated.as_slice()], -one.clone())]));
            }
        }
    }
    let rank = super::linalg::rank(spanning.iter().cloned());
    let quotient_dim = paths.len() - rank;
    Ok(CommutatorSubspace { paths, spanning, rank, quotient_dim })
}

fn relations_of_weight(pres: &Presentation, r: usize) -> Vec<&NCPoly> {
    pres.relations.iter().filter(|rho| rho.weight() == r).collect()
}

/// `m_r = dim (span of relations)[r] ∩ [F, F][r]`, as the kernel of the
/// projection of the relation span onto cyclic words.
pub fn compute_l_circ(pres: &Presentation, order: usize) -> TruncSeries {
    let m: Vec<i64> = (0..=order)
        .map(|r| {
            let rels = relations_of_weight(pres, r);
            if rels.is_empty() {
                return 0;
            }
            let mut cols: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut classes: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut full = Echelon::new();
            let mut projected = Echelon::new();
            for rho in rels {
                let mut v = SparseVec::new();
                let mut w = SparseVec::new();
                for (edges, c) in rho.terms() {
                    let next = cols.len();
                    v.insert(*cols.entry(edges.clone()).or_insert(next), c.clone());
                    if rho.tail() == rho.head() {
                        let next = classes.len();
                        let k = *classes.entry(canonical_rotation(edges)).or_insert(next);
                        *w.entry(k).or_default() += c;
                    }
                }
                w.retain(|_, c| !num_traits::Zero::is_zero(c));
                full.insert(v);
                projected.insert(w);
            }
            (full.rank() - projected.rank()) as i64
        })
        .collect();
    TruncSeries::from_i64s(&m, order)
}

/// Same numbers as [`compute_l_circ`] via
/// `dim(U ∩ W) = rank U + rank W - rank(U + W)` with the explicit commutator span.
pub fn compute_l_circ_by_intersection(pres: &Presentation, order: usize, cap: usize) -> Result<TruncSeries> {
    let mut m = vec![0i64; order + 1];
    for (r, slot) in m.iter_mut().enumerate().skip(1) {
        let rels = relations_of_weight(pres, r);
        if rels.is_empty() {
            continue;
        }
        let comm = commutator_subspace(&pres.quiver, r, cap)?;
        let cols: HashMap<&[usize], usize> =
            comm.paths.iter().enumerate().map(|(k, p)| (p.edges.as_slice(), k)).collect();
        let rel_vecs: Vec<SparseVec> =
            rels.iter().map(|p| p.terms().map(|(e, c)| (cols[e.as_slice()], c.clone())).collect()).collect();
        let comm_vecs = comm.spanning.iter().cloned();
        let rank_u = super::linalg::rank(rel_vecs.iter().cloned());
        let rank_sum = super::linalg::rank(rel_vecs.into_iter().chain(comm_vecs));
        *slot = (rank_u + comm.rank - rank_sum) as i64;
    }
    Ok(TruncSeries::from_i64s(&m, order))
}

/// `h(A) (h(A) (1 - h(V) + h(L)) - 1)`; vanishes exactly when `h(A)` is the
/// inverse of the Cartan polynomial.
pub fn anick_defect(h_a: &MatSeries, h_v: &MatSeries, h_l: &MatSeries) -> Result<MatSeries> {
    let id = MatSeries::identity(h_a.dim(), h_a.order());
    let cartan = id.sub(h_v)?.add(h_l)?;
    h_a.mul(&h_a.mul(&cartan)?.sub(&id)?)
}
