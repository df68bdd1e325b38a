//! Path algebras of quivers, explicit homogeneous relations, and the
//! rank-based oracle for graded dimensions of their quotients.

pub mod linalg;
mod oracle;

pub use oracle::{
    anick_defect, brute_algebra_dims, brute_algebra_matrix, brute_cyclic_dims, commutator_subspace, compute_l_circ,
    compute_l_circ_by_intersection, enumerate_paths, CommutatorSubspace, PathTable, DEFAULT_PATH_CAP,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::series::{MatSeries, TruncSeries};

/// A composable sequence of edges, listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub edges: Vec<usize>,
    pub tail: usize,
    pub head: usize,
    pub weight: usize,
}

impl Path {
    pub fn empty(vertex: usize) -> Self {
        Self { edges: Vec::new(), tail: vertex, head: vertex, weight: 0 }
    }

    pub fn from_edges(q: &Quiver, edges: Vec<usize>) -> Result<Self> {
        let Some(&first) = edges.first() else {
            return Err(Error::InvalidPresentation("empty edge list needs a vertex".into()));
        };
        let es = q.edges();
        if edges.iter().any(|&e| e >= es.len()) {
            return Err(Error::InvalidPresentation("edge index out of range".into()));
        }
        for w in edges.windows(2) {
            if es[w[0]].head != es[w[1]].tail {
                return Err(Error::InvalidPresentation(format!(
                    "edges {} and {} do not compose",
                    es[w[0]].name, es[w[1]].name
                )));
            }
        }
        let weight = edges.iter().map(|&e| es[e].degree).sum();
        let head = es[*edges.last().unwrap()].head;
        Ok(Self { tail: es[first].tail, head, weight, edges })
    }

    pub fn is_closed(&self) -> bool {
        self.tail == self.head
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        PathDisplay { path: self, quiver: q }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.edges.is_empty() {
            return write!(f, "e{}", self.quiver.vertices()[self.path.tail]);
        }
        let names: Vec<&str> = self.path.edges.iter().map(|&e| self.quiver.edges()[e].name.as_str()).collect();
        write!(f, "{}", names.join("."))
    }
}

/// Homogeneous linear combination of paths sharing tail, head and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    tail: usize,
    head: usize,
    weight: usize,
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl NCPoly {
    /// Builds a polynomial, merging repeated paths and dropping zero terms.
    /// Fails on inhomogeneous input or when everything cancels.
    pub fn new(q: &Quiver, terms: Vec<(BigRational, Vec<usize>)>) -> Result<Self> {
        let mut shape: Option<(usize, usize, usize)> = None;
        let mut merged: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for (c, edges) in terms {
            let p = Path::from_edges(q, edges)?;
            let key = (p.tail, p.head, p.weight);
            match shape {
                None => shape = Some(key),
                Some(s) if s != key => {
                    return Err(Error::InvalidPresentation("relation is not homogeneous".into()));
                }
                _ => {}
            }
            *merged.entry(p.edges).or_insert_with(BigRational::zero) += c;
        }
        merged.retain(|_, c| !c.is_zero());
        let Some((tail, head, weight)) = shape.filter(|_| !merged.is_empty()) else {
            return Err(Error::InvalidPresentation("relation is zero".into()));
        };
        Ok(Self { tail, head, weight, terms: merged })
    }

    pub fn from_ints(q: &Quiver, terms: &[(i64, &[usize])]) -> Result<Self> {
        Self::new(q, terms.iter().map(|(c, p)| (BigRational::from_integer(BigInt::from(*c)), p.to_vec())).collect())
    }

    pub fn monomial(p: &Path) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p.edges.clone(), BigRational::one());
        Self { tail: p.tail, head: p.head, weight: p.weight, terms }
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `p · self · q` as raw (edge sequence, coefficient) pairs.
    pub fn sandwich<'a>(
        &'a self,
        p: &'a [usize],
        q: &'a [usize],
    ) -> impl Iterator<Item = (Vec<usize>, &'a BigRational)> + 'a {
        self.terms.iter().map(move |(w, c)| {
            let mut edges = Vec::with_capacity(p.len() + w.len() + q.len());
            edges.extend_from_slice(p);
            edges.extend_from_slice(w);
            edges.extend_from_slice(q);
            (edges, c)
        })
    }
}

/// Quiver whose edges are the generators, plus homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<NCPoly>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<NCPoly>) -> Result<Self> {
        if let Some(r) = relations.iter().find(|r| r.weight == 0) {
            return Err(Error::InvalidPresentation(format!("relation of weight 0 at vertex {}", r.tail)));
        }
        Ok(Self { quiver, relations })
    }

    pub fn free(quiver: Quiver) -> Self {
        Self { quiver, relations: Vec::new() }
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    /// `h(V)` of the generators.
    pub fn generator_series(&self, order: usize) -> MatSeries {
        self.quiver.edge_series(order)
    }

    /// `h(L)` of the span of the relations, after reducing to a basis in each
    /// `(tail, head, weight)` block.
    pub fn relation_series(&self, order: usize) -> MatSeries {
        let n = self.num_vertices();
        let mut blocks: BTreeMap<(usize, usize, usize), Vec<&NCPoly>> = BTreeMap::new();
        for r in &self.relations {
            if r.weight <= order {
                blocks.entry((r.tail, r.head, r.weight)).or_default().push(r);
            }
        }
        let mut counts = vec![vec![vec![0i64; order + 1]; n]; n];
        for ((i, j, w), rels) in blocks {
            let mut index = BTreeMap::new();
            let vectors: Vec<linalg::SparseVec> = rels
                .iter()
                .map(|r| {
                    r.terms()
                        .map(|(p, c)| {
                            let next = index.len();
                            (*index.entry(p.clone()).or_insert(next), c.clone())
                        })
                        .collect()
                })
                .collect();
            counts[i][j][w] += linalg::rank(vectors) as i64;
        }
        MatSeries::from_fn(n, order, |i, j| TruncSeries::from_i64s(&counts[i][j], order))
    }

    /// Preprojective relations of `base`: at each vertex `i` not skipped,
    /// `sum_{tail(a)=i} a a* - sum_{head(a)=i} a* a` in the double.
    pub fn preprojective(base: &Quiver, skip: &[bool]) -> Result<Self> {
        assert_eq!(skip.len(), base.num_vertices());
        let doubled = base.double();
        let q = doubled.quiver().clone();
        let mut relations = Vec::new();
        for (i, _) in skip.iter().enumerate().filter(|(_, s)| !**s) {
            let mut terms = Vec::new();
            for (a, e) in base.edges().iter().enumerate() {
                let s = doubled.star(a);
                if e.tail == i {
                    terms.push((BigRational::one(), vec![a, s]));
                }
                if e.head == i {
                    terms.push((-BigRational::one(), vec![s, a]));
                }
            }
            if !terms.is_empty() {
                relations.push(NCPoly::new(&q, terms)?);
            }
        }
        Self::new(q, relations)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "rational_str")]
    coeff: BigRational,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    quiver: Quiver,
    #[serde(default)]
    relations: Vec<Vec<TermJson>>,
}

mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            Raw::S(s) => {
                s.trim().parse::<BigRational>().map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}")))
            }
        }
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names = self.quiver.edges();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                r.terms()
                    .map(|(p, c)| TermJson {
                        coeff: c.clone(),
                        path: p.iter().map(|&e| names[e].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect();
        PresentationJson { quiver: self.quiver.clone(), relations }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PresentationJson::deserialize(d)?;
        let build = || -> Result<Presentation> {
            let names = raw.quiver.edge_names();
            let mut relations = Vec::with_capacity(raw.relations.len());
            for rel in &raw.relations {
                let mut terms = Vec::with_capacity(rel.len());
                for t in rel {
                    let edges = t
                        .path
                        .iter()
                        .map(|n| {
                            names
                                .get(n.as_str())
                                .copied()
                                .ok_or_else(|| Error::InvalidPresentation(format!("unknown edge {n:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    terms.push((t.coeff.clone(), edges));
                }
                relations.push(NCPoly::new(&raw.quiver, terms)?);
            }
            Presentation::new(raw.quiver.clone(), relations)
        };
        build().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::shapes;

    #[test]
    fn path_composition_is_checked() {
        let d = shapes::dynkin_a(2).double();
        let q = d.quiver();
        let p = Path::from_edges(q, vec![0, 1]).unwrap();
        assert_eq!((p.tail, p.head, p.weight), (0, 0, 2));
        assert!(Path::from_edges(q, vec![0, 0]).is_err());
        assert_eq!(p.display(q).to_string(), "a0.a0*");
    }

    #[test]
    fn ncpoly_merges_and_rejects() {
        let q = shapes::loops(2);
        let x: &[usize] = &[0, 1];
        let p = NCPoly::from_ints(&q, &[(1, x), (2, x), (-1, &[1, 0])]).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert!(NCPoly::from_ints(&q, &[(1, x), (-1, x)]).is_err());
        assert!(NCPoly::from_ints(&q, &[(1, x), (1, &[0])]).is_err());
    }

    #[test]
    fn preprojective_relations_of_a2() {
        let base = shapes::dynkin_a(2);
        let p = Presentation::preprojective(&base, &[false, false]).unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[0].terms().next().unwrap().0, &vec![0, 1]);
        assert_eq!(p.relations[1].terms().next().unwrap().1, &-BigRational::one());
        let partial = Presentation::preprojective(&base, &[true, false]).unwrap();
        assert_eq!(partial.relations.len(), 1);
    }

    #[test]
    fn relation_series_reduces_to_a_basis() {
        let q = shapes::loops(2);
        let r = NCPoly::from_ints(&q, &[(1, &[0, 1]), (-1, &[1, 0])]).unwrap();
        let p = Presentation::new(q, vec![r.clone(), r]).unwrap();
        assert_eq!(p.relation_series(3).get(0, 0), &TruncSeries::from_i64s(&[0, 0, 1], 3));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"quiver":{"vertices":["v"],"edges":[{"tail":"v","head":"v","name":"a"},{"tail":"v","head":"v","name":"a*"}]},
            "relations":[[{"coeff":"1","path":["a","a*"]},{"coeff":"-1","path":["a*","a"]}]]}"#;
        let p: Presentation = serde_json::from_str(text).unwrap();
        assert_eq!(p.relations[0].num_terms(), 2);
        let back: Presentation = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let bad = text.replace("\"a*\",\"a\"", "\"b\",\"a\"");
        assert!(serde_json::from_str::<Presentation>(&bad).is_err());
    }
}
