//! Quivers with graded edges, doubling, adjacency and ADE classification.

mod classify;
pub mod shapes;

pub use classify::{classify, Classification, ShapeType};

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::{MatSeries, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub degree: usize,
    pub name: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Quiver {
    /// Quiver on vertices labelled `"0"..n-1` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        Self { vertices: (0..n).map(|i| i.to_string()).collect(), edges: Vec::new() }
    }

    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut names = std::collections::HashSet::new();
        for e in &edges {
            if e.tail >= vertices.len() || e.head >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("edge {} references a missing vertex", e.name)));
            }
            if e.degree == 0 {
                return Err(Error::InvalidQuiver(format!("edge {} has degree 0", e.name)));
            }
            if !names.insert(e.name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate edge name {:?}", e.name)));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Adds an edge named `a{index}` and returns its index.
    pub fn add_edge(&mut self, tail: usize, head: usize, degree: usize) -> usize {
        let name = format!("a{}", self.edges.len());
        self.add_named_edge(tail, head, degree, name)
    }

    pub fn add_named_edge(&mut self, tail: usize, head: usize, degree: usize, name: impl Into<String>) -> usize {
        assert!(tail < self.vertices.len() && head < self.vertices.len(), "edge endpoint out of range");
        assert!(degree >= 1, "edge degree must be positive");
        self.edges.push(Edge { tail, head, degree, name: name.into() });
        self.edges.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn edge_names(&self) -> HashMap<&str, usize> {
        self.edges.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect()
    }

    pub fn all_degree_one(&self) -> bool {
        self.edges.iter().all(|e| e.degree == 1)
    }

    /// Connectivity of the underlying undirected graph. The empty quiver is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut nbrs = vec![Vec::new(); n];
        for e in &self.edges {
            nbrs[e.tail].push(e.head);
            nbrs[e.head].push(e.tail);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Counts of edges `i -> j`.
    pub fn adjacency(&self) -> AdjacencyMatrix {
        let n = self.vertices.len();
        let mut c = vec![vec![0i64; n]; n];
        for e in &self.edges {
            c[e.tail][e.head] += 1;
        }
        AdjacencyMatrix { entries: c }
    }

    /// `h(V)`: entry `(i, j)` is `sum t^deg(a)` over edges `a: i -> j`.
    pub fn edge_series(&self, order: usize) -> MatSeries {
        let n = self.vertices.len();
        let mut counts = vec![vec![vec![0i64; order + 1]; n]; n];
        for e in &self.edges {
            if e.degree <= order {
                counts[e.tail][e.head][e.degree] += 1;
            }
        }
        MatSeries::from_fn(n, order, |i, j| TruncSeries::from_i64s(&counts[i][j], order))
    }

    /// Same quiver with vertices relabelled by `perm` (old index `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vertices.len());
        let mut vertices = vec![String::new(); perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        let edges = self.edges.iter().map(|e| Edge { tail: perm[e.tail], head: perm[e.head], ..e.clone() }).collect();
        Self { vertices, edges }
    }

    pub fn double(&self) -> DoubledQuiver {
        let mut quiver = self.clone();
        let mut star = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            star.push(quiver.add_named_edge(e.head, e.tail, e.degree, format!("{}*", e.name)));
        }
        DoubledQuiver { base: self.clone(), quiver, star }
    }
}

/// The double `Q̄`: edges of the base followed by their reversals `a*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    base: Quiver,
    quiver: Quiver,
    star: Vec<usize>,
}

impl DoubledQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Index in the doubled quiver of `a*` for base edge `a`.
    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        self.quiver.adjacency()
    }
}

/// Integer matrix `c_ij` counting edges `i -> j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdjacencyMatrix {
    entries: Vec<Vec<i64>>,
}

impl AdjacencyMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("adjacency matrix must be square".into()));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// `1 - t c + t^2 1`, the t-analogue of the Cartan matrix.
pub fn cartan_matrix_series(c: &AdjacencyMatrix, order: usize) -> MatSeries {
    let ones: Vec<bool> = vec![true; c.dim()];
    cartan_matrix_series_on(c, &ones, order)
}

/// `1 - t c + t^2 1_S` where `S` is given by the mask.
pub fn cartan_matrix_series_on(c: &AdjacencyMatrix, mask: &[bool], order: usize) -> MatSeries {
    let n = c.dim();
    assert_eq!(mask.len(), n);
    MatSeries::from_fn(n, order, |i, j| {
        let mut s = TruncSeries::monomial(1, BigInt::from(-c.get(i, j)), order);
        if i == j {
            s.set_coeff(0, BigInt::from(1));
            if mask[i] {
                s.set_coeff(2, BigInt::from(1));
            }
        }
        s
    })
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    tail: String,
    head: String,
    #[serde(default = "one")]
    degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

fn one() -> usize {
    1
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

impl QuiverJson {
    fn into_quiver(self) -> Result<Quiver> {
        let index: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let lookup =
            |v: &str| index.get(v).copied().ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {v:?}")));
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            edges.push(Edge {
                tail: lookup(&e.tail)?,
                head: lookup(&e.head)?,
                degree: e.degree,
                name: e.name.clone().unwrap_or_else(|| format!("a{k}")),
            });
        }
        Quiver::new(self.vertices, edges)
    }
}

impl Serialize for Quiver {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                tail: self.vertices[e.tail].clone(),
                head: self.vertices[e.head].clone(),
                degree: e.degree,
                name: Some(e.name.clone()),
            })
            .collect();
        QuiverJson { vertices: self.vertices.clone(), edges }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        QuiverJson::deserialize(d)?.into_quiver().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_one_loop() {
        let q = shapes::loops(1);
        let d = q.double();
        assert_eq!(d.quiver().edges().len(), 2);
        assert_eq!(d.adjacency().rows(), &[vec![2]]);
        assert_eq!(d.quiver().edges()[1].name, "a0*");
    }

    #[test]
    fn doubling_a2() {
        let d = shapes::dynkin_a(2).double();
        assert_eq!(d.adjacency().rows(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(d.star(0), 1);
    }

    #[test]
    fn doubling_g_loops() {
        for g in 1..5 {
            assert_eq!(shapes::loops(g).double().adjacency().rows(), &[vec![2 * g as i64]]);
        }
    }

    #[test]
    fn cartan_examples() {
        let c = AdjacencyMatrix::new(vec![vec![2]]).unwrap();
        assert_eq!(cartan_matrix_series(&c, 3).get(0, 0), &TruncSeries::from_i64s(&[1, -2, 1], 3));
        let c = AdjacencyMatrix::new(vec![vec![4]]).unwrap();
        assert_eq!(cartan_matrix_series(&c, 3).get(0, 0), &TruncSeries::from_i64s(&[1, -4, 1], 3));
        let c = AdjacencyMatrix::new(vec![vec![0, 2], vec![2, 0]]).unwrap();
        let p = cartan_matrix_series(&c, 3);
        assert_eq!(p.get(0, 0), &TruncSeries::from_i64s(&[1, 0, 1], 3));
        assert_eq!(p.get(0, 1), &TruncSeries::from_i64s(&[0, -2], 3));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["0","1"],"edges":[{"tail":"0","head":"1","degree":1}]}"#;
        let q: Quiver = serde_json::from_str(text).unwrap();
        assert_eq!(q.edges()[0].name, "a0");
        let back: Quiver = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn json_rejects_bad_edges() {
        let missing = r#"{"vertices":["0"],"edges":[{"tail":"0","head":"1"}]}"#;
        assert!(serde_json::from_str::<Quiver>(missing).is_err());
        let zero = r#"{"vertices":["0"],"edges":[{"tail":"0","head":"0","degree":0}]}"#;
        assert!(serde_json::from_str::<Quiver>(zero).is_err());
    }

    #[test]
    fn edge_series_respects_degrees() {
        let mut q = Quiver::with_vertices(1);
        q.add_edge(0, 0, 1);
        q.add_edge(0, 0, 2);
        assert_eq!(q.edge_series(3).get(0, 0), &TruncSeries::from_i64s(&[0, 1, 1], 3));
    }

    #[test]
    fn connectivity() {
        assert!(shapes::dynkin_a(4).is_connected());
        assert!(!Quiver::with_vertices(2).is_connected());
    }
}
