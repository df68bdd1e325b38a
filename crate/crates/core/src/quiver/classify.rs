use std::fmt;

use serde::Serialize;

use super::{shapes, Quiver};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for ShapeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeType::A(n) => write!(f, "A{n}"),
            ShapeType::D(n) => write!(f, "D{n}"),
            ShapeType::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Dynkin(ShapeType),
    /// Affine type together with every vertex that can play the extending vertex.
    ExtendedDynkin {
        shape: ShapeType,
        extending: Vec<usize>,
    },
    Wild,
}

impl Classification {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, Classification::Dynkin(_))
    }

    pub fn is_extended_dynkin(&self) -> bool {
        matches!(self, Classification::ExtendedDynkin { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Dynkin(s) => write!(f, "Dynkin {s}"),
            Classification::ExtendedDynkin { shape, .. } => write!(f, "extended Dynkin ~{shape}"),
            Classification::Wild => write!(f, "neither Dynkin nor extended Dynkin"),
        }
    }
}

/// Undirected multigraph: `m[i][j]` edges between `i` and `j`, `m[i][i]` loops.
struct Graph {
    m: Vec<Vec<usize>>,
    nbrs: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Graph {
    fn of(q: &Quiver) -> Self {
        let n = q.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for e in q.edges() {
            m[e.tail][e.head] += 1;
            if e.tail != e.head {
                m[e.head][e.tail] += 1;
            }
        }
        let nbrs = (0..n).map(|i| (0..n).filter(|&j| j != i && m[i][j] > 0).collect()).collect();
        let degree = (0..n).map(|i| m[i].iter().sum::<usize>() + m[i][i]).collect();
        Self { m, nbrs, degree }
    }

    fn edge_count(&self) -> usize {
        let n = self.m.len();
        (0..n).map(|i| (i..n).map(|j| self.m[i][j]).sum::<usize>()).sum()
    }
}

/// Calls `found` with every isomorphism `pattern -> target` as a vertex map.
fn for_each_isomorphism(pattern: &Graph, target: &Graph, found: &mut dyn FnMut(&[usize])) {
    let n = pattern.m.len();
    if n != target.m.len() || n == 0 {
        return;
    }
    let mut p_deg = pattern.degree.clone();
    let mut t_deg = target.degree.clone();
    p_deg.sort_unstable();
    t_deg.sort_unstable();
    if p_deg != t_deg || pattern.edge_count() != target.edge_count() {
        return;
    }
    // Breadth-first order so every vertex after the first has a placed neighbour.
    let mut order = vec![0];
    let mut anchor = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        for &w in &pattern.nbrs[v] {
            if !seen[w] {
                seen[w] = true;
                anchor[w] = v;
                order.push(w);
            }
        }
        k += 1;
    }
    if order.len() != n {
        return;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(pattern, target, &order, &anchor, 0, &mut map, &mut used, found);
}

#[allow(clippy::too_many_arguments)]
fn extend(
    pattern: &Graph,
    target: &Graph,
    order: &[usize],
    anchor: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    found: &mut dyn FnMut(&[usize]),
) {
    if depth == order.len() {
        found(map);
        return;
    }
    let v = order[depth];
    let candidates: Vec<usize> =
        if depth == 0 { (0..target.m.len()).collect() } else { target.nbrs[map[anchor[v]]].clone() };
    for c in candidates {
        if used[c] || target.degree[c] != pattern.degree[v] || target.m[c][c] != pattern.m[v][v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| pattern.m[v][u] == target.m[c][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        extend(pattern, target, order, anchor, depth + 1, map, used, found);
        used[c] = false;
        map[v] = usize::MAX;
    }
}

fn isomorphic(pattern: &Quiver, target: &Graph) -> bool {
    let mut any = false;
    for_each_isomorphism(&Graph::of(pattern), target, &mut |_| any = true);
    any
}

/// Classifies a connected quiver with degree-1 edges by graph isomorphism
/// against the ADE and affine ADE shapes.
pub fn classify(q: &Quiver) -> Result<Classification> {
    if !q.all_degree_one() {
        return Err(Error::InvalidQuiver("classification needs degree-1 edges".into()));
    }
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = q.num_vertices();
    let target = Graph::of(q);

    let mut dynkin = vec![(ShapeType::A(n), shapes::dynkin_a(n))];
    if n >= 4 {
        dynkin.push((ShapeType::D(n), shapes::dynkin_d(n)));
    }
    if (6..=8).contains(&n) {
        dynkin.push((ShapeType::E(n), shapes::dynkin_e(n)));
    }
    for (shape, pattern) in dynkin {
        if isomorphic(&pattern, &target) {
            return Ok(Classification::Dynkin(shape));
        }
    }

    let r = n - 1;
    let mut affine = vec![(ShapeType::A(r), shapes::affine_a(r))];
    if r >= 4 {
        affine.push((ShapeType::D(r), shapes::affine_d(r)));
    }
    if (6..=8).contains(&r) {
        affine.push((ShapeType::E(r), shapes::affine_e(r)));
    }
    for (shape, (pattern, o)) in affine {
        let mut extending = Vec::new();
        for_each_isomorphism(&Graph::of(&pattern), &target, &mut |map| extending.push(map[o]));
        if !extending.is_empty() {
            extending.sort_unstable();
            extending.dedup();
            return Ok(Classification::ExtendedDynkin { shape, extending });
        }
    }
    Ok(Classification::Wild)
}
