//! Standard quiver shapes with degree-1 edges.
//!
//! Orientations are arbitrary; only the underlying graph matters to
//! doubling and classification.

use super::Quiver;

/// One vertex with `g` loops.
pub fn loops(g: usize) -> Quiver {
    let mut q = Quiver::with_vertices(1);
    for _ in 0..g {
        q.add_edge(0, 0, 1);
    }
    q
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn dynkin_a(n: usize) -> Quiver {
    assert!(n >= 1);
    let mut q = Quiver::with_vertices(n);
    for i in 1..n {
        q.add_edge(i - 1, i, 1);
    }
    q
}

/// A center (vertex 0) with arms of the given lengths, plus the tip of each arm.
pub fn arms(lengths: &[usize]) -> (Quiver, Vec<usize>) {
    let n = 1 + lengths.iter().sum::<usize>();
    let mut q = Quiver::with_vertices(n);
    let mut tips = Vec::with_capacity(lengths.len());
    let mut next = 1;
    for &len in lengths {
        let mut prev = 0;
        for _ in 0..len {
            q.add_edge(prev, next, 1);
            prev = next;
            next += 1;
        }
        tips.push(prev);
    }
    (q, tips)
}

pub fn dynkin_d(n: usize) -> Quiver {
    assert!(n >= 4);
    arms(&[1, 1, n - 3]).0
}

pub fn dynkin_e(n: usize) -> Quiver {
    assert!((6..=8).contains(&n));
    arms(&[1, 2, n - 4]).0
}

/// `Ã_n` on `n+1` vertices with its extending vertex.
pub fn affine_a(n: usize) -> (Quiver, usize) {
    let q = match n {
        0 => loops(1),
        1 => {
            let mut q = Quiver::with_vertices(2);
            q.add_edge(0, 1, 1);
            q.add_edge(0, 1, 1);
            q
        }
        _ => {
            let mut q = Quiver::with_vertices(n + 1);
            for i in 0..=n {
                q.add_edge(i, (i + 1) % (n + 1), 1);
            }
            q
        }
    };
    (q, 0)
}

/// `D̃_n` on `n+1` vertices: a path `1..n-1` with extra leaves `0` and `n`
/// attached at `2` and `n-2`. Vertex `0` is extending.
pub fn affine_d(n: usize) -> (Quiver, usize) {
    assert!(n >= 4);
    let mut q = Quiver::with_vertices(n + 1);
    for i in 2..n {
        q.add_edge(i - 1, i, 1);
    }
    q.add_edge(0, 2, 1);
    q.add_edge(n, n - 2, 1);
    (q, 0)
}

/// `Ẽ_n` for `n` in 6..=8 with an extending vertex.
pub fn affine_e(n: usize) -> (Quiver, usize) {
    let (q, tips) = match n {
        6 => arms(&[2, 2, 2]),
        7 => arms(&[1, 3, 3]),
        8 => arms(&[1, 2, 5]),
        _ => panic!("affine E needs n in 6..=8"),
    };
    (q, *tips.last().unwrap())
}

/// Star with `k` spokes out of vertex 0.
pub fn star(k: usize) -> Quiver {
    arms(&vec![1; k]).0
}
