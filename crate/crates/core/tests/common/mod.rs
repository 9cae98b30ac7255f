#![allow(dead_code)]

use qminor::cortege::Cortege;
use qminor::flows::IndexPair;
use qminor::graph::{cauchon, SeGraph};
use rand::Rng;
use std::collections::BTreeSet;

/// Subsets of `1..=n` with at most `k` elements, by size then lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=k.min(n) {
        let mut cur: Vec<usize> = (1..=size).collect();
        loop {
            out.push(cur.clone());
            let mut p = size;
            while p > 0 && cur[p - 1] == n - size + p {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            cur[p - 1] += 1;
            for t in p..size {
                cur[t] = cur[t - 1] + 1;
            }
        }
    }
    out
}

/// Every `(I|J)` in `[m] x [n]` with `1 <= |I| <= k`.
pub fn pairs(m: usize, n: usize, k: usize) -> Vec<IndexPair> {
    let rows = subsets(m, k);
    let cols = subsets(n, k);
    let mut out = Vec::new();
    for r in rows.iter().filter(|r| !r.is_empty()) {
        for c in cols.iter().filter(|c| c.len() == r.len()) {
            out.push(IndexPair::new(r.clone(), c.clone()).unwrap());
        }
    }
    out
}

/// Every cortege of two pairs from `pairs(m, n, k)`.
pub fn corteges(m: usize, n: usize, k: usize) -> Vec<Cortege> {
    let ps = pairs(m, n, k);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            out.push(Cortege::from_pairs(a, b));
        }
    }
    out
}

/// A random Cauchon graph, white cells drawn with probability `p` until the diagram is valid.
pub fn random_cauchon<R: Rng>(rng: &mut R, m: usize, n: usize, p: f64) -> SeGraph {
    loop {
        let mut white = BTreeSet::new();
        for i in 1..=m {
            for j in 1..=n {
                if rng.gen_bool(p) {
                    white.insert((i, j));
                }
            }
        }
        if let Ok(g) = cauchon(m, n, &white) {
            return g;
        }
    }
}

/// An SE-graph on the lattice `[1, s*n] x [1, s*m]` with `r_i` at height `s*i`
/// and `c_j` at abscissa `s*j`; `s = 1` gives the grid.
pub fn refined_grid(m: usize, n: usize, s: usize) -> SeGraph {
    use qminor::graph::{EdgeJson, EdgeKind, GraphJson, VertexJson};
    let (w, h) = ((s * n) as i64, (s * m) as i64);
    let name = |x: i64, y: i64| format!("v{x}_{y}");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut edge = |a: String, b: String, kind| edges.push(EdgeJson { tail: a, head: b, kind });
    for i in 1..=m as i64 {
        let y = s as i64 * i;
        vertices.push(VertexJson { id: format!("r{i}"), x: 0, y });
        edge(format!("r{i}"), name(1, y), EdgeKind::H);
    }
    for j in 1..=n as i64 {
        let x = s as i64 * j;
        vertices.push(VertexJson { id: format!("c{j}"), x, y: 0 });
        edge(name(x, 1), format!("c{j}"), EdgeKind::V);
    }
    for x in 1..=w {
        for y in 1..=h {
            vertices.push(VertexJson { id: name(x, y), x, y });
            if x < w {
                edge(name(x, y), name(x + 1, y), EdgeKind::H);
            }
            if y > 1 {
                edge(name(x, y), name(x, y - 1), EdgeKind::V);
            }
        }
    }
    GraphJson { m, n, vertices, edges }.to_graph().unwrap()
}

/// `id` relabeled onto the smallest indices, order preserved.
pub fn compact(id: &qminor::identities::QuadraticIdentity) -> qminor::identities::QuadraticIdentity {
    use qminor::identities::{relabel, Relabeling};
    let Some(t) = id.terms().next() else {
        return id.clone();
    };
    let c = &t.cortege;
    let rank = |all: &[usize], s: &[usize]| -> Vec<usize> {
        s.iter().map(|x| all.iter().position(|y| y == x).unwrap() + 1).collect()
    };
    let (rows, cols) = (c.row_union(), c.col_union());
    relabel(
        id,
        &Relabeling {
            m: rows.len().max(1),
            n: cols.len().max(1),
            rows: rank(&rows, &c.y_rows()),
            common_rows: rank(&rows, &c.common_rows()),
            cols: rank(&cols, &c.y_cols()),
            common_cols: rank(&cols, &c.common_cols()),
        },
    )
    .unwrap()
}
