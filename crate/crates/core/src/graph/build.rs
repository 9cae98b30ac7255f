use super::{Edge, EdgeKind, SeGraph, Vertex};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Label of the inner vertex in row `i`, column `j`.
pub fn grid_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("t{i}{j}")
    } else {
        format!("t{i}_{j}")
    }
}

/// The extended `m x n` grid: `t_ij` at `(j, i)`, rows increasing upward.
pub fn grid(m: usize, n: usize) -> Result<SeGraph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("grid dimensions must be positive".into()));
    }
    let cells: BTreeSet<(usize, usize)> = (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    cauchon(m, n, &cells)
}

/// Graph of a Cauchon diagram given by its white cells `(row, column)`.
///
/// Each row runs `r_i` through its white cells left to right; each column runs
/// from its top white cell down to `c_j`. Diagrams whose chains cross are rejected.
pub fn cauchon(m: usize, n: usize, white: &BTreeSet<(usize, usize)>) -> Result<SeGraph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("diagram dimensions must be positive".into()));
    }
    for &(i, j) in white {
        if i == 0 || i > m || j == 0 || j > n {
            return Err(Error::InvalidParameters(format!("cell ({i},{j}) outside {m}x{n}")));
        }
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut id = std::collections::HashMap::new();
    for i in 1..=m {
        id.insert(('r', i, 0), vertices.len());
        vertices.push(Vertex { label: format!("r{i}"), x: 0, y: i as i64 });
    }
    for j in 1..=n {
        id.insert(('c', 0, j), vertices.len());
        vertices.push(Vertex { label: format!("c{j}"), x: j as i64, y: 0 });
    }
    for &(i, j) in white {
        id.insert(('t', i, j), vertices.len());
        vertices.push(Vertex { label: grid_label(i, j), x: j as i64, y: i as i64 });
    }
    for i in 1..=m {
        let mut prev = id[&('r', i, 0)];
        for j in 1..=n {
            if let Some(&v) = id.get(&('t', i, j)) {
                edges.push(Edge { tail: prev, head: v, kind: EdgeKind::H });
                prev = v;
            }
        }
    }
    for j in 1..=n {
        let mut prev: Option<usize> = None;
        for i in (1..=m).rev() {
            if let Some(&v) = id.get(&('t', i, j)) {
                if let Some(p) = prev {
                    edges.push(Edge { tail: p, head: v, kind: EdgeKind::V });
                }
                prev = Some(v);
            }
        }
        if let Some(p) = prev {
            edges.push(Edge { tail: p, head: id[&('c', 0, j)], kind: EdgeKind::V });
        }
    }
    SeGraph::new(m, n, vertices, edges)
}
