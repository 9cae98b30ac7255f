//! Planar SE-graphs: sources on the y-axis, sinks on the x-axis, rightward
//! horizontal and downward vertical edges.

mod build;
mod paths;
mod spec;
mod validate;

pub use build::{cauchon, grid, grid_label};
pub use paths::{
    edge_weight, enumerate_all_paths, enumerate_paths, is_lower, path_commutation_ratio, path_weight, path_weight_poly,
    GPath,
};
pub use spec::{parse_graph_spec, EdgeJson, GraphJson, VertexJson};
pub use validate::{validate, Violation, ViolationKind};

use crate::algebra::CommutationTable;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    H,
    V,
}

/// Role of a vertex, derived from its position: `x = 0` sources, `y = 0` sinks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `r_i`, 1-based.
    Source(usize),
    /// `c_j`, 1-based.
    Sink(usize),
    /// Generator index in the normal-form order.
    Inner(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub kind: EdgeKind,
}

/// An embedded SE-graph together with its derived commutation table.
#[derive(Clone, Debug)]
pub struct SeGraph {
    m: usize,
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    roles: Vec<Role>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    inner: Vec<usize>,
    table: CommutationTable,
}

impl SeGraph {
    /// Assembles a graph without checking the SE conditions; see [`validate`].
    ///
    /// Vertices with `x = 0` become sources ordered by `y`; vertices with `y = 0`
    /// become sinks ordered by `x`. There must be exactly `m` and `n` of them.
    pub fn assemble(m: usize, n: usize, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let nv = vertices.len();
        for e in &edges {
            if e.tail >= nv || e.head >= nv {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if e.tail == e.head {
                return Err(Error::InvalidGraph(format!("loop at {}", vertices[e.tail].label)));
            }
        }
        let mut seen = HashMap::new();
        for (k, v) in vertices.iter().enumerate() {
            if seen.insert(v.label.clone(), k).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {}", v.label)));
            }
            if v.x == 0 && v.y == 0 {
                return Err(Error::InvalidGraph(format!("vertex {} sits at the origin", v.label)));
            }
        }
        let mut sources: Vec<usize> = (0..nv).filter(|&k| vertices[k].x == 0).collect();
        sources.sort_by_key(|&k| vertices[k].y);
        let mut sinks: Vec<usize> = (0..nv).filter(|&k| vertices[k].y == 0).collect();
        sinks.sort_by_key(|&k| vertices[k].x);
        if sources.len() != m || sinks.len() != n {
            return Err(Error::InvalidGraph(format!(
                "expected {m} sources and {n} sinks on the axes, found {} and {}",
                sources.len(),
                sinks.len()
            )));
        }
        let mut inner: Vec<usize> = (0..nv).filter(|&k| vertices[k].x != 0 && vertices[k].y != 0).collect();
        inner.sort_by(|&a, &b| {
            let (va, vb) = (&vertices[a], &vertices[b]);
            (va.y, va.x, &va.label).cmp(&(vb.y, vb.x, &vb.label))
        });
        let mut roles = vec![Role::Inner(0); nv];
        for (i, &k) in sources.iter().enumerate() {
            roles[k] = Role::Source(i + 1);
        }
        for (j, &k) in sinks.iter().enumerate() {
            roles[k] = Role::Sink(j + 1);
        }
        for (g, &k) in inner.iter().enumerate() {
            roles[k] = Role::Inner(g);
        }
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (id, e) in edges.iter().enumerate() {
            out_edges[e.tail].push(id);
            in_edges[e.head].push(id);
        }
        let names = inner.iter().map(|&k| vertices[k].label.clone()).collect();
        let mut g = Self {
            m,
            n,
            vertices,
            edges,
            roles,
            out_edges,
            in_edges,
            sources,
            sinks,
            inner,
            table: CommutationTable::new(names),
        };
        g.table = g.derive_table();
        Ok(g)
    }

    /// Assembles and rejects graphs with any SE violation.
    pub fn new(m: usize, n: usize, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let g = Self::assemble(m, n, vertices, edges)?;
        let v = validate(&g);
        if v.is_empty() {
            Ok(g)
        } else {
            let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidGraph(msg.join("; ")))
        }
    }

    fn derive_table(&self) -> CommutationTable {
        let mut t = CommutationTable::new(self.inner.iter().map(|&k| self.vertices[k].label.clone()).collect());
        for (gu, &u) in self.inner.iter().enumerate() {
            for kind in [EdgeKind::H, EdgeKind::V] {
                let c = if kind == EdgeKind::H { 1 } else { -1 };
                for v in self.reach_within(u, kind) {
                    if let Role::Inner(gv) = self.roles[v] {
                        // Reachability is acyclic for SE-graphs; on malformed
                        // input the last write wins and validation reports it.
                        let _ = t.set(gu, gv, c);
                    }
                }
            }
        }
        t
    }

    /// Vertices reachable from `u` by a nonempty path of edges of one kind.
    fn reach_within(&self, u: usize, kind: EdgeKind) -> Vec<usize> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![u];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            for &e in &self.out_edges[x] {
                let ed = self.edges[e];
                if ed.kind == kind && !seen[ed.head] {
                    seen[ed.head] = true;
                    out.push(ed.head);
                    stack.push(ed.head);
                }
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// Vertex id of `r_i` (1-based).
    pub fn source(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.m {
            return Err(Error::IndexOutOfRange { index: i, bound: self.m });
        }
        Ok(self.sources[i - 1])
    }

    /// Vertex id of `c_j` (1-based).
    pub fn sink(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, bound: self.n });
        }
        Ok(self.sinks[j - 1])
    }

    /// Inner vertices in generator order.
    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn generator_of(&self, v: usize) -> Option<usize> {
        match self.roles[v] {
            Role::Inner(g) => Some(g),
            _ => None,
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn commutation_table(&self) -> &CommutationTable {
        &self.table
    }
}

/// Commutation table of `g`: `+1` along horizontal paths, `-1` along vertical ones.
pub fn commutation_table(g: &SeGraph) -> CommutationTable {
    g.table.clone()
}
