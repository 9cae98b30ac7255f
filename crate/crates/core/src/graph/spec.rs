use super::{cauchon, grid, Edge, EdgeKind, SeGraph, Vertex};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub tail: String,
    pub head: String,
    pub kind: EdgeKind,
}

/// Explicit graph description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub m: usize,
    pub n: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &SeGraph) -> Self {
        let vs = g.vertices();
        Self {
            m: g.m(),
            n: g.n(),
            vertices: vs.iter().map(|v| VertexJson { id: v.label.clone(), x: v.x, y: v.y }).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson { tail: vs[e.tail].label.clone(), head: vs[e.head].label.clone(), kind: e.kind })
                .collect(),
        }
    }

    /// Builds and validates the graph.
    pub fn to_graph(&self) -> Result<SeGraph> {
        let mut index = HashMap::new();
        let mut vertices = Vec::new();
        for v in &self.vertices {
            index.insert(v.id.clone(), vertices.len());
            vertices.push(Vertex { label: v.id.clone(), x: v.x, y: v.y });
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {id}")))
        };
        let mut edges = Vec::new();
        for e in &self.edges {
            edges.push(Edge { tail: lookup(&e.tail)?, head: lookup(&e.head)?, kind: e.kind });
        }
        SeGraph::new(self.m, self.n, vertices, edges)
    }
}

fn dims(s: &str, sep: char) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad dimensions {s:?}"));
    let (a, b) = s.split_once(sep).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Parses `grid:MxN` or `cauchon:M,N:<rows>`; anything else is read as JSON text.
///
/// Cauchon rows are `0`/`1` strings (1 = white), top row first, separated by `/`.
pub fn parse_graph_spec(spec: &str) -> Result<SeGraph> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("grid:") {
        let (m, n) = dims(rest, 'x')?;
        return grid(m, n);
    }
    if let Some(rest) = spec.strip_prefix("cauchon:") {
        let (d, rows) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected cauchon:M,N:<rows>".into()))?;
        let (m, n) = dims(d, ',')?;
        let rows: Vec<&str> = rows.split('/').collect();
        if rows.len() != m || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("expected {m} rows of length {n}")));
        }
        let mut white = BTreeSet::new();
        for (k, r) in rows.iter().enumerate() {
            let i = m - k;
            for (c, ch) in r.chars().enumerate() {
                match ch {
                    '1' => {
                        white.insert((i, c + 1));
                    }
                    '0' => {}
                    _ => return Err(Error::Parse(format!("bad cell {ch:?}"))),
                }
            }
        }
        return cauchon(m, n, &white);
    }
    let parsed: GraphJson = serde_json::from_str(spec).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        let g = parse_graph_spec("grid:2x3").unwrap();
        assert_eq!((g.m(), g.n(), g.inner().len()), (2, 3, 6));
        let g = parse_graph_spec("cauchon:2,2:01/11").unwrap();
        assert_eq!(g.inner().len(), 3);
        assert!(g.vertex_by_label("t21").is_none());
        // Black (1,1) with white to its right and above: the chains cross.
        assert!(parse_graph_spec("cauchon:2,2:11/01").is_err());
        assert!(parse_graph_spec("grid:0x3").is_err());
        assert!(parse_graph_spec("cauchon:2,2:11").is_err());
        assert!(parse_graph_spec("nonsense").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = parse_graph_spec("grid:2x2").unwrap();
        let text = serde_json::to_string(&GraphJson::from_graph(&g)).unwrap();
        let h = parse_graph_spec(&text).unwrap();
        assert_eq!(h.vertices(), g.vertices());
        assert_eq!(h.edges(), g.edges());
    }
}
