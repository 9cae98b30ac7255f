use super::{EdgeKind, Role, SeGraph};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Two edges meet away from a shared endpoint, or a vertex lies inside an edge.
    SE1,
    /// Edge direction does not match its kind.
    SE2,
    /// Misplaced source/sink or wrong edge kind at one.
    SE3,
    /// Inner vertex on no source-to-sink path.
    SE4,
    /// Coincident or negative coordinates, or aligned vertices without a connecting path.
    Coordinates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

fn push(out: &mut Vec<Violation>, kind: ViolationKind, detail: String) {
    out.push(Violation { kind, detail });
}

/// Checks the SE conditions and the coordinate conventions; empty means valid.
pub fn validate(g: &SeGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let vs = g.vertices();
    let label = |v: usize| vs[v].label.as_str();
    let edge_name = |e: usize| format!("{}->{}", label(g.edge(e).tail), label(g.edge(e).head));

    // SE2
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (&vs[e.tail], &vs[e.head]);
        let ok = match e.kind {
            EdgeKind::H => b.x > a.x && b.y == a.y,
            EdgeKind::V => b.y < a.y && b.x == a.x,
        };
        if !ok {
            push(&mut out, ViolationKind::SE2, format!("{:?}-edge {} has the wrong direction", e.kind, edge_name(id)));
        }
    }

    // SE3
    for w in [g.sources.windows(2), g.sinks.windows(2)].into_iter().flatten() {
        let (a, b) = (&vs[w[0]], &vs[w[1]]);
        if (a.x, a.y) == (b.x, b.y) {
            push(&mut out, ViolationKind::SE3, format!("{} and {} coincide", a.label, b.label));
        }
    }
    for (v, p) in vs.iter().enumerate() {
        match g.role(v) {
            Role::Source(_) => {
                if !g.in_edges(v).is_empty() || g.out_edges(v).iter().any(|&e| g.edge(e).kind != EdgeKind::H) {
                    push(&mut out, ViolationKind::SE3, format!("source {} must only emit H-edges", label(v)));
                }
                if p.y < 0 {
                    push(&mut out, ViolationKind::SE3, format!("source {} below the x-axis", label(v)));
                }
            }
            Role::Sink(_) => {
                if !g.out_edges(v).is_empty() || g.in_edges(v).iter().any(|&e| g.edge(e).kind != EdgeKind::V) {
                    push(&mut out, ViolationKind::SE3, format!("sink {} must only receive V-edges", label(v)));
                }
                if p.x < 0 {
                    push(&mut out, ViolationKind::SE3, format!("sink {} left of the y-axis", label(v)));
                }
            }
            Role::Inner(_) => {
                if p.x < 0 || p.y < 0 {
                    push(&mut out, ViolationKind::Coordinates, format!("{} outside the positive quadrant", label(v)));
                }
            }
        }
    }

    // Coincident vertices.
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            if (vs[a].x, vs[a].y) == (vs[b].x, vs[b].y) {
                push(&mut out, ViolationKind::Coordinates, format!("{} and {} share coordinates", label(a), label(b)));
            }
        }
    }

    // SE1: vertices inside edges, then edge pairs.
    for (id, e) in g.edges().iter().enumerate() {
        let r = rect(g, id);
        for (v, p) in vs.iter().enumerate() {
            if v != e.tail && v != e.head && r.contains(p.x, p.y) {
                push(&mut out, ViolationKind::SE1, format!("{} lies on edge {}", p.label, edge_name(id)));
            }
        }
    }
    let ne = g.edges().len();
    for a in 0..ne {
        for b in a + 1..ne {
            let (ra, rb) = (rect(g, a), rect(g, b));
            let x0 = ra.x0.max(rb.x0);
            let x1 = ra.x1.min(rb.x1);
            let y0 = ra.y0.max(rb.y0);
            let y1 = ra.y1.min(rb.y1);
            if x0 > x1 || y0 > y1 {
                continue;
            }
            let (ea, eb) = (g.edge(a), g.edge(b));
            let shared = [ea.tail, ea.head]
                .into_iter()
                .filter(|v| *v == eb.tail || *v == eb.head)
                .any(|v| (vs[v].x, vs[v].y) == (x0, y0));
            if !(x0 == x1 && y0 == y1 && shared) {
                push(&mut out, ViolationKind::SE1, format!("edges {} and {} intersect", edge_name(a), edge_name(b)));
            }
        }
    }

    // SE4 for inner vertices; isolated sources and sinks are allowed.
    let fwd = reach(g, g.sources.iter().copied(), true);
    let bwd = reach(g, g.sinks.iter().copied(), false);
    for &v in g.inner() {
        if !(fwd[v] && bwd[v]) {
            push(&mut out, ViolationKind::SE4, format!("{} is on no source-to-sink path", label(v)));
        }
    }

    // Aligned vertices must be joined by a path of the matching kind.
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            let both_src = matches!((g.role(a), g.role(b)), (Role::Source(_), Role::Source(_)));
            let both_snk = matches!((g.role(a), g.role(b)), (Role::Sink(_), Role::Sink(_)));
            if both_src || both_snk || (vs[a].x, vs[a].y) == (vs[b].x, vs[b].y) {
                continue;
            }
            for (aligned, kind) in [(vs[a].x == vs[b].x, EdgeKind::V), (vs[a].y == vs[b].y, EdgeKind::H)] {
                if aligned && !g.reach_within(a, kind).contains(&b) && !g.reach_within(b, kind).contains(&a) {
                    push(
                        &mut out,
                        ViolationKind::Coordinates,
                        format!("{} and {} are aligned but not joined by a {:?}-path", label(a), label(b), kind),
                    );
                }
            }
        }
    }
    out
}

struct Rect {
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
}

impl Rect {
    fn contains(&self, x: i64, y: i64) -> bool {
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }
}

fn rect(g: &SeGraph, e: usize) -> Rect {
    let ed = g.edge(e);
    let (a, b) = (g.vertex(ed.tail), g.vertex(ed.head));
    Rect { x0: a.x.min(b.x), x1: a.x.max(b.x), y0: a.y.min(b.y), y1: a.y.max(b.y) }
}

fn reach(g: &SeGraph, start: impl Iterator<Item = usize>, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; g.vertices().len()];
    let mut stack: Vec<usize> = start.collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(x) = stack.pop() {
        let next = if forward { g.out_edges(x) } else { g.in_edges(x) };
        for &e in next {
            let y = if forward { g.edge(e).head } else { g.edge(e).tail };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}
