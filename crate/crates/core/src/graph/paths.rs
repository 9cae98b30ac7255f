use super::{EdgeKind, Role, SeGraph};
use crate::algebra::{nc_mul_mono, NcMonomial, NcPolynomial};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// A directed path, stored as its edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPath {
    pub edges: Vec<usize>,
}

impl GPath {
    pub fn new(edges: Vec<usize>) -> Self {
        Self { edges }
    }

    /// Vertices in order. An empty path has no vertices.
    pub fn vertices(&self, g: &SeGraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        if let Some(&e) = self.edges.first() {
            out.push(g.edge(e).tail);
        }
        out.extend(self.edges.iter().map(|&e| g.edge(e).head));
        out
    }

    pub fn start(&self, g: &SeGraph) -> Option<usize> {
        self.edges.first().map(|&e| g.edge(e).tail)
    }

    pub fn end(&self, g: &SeGraph) -> Option<usize> {
        self.edges.last().map(|&e| g.edge(e).head)
    }

    /// Has at least one horizontal edge.
    pub fn is_standard(&self, g: &SeGraph) -> bool {
        self.edges.iter().any(|&e| g.edge(e).kind == EdgeKind::H)
    }

    fn check_directed(&self, g: &SeGraph) -> Result<()> {
        for w in self.edges.windows(2) {
            if g.edge(w[0]).head != g.edge(w[1]).tail {
                return Err(Error::InvalidParameters("edge sequence is not a directed path".into()));
            }
        }
        for &e in &self.edges {
            if e >= g.edges().len() {
                return Err(Error::InvalidParameters(format!("edge {e} not in graph")));
            }
        }
        Ok(())
    }
}

/// Weight of edge `e` as `(monomial, q-power)`: `v` from a source, `u^-1 v` for an
/// inner H-edge, `1` for a V-edge.
pub fn edge_weight(g: &SeGraph, e: usize) -> (NcMonomial, i32) {
    let ed = g.edge(e);
    if ed.kind == EdgeKind::V {
        return (NcMonomial::one(), 0);
    }
    let head = match g.role(ed.head) {
        Role::Inner(x) => NcMonomial::generator(x),
        _ => NcMonomial::one(),
    };
    match g.role(ed.tail) {
        Role::Inner(u) => nc_mul_mono(&NcMonomial::power(u, -1), &head, g.commutation_table())
            .expect("generators of a graph are in its table"),
        _ => (head, 0),
    }
}

/// Ordered product of edge weights: `w(P) = q^d m`.
pub fn path_weight(g: &SeGraph, p: &GPath) -> Result<(NcMonomial, i32)> {
    p.check_directed(g)?;
    let t = g.commutation_table();
    let mut acc = (NcMonomial::one(), 0);
    for &e in &p.edges {
        let (w, d) = edge_weight(g, e);
        let (m, d2) = nc_mul_mono(&acc.0, &w, t)?;
        acc = (m, acc.1 + d + d2);
    }
    Ok(acc)
}

pub fn path_weight_poly<C: Coeff>(g: &SeGraph, p: &GPath) -> Result<NcPolynomial<C>> {
    let (m, d) = path_weight(g, p)?;
    Ok(NcPolynomial::from_qmonomial(m, d))
}

/// All directed `r_i -> c_j` paths, in lexicographic order of edge ids.
pub fn enumerate_paths(g: &SeGraph, i: usize, j: usize) -> Result<Vec<GPath>> {
    let (s, t) = (g.source(i)?, g.sink(j)?);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs(g, s, t, &mut stack, &mut out);
    Ok(out)
}

fn dfs(g: &SeGraph, v: usize, target: usize, stack: &mut Vec<usize>, out: &mut Vec<GPath>) {
    if v == target {
        out.push(GPath::new(stack.clone()));
        return;
    }
    let mut es = g.out_edges(v).to_vec();
    es.sort_unstable();
    for e in es {
        stack.push(e);
        dfs(g, g.edge(e).head, target, stack, out);
        stack.pop();
    }
}

/// Every directed path with at least one edge.
pub fn enumerate_all_paths(g: &SeGraph) -> Vec<GPath> {
    fn walk(g: &SeGraph, v: usize, stack: &mut Vec<usize>, out: &mut Vec<GPath>) {
        for &e in g.out_edges(v) {
            stack.push(e);
            out.push(GPath::new(stack.clone()));
            walk(g, g.edge(e).head, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..g.vertices().len() {
        walk(g, v, &mut Vec::new(), &mut out);
    }
    out
}

/// Vertical extent `[lo, hi]` of `p` at doubled abscissa `a2`, if `p` reaches it.
fn extent_at(g: &SeGraph, p: &GPath, a2: i64) -> Option<(i64, i64)> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for &e in &p.edges {
        let ed = g.edge(e);
        let (u, v) = (g.vertex(ed.tail), g.vertex(ed.head));
        let (x0, x1) = (2 * u.x.min(v.x), 2 * u.x.max(v.x));
        if x0 <= a2 && a2 <= x1 {
            let (y0, y1) = (u.y.min(v.y), u.y.max(v.y));
            lo = lo.min(y0);
            hi = hi.max(y1);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// `P` is lower than `Q`: some point of `P` lies strictly below a point of `Q`
/// with the same abscissa.
pub fn is_lower(g: &SeGraph, p: &GPath, q: &GPath) -> bool {
    let mut xs: Vec<i64> = p
        .vertices(g)
        .into_iter()
        .chain(q.vertices(g))
        .map(|v| g.vertex(v).x)
        .collect();
    xs.sort_unstable();
    xs.dedup();
    let mut probes: Vec<i64> = xs.iter().map(|x| 2 * x).collect();
    probes.extend(xs.windows(2).map(|w| w[0] + w[1]));
    probes.into_iter().any(|a2| match (extent_at(g, p, a2), extent_at(g, q, a2)) {
        (Some((lo_p, _)), Some((_, hi_q))) => lo_p < hi_q,
        _ => false,
    })
}

/// The `d` with `w(P) w(Q) = q^d w(Q) w(P)` for weakly intersecting `P`, `Q`.
pub fn path_commutation_ratio(g: &SeGraph, p: &GPath, q: &GPath) -> Result<i32> {
    let (vp, vq) = (p.vertices(g), q.vertices(g));
    let ends_p = [p.start(g), p.end(g)];
    let ends_q = [q.start(g), q.end(g)];
    for v in &vp {
        if vq.contains(v) && !(ends_p.contains(&Some(*v)) && ends_q.contains(&Some(*v))) {
            return Err(Error::NotWeaklyIntersecting);
        }
    }
    let (wp, _) = path_weight(g, p)?;
    let (wq, _) = path_weight(g, q)?;
    let t = g.commutation_table();
    let (m1, d1) = nc_mul_mono(&wp, &wq, t)?;
    let (m2, d2) = nc_mul_mono(&wq, &wp, t)?;
    debug_assert_eq!(m1, m2);
    Ok(d1 - d2)
}
