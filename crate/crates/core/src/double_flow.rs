//! Pairs of flows: the symmetric-difference decomposition into exchange paths
//! and cycles, the flow exchange, q-ratios of exchanges and bend counts of
//! snakes.

use crate::algebra::{nc_mul_mono, NcMonomial};
use crate::cortege::{index_exchange, zeta, Color, Cortege, Couple, CoupleKind, Elem};
use crate::error::{Error, Result};
use crate::flows::{flow_weight_monomial, Flow, IndexPair};
use crate::graph::{EdgeKind, GPath, Role, SeGraph};
use crate::matchings::{is_feasible, CircularMatching};
use std::collections::{BTreeMap, BTreeSet};

/// `(phi, phi')`: an `(I|J)`-flow and an `(I'|J')`-flow in one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleFlow {
    pub phi: Flow,
    pub phi_p: Flow,
}

impl DoubleFlow {
    /// Checks that both flows are vertex-disjoint path systems with the right ends.
    pub fn new(g: &SeGraph, phi: Flow, phi_p: Flow) -> Result<Self> {
        validate_flow(g, &phi)?;
        validate_flow(g, &phi_p)?;
        Ok(Self { phi, phi_p })
    }

    pub fn cortege(&self) -> Cortege {
        Cortege::from_pairs(&self.phi.pair, &self.phi_p.pair)
    }

    /// `w(phi) w(phi')` as a single `q^d m`.
    pub fn weight(&self, g: &SeGraph) -> Result<(NcMonomial, i32)> {
        let (a, da) = flow_weight_monomial(g, &self.phi)?;
        let (b, db) = flow_weight_monomial(g, &self.phi_p)?;
        let (m, d) = nc_mul_mono(&a, &b, g.commutation_table())?;
        Ok((m, da + db + d))
    }
}

/// Checks that `f` consists of vertex-disjoint directed paths `r_{I_l} -> c_{J_l}`.
pub fn validate_flow(g: &SeGraph, f: &Flow) -> Result<()> {
    let p = &f.pair;
    p.check_fits(g.m(), g.n())?;
    if f.paths.len() != p.len() {
        return Err(Error::InvalidParameters(format!("flow for {p} has {} paths", f.paths.len())));
    }
    let mut seen = BTreeSet::new();
    for (l, path) in f.paths.iter().enumerate() {
        if path.edges.iter().any(|&e| e >= g.edges().len()) {
            return Err(Error::InvalidParameters("edge not in graph".into()));
        }
        if path.edges.windows(2).any(|w| g.edge(w[0]).head != g.edge(w[1]).tail) {
            return Err(Error::InvalidParameters("edge sequence is not a directed path".into()));
        }
        if path.start(g) != Some(g.source(p.rows[l])?) || path.end(g) != Some(g.sink(p.cols[l])?) {
            return Err(Error::InvalidParameters(format!("path {l} of {p} has wrong ends")));
        }
        for v in path.vertices(g) {
            if !seen.insert(v) {
                return Err(Error::InvalidParameters(format!(
                    "paths of {p} meet at {}",
                    g.vertex(v).label
                )));
            }
        }
    }
    Ok(())
}

/// Rebuilds the flow for `pair` from an edge set by following out-edges from each source.
pub fn flow_from_edges(g: &SeGraph, pair: &IndexPair, edges: &BTreeSet<usize>) -> Result<Flow> {
    let mut paths = Vec::with_capacity(pair.len());
    let mut used = 0;
    for (l, &i) in pair.rows.iter().enumerate() {
        let mut v = g.source(i)?;
        let mut path = Vec::new();
        loop {
            let next: Vec<usize> = g.out_edges(v).iter().copied().filter(|e| edges.contains(e)).collect();
            match next.as_slice() {
                [] => break,
                [e] => {
                    path.push(*e);
                    v = g.edge(*e).head;
                }
                _ => return Err(Error::Internal(format!("branching at {}", g.vertex(v).label))),
            }
        }
        if v != g.sink(pair.cols[l])? {
            return Err(Error::Internal(format!("path from r{i} does not end at c{}", pair.cols[l])));
        }
        used += path.len();
        paths.push(GPath::new(path));
    }
    if used != edges.len() {
        return Err(Error::Internal(format!("edge set does not form a flow for {pair}")));
    }
    let f = Flow { pair: pair.clone(), paths };
    validate_flow(g, &f)?;
    Ok(f)
}

/// One traversed edge of `<U>`; `color` is white for edges of `phi`, black for `phi'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
    pub color: Color,
}

/// A component of `<U>'` joining two elements of the ground set, traversed
/// from `couple.0` to `couple.1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangePath {
    pub couple: Couple,
    pub steps: Vec<Step>,
}

/// A closed component of `<U>'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeCycle {
    pub steps: Vec<Step>,
}

/// Maximal runs of one color.
pub fn segments(steps: &[Step]) -> Vec<&[Step]> {
    steps.chunk_by(|a, b| a.color == b.color).collect()
}

/// Vertices visited by a step sequence, starting at `start`.
fn walk_vertices(g: &SeGraph, steps: &[Step], start: usize) -> Vec<usize> {
    let mut out = vec![start];
    for s in steps {
        let e = g.edge(s.edge);
        out.push(if s.forward { e.head } else { e.tail });
    }
    out
}

fn step_start(g: &SeGraph, s: &Step) -> usize {
    let e = g.edge(s.edge);
    if s.forward {
        e.tail
    } else {
        e.head
    }
}

impl ExchangePath {
    pub fn edges(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    pub fn vertices(&self, g: &SeGraph) -> Vec<usize> {
        match self.steps.first() {
            Some(s) => walk_vertices(g, &self.steps, step_start(g, s)),
            None => Vec::new(),
        }
    }

    pub fn segments(&self) -> Vec<&[Step]> {
        segments(&self.steps)
    }
}

impl ExchangeCycle {
    pub fn edges(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// Closed vertex sequence; the first vertex is repeated at the end.
    pub fn vertices(&self, g: &SeGraph) -> Vec<usize> {
        match self.steps.first() {
            Some(s) => walk_vertices(g, &self.steps, step_start(g, s)),
            None => Vec::new(),
        }
    }

    /// No vertex is visited twice.
    pub fn is_simple(&self, g: &SeGraph) -> bool {
        let vs = self.vertices(g);
        let set: BTreeSet<usize> = vs[..vs.len().saturating_sub(1)].iter().copied().collect();
        set.len() + 1 == vs.len()
    }
}

/// Exchange paths sorted by couple, plus the cycles of `<E_phi △ E_phi'>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: Vec<ExchangePath>,
    pub cycles: Vec<ExchangeCycle>,
}

impl Decomposition {
    pub fn matching(&self) -> CircularMatching {
        CircularMatching::new(self.paths.iter().map(|p| p.couple).collect())
    }

    pub fn path_of(&self, c: &Couple) -> Option<&ExchangePath> {
        self.paths.iter().find(|p| p.couple == *c)
    }
}

fn elem_of(g: &SeGraph, v: usize) -> Option<Elem> {
    match g.role(v) {
        Role::Source(i) => Some(Elem::Row(i)),
        Role::Sink(j) => Some(Elem::Col(j)),
        Role::Inner(_) => None,
    }
}

/// Splits `<E_phi △ E_phi'>` into exchange paths and cycles.
///
/// At every vertex the two entering edges of `U` are joined to each other and
/// so are the two leaving ones; a vertex with one entering and one leaving
/// edge of `U` joins them. This is the in/out splitting of degree-4 vertices.
pub fn decompose(g: &SeGraph, df: &DoubleFlow) -> Result<Decomposition> {
    let a: BTreeSet<usize> = df.phi.edge_set().into_iter().collect();
    let b: BTreeSet<usize> = df.phi_p.edge_set().into_iter().collect();
    let mut color: BTreeMap<usize, Color> = BTreeMap::new();
    for &e in a.difference(&b) {
        color.insert(e, Color::White);
    }
    for &e in b.difference(&a) {
        color.insert(e, Color::Black);
    }
    // partner[(v, e)]: the edge joined to `e` at `v`.
    let mut partner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut ends: Vec<(Elem, usize, usize)> = Vec::new();
    let mut touched: BTreeSet<usize> = BTreeSet::new();
    for &e in color.keys() {
        touched.insert(g.edge(e).tail);
        touched.insert(g.edge(e).head);
    }
    for &v in &touched {
        let ins: Vec<usize> = g.in_edges(v).iter().copied().filter(|e| color.contains_key(e)).collect();
        let outs: Vec<usize> = g.out_edges(v).iter().copied().filter(|e| color.contains_key(e)).collect();
        let mut join = |x: usize, y: usize| {
            partner.insert((v, x), y);
            partner.insert((v, y), x);
        };
        match (ins.as_slice(), outs.as_slice()) {
            ([x, y], [p, r]) => {
                join(*x, *y);
                join(*p, *r);
            }
            ([x, y], []) | ([], [x, y]) => join(*x, *y),
            ([x], [y]) => join(*x, *y),
            ([e], []) | ([], [e]) => {
                let el = elem_of(g, v)
                    .ok_or_else(|| Error::Internal(format!("inner vertex {} has degree 1", g.vertex(v).label)))?;
                ends.push((el, v, *e));
            }
            _ => {
                return Err(Error::Internal(format!(
                    "vertex {} has {} entering and {} leaving edges in U",
                    g.vertex(v).label,
                    ins.len(),
                    outs.len()
                )))
            }
        }
    }
    ends.sort();
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    let step = |e: usize, from: usize| Step { edge: e, forward: g.edge(e).tail == from, color: color[&e] };
    let far = |e: usize, from: usize| {
        let ed = g.edge(e);
        if ed.tail == from {
            ed.head
        } else {
            ed.tail
        }
    };
    let mut paths = Vec::new();
    for &(el, v0, e0) in &ends {
        if visited.contains(&e0) {
            continue;
        }
        let mut steps = Vec::new();
        let (mut v, mut e) = (v0, e0);
        let last = loop {
            visited.insert(e);
            steps.push(step(e, v));
            let w = far(e, v);
            match partner.get(&(w, e)) {
                Some(&next) => {
                    v = w;
                    e = next;
                }
                None => break w,
            }
        };
        let other = elem_of(g, last).ok_or_else(|| Error::Internal("exchange path ends inside".into()))?;
        paths.push(ExchangePath { couple: Couple::new(el, other), steps });
    }
    let mut cycles = Vec::new();
    for &e0 in color.keys() {
        if visited.contains(&e0) {
            continue;
        }
        let mut steps = Vec::new();
        let (mut v, mut e) = (g.edge(e0).tail, e0);
        loop {
            visited.insert(e);
            steps.push(step(e, v));
            let w = far(e, v);
            let next = *partner
                .get(&(w, e))
                .ok_or_else(|| Error::Internal("open component among cycles".into()))?;
            v = w;
            e = next;
            if e == e0 {
                break;
            }
        }
        cycles.push(ExchangeCycle { steps });
    }
    paths.sort_by_key(|p| p.couple);
    Ok(Decomposition { paths, cycles })
}

/// `M(phi, phi')`; an infeasible result is reported as an internal error.
pub fn matching_of(g: &SeGraph, df: &DoubleFlow) -> Result<CircularMatching> {
    let m = decompose(g, df)?.matching();
    let c = df.cortege();
    if !is_feasible(&m, &c)? {
        return Err(Error::Internal(format!("matching {m} of a double flow is infeasible for {c}")));
    }
    Ok(m)
}

fn exchange_with(g: &SeGraph, df: &DoubleFlow, dec: &Decomposition, pi: &[Couple]) -> Result<DoubleFlow> {
    let mut ex: BTreeSet<usize> = BTreeSet::new();
    for cp in pi {
        let p = dec
            .path_of(cp)
            .ok_or_else(|| Error::NotACouple(format!("{cp} is not in the matching of the double flow")))?;
        ex.extend(p.edges());
    }
    let c = index_exchange(&df.cortege(), pi)?;
    let sym = |f: &Flow| -> BTreeSet<usize> {
        let s: BTreeSet<usize> = f.edge_set().into_iter().collect();
        s.symmetric_difference(&ex).copied().collect()
    };
    let psi = flow_from_edges(g, &c.first(), &sym(&df.phi))?;
    let psi_p = flow_from_edges(g, &c.second(), &sym(&df.phi_p))?;
    Ok(DoubleFlow { phi: psi, phi_p: psi_p })
}

/// `(psi, psi')` obtained by exchanging along the paths `P(pi)`, `pi ∈ Π`.
pub fn flow_exchange(g: &SeGraph, df: &DoubleFlow, pi: &[Couple]) -> Result<DoubleFlow> {
    let dec = decompose(g, df)?;
    exchange_with(g, df, &dec, pi)
}

/// The `d` with `w(phi) w(phi') = q^d w(psi) w(psi')`, computed symbolically.
pub fn exchange_ratio(g: &SeGraph, df: &DoubleFlow, pi: &[Couple]) -> Result<i32> {
    let other = flow_exchange(g, df, pi)?;
    ratio_between(g, df, &other)
}

pub(crate) fn ratio_between(g: &SeGraph, a: &DoubleFlow, b: &DoubleFlow) -> Result<i32> {
    let (m1, d1) = a.weight(g)?;
    let (m2, d2) = b.weight(g)?;
    if m1 != m2 {
        return Err(Error::Internal("exchange changed the monomial of a double flow".into()));
    }
    Ok(d1 - d2)
}

/// `zeta_white - zeta_black` for the couples `pi` of `c`.
pub fn predicted_ratio(c: &Cortege, pi: &[Couple]) -> Result<i32> {
    let (w, b) = zeta(c, pi)?;
    Ok(w as i32 - b as i32)
}

/// The edge of a step sequence at its junction vertex `z`, and whether it leaves `z`.
fn edge_at(g: &SeGraph, s: &Step, z: usize) -> (EdgeKind, bool) {
    let e = g.edge(s.edge);
    (e.kind, e.tail == z)
}

/// `+1` if the white snake is lower at the bend `z` between consecutive steps
/// `a` and `b` of different colors, `-1` otherwise.
fn bend_gamma(g: &SeGraph, a: &Step, b: &Step, z: usize) -> Result<i32> {
    let (ka, la) = edge_at(g, a, z);
    let (kb, lb) = edge_at(g, b, z);
    if la != lb || ka == kb {
        return Err(Error::Internal(format!("malformed bend at {}", g.vertex(z).label)));
    }
    // Leaving: the snake going down is lower. Entering: the one coming from the left.
    let lower_kind = if la { EdgeKind::V } else { EdgeKind::H };
    let white_lower = if a.color == Color::White { ka == lower_kind } else { kb == lower_kind };
    Ok(if white_lower { 1 } else { -1 })
}

/// Bends of a step sequence: `(index of the last step before the bend, vertex)`.
fn bends(g: &SeGraph, steps: &[Step], closed: bool) -> Vec<(usize, usize)> {
    let Some(first) = steps.first() else {
        return Vec::new();
    };
    let vs = walk_vertices(g, steps, step_start(g, first));
    let mut out = Vec::new();
    for k in 0..steps.len() {
        let nxt = if k + 1 < steps.len() {
            k + 1
        } else if closed {
            0
        } else {
            break;
        };
        if steps[k].color != steps[nxt].color {
            out.push((k, vs[k + 1]));
        }
    }
    out
}

/// Non-degeneracy restricted to bends: the bends of `z` have pairwise distinct abscissas.
pub fn is_nondegenerate(g: &SeGraph, z: &ExchangePath) -> bool {
    let xs: Vec<i64> = bends(g, &z.steps, false).iter().map(|&(_, v)| g.vertex(v).x).collect();
    let set: BTreeSet<i64> = xs.iter().copied().collect();
    set.len() == xs.len()
}

/// `gamma_Z` for the exchange path of `couple`, with colors oriented so that
/// the smaller element of an R- or C-couple (both elements of an RC-couple)
/// is white. Expected: 1 for R/C-couples, 0 for RC-couples.
pub fn snake_gamma(g: &SeGraph, df: &DoubleFlow, couple: &Couple) -> Result<i32> {
    let dec = decompose(g, df)?;
    let z = dec
        .path_of(couple)
        .ok_or_else(|| Error::NotACouple(format!("{couple} is not in the matching of the double flow")))?;
    if !is_nondegenerate(g, z) {
        return Err(Error::Degenerate(format!("bends of the exchange path for {couple} share an abscissa")));
    }
    let c = df.cortege();
    let reference = if couple.kind() == CoupleKind::RC && !couple.0.is_row() { couple.1 } else { couple.0 };
    let sign = match c.color(reference) {
        Some(Color::White) => 1,
        Some(Color::Black) => -1,
        None => return Err(Error::NotInGroundSet(reference.to_string())),
    };
    let mut total = 0;
    for (k, v) in bends(g, &z.steps, false) {
        total += bend_gamma(g, &z.steps[k], &z.steps[k + 1], v)?;
    }
    Ok(sign * total)
}

/// `gamma_D` of a closed colored cycle: `2` if it runs clockwise in the
/// direction of its black snakes, `-2` if counterclockwise.
pub fn cycle_gamma(g: &SeGraph, d: &ExchangeCycle) -> Result<i32> {
    let n = d.steps.len();
    let mut total = 0;
    for (k, v) in bends(g, &d.steps, true) {
        total += bend_gamma(g, &d.steps[k], &d.steps[(k + 1) % n], v)?;
    }
    Ok(total)
}

/// `+1` if the cycle runs clockwise when traversed along its black snakes, `-1` otherwise.
pub fn cycle_orientation(g: &SeGraph, d: &ExchangeCycle) -> Result<i32> {
    let black_forward = d
        .steps
        .iter()
        .find(|s| s.color == Color::Black)
        .map(|s| s.forward)
        .ok_or_else(|| Error::InvalidParameters("cycle has no black snake".into()))?;
    let vs = d.vertices(g);
    let mut area2 = 0i64;
    for w in vs.windows(2) {
        let (a, b) = (g.vertex(w[0]), g.vertex(w[1]));
        area2 += a.x * b.y - b.x * a.y;
    }
    if area2 == 0 {
        return Err(Error::Degenerate("cycle encloses no area".into()));
    }
    let ccw_as_walked = area2 > 0;
    Ok(if ccw_as_walked == black_forward { -1 } else { 1 })
}

/// Every double flow of the cortege `c` in `g`.
pub fn double_flows(g: &SeGraph, c: &Cortege) -> Result<Vec<DoubleFlow>> {
    let a = crate::flows::enumerate_flows(g, &c.first())?;
    let b = crate::flows::enumerate_flows(g, &c.second())?;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            out.push(DoubleFlow { phi: x.clone(), phi_p: y.clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::grid;

    fn ct(i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Cortege {
        Cortege::new(i.to_vec(), j.to_vec(), ip.to_vec(), jp.to_vec()).unwrap()
    }

    #[test]
    fn equal_flows_have_empty_difference() {
        let g = grid(2, 2).unwrap();
        let c = ct(&[1, 2], &[1, 2], &[1, 2], &[1, 2]);
        for df in double_flows(&g, &c).unwrap() {
            if df.phi == df.phi_p {
                let d = decompose(&g, &df).unwrap();
                assert!(d.paths.is_empty() && d.cycles.is_empty());
            }
            assert!(matching_of(&g, &df).unwrap().is_empty());
        }
    }

    #[test]
    fn single_couple_ratios() {
        let g = grid(3, 3).unwrap();
        let c = ct(&[1], &[1], &[2], &[3]);
        for df in double_flows(&g, &c).unwrap() {
            let m = matching_of(&g, &df).unwrap();
            for cp in &m.couples {
                let d = exchange_ratio(&g, &df, &[*cp]).unwrap();
                assert_eq!(d, predicted_ratio(&c, &[*cp]).unwrap(), "{cp} in {m}");
            }
        }
    }

    #[test]
    fn exchange_is_an_involution() {
        let g = grid(3, 3).unwrap();
        let c = ct(&[1, 2], &[1, 3], &[2, 3], &[1, 2]);
        for df in double_flows(&g, &c).unwrap() {
            let m = matching_of(&g, &df).unwrap();
            let pi: Vec<Couple> = m.couples.iter().take(1).copied().collect();
            let once = flow_exchange(&g, &df, &pi).unwrap();
            assert_eq!(matching_of(&g, &once).unwrap(), m);
            assert_eq!(flow_exchange(&g, &once, &pi).unwrap(), df);
        }
    }

    #[test]
    fn foreign_couple_is_rejected() {
        let g = grid(2, 2).unwrap();
        let c = ct(&[1], &[1], &[2], &[2]);
        let df = &double_flows(&g, &c).unwrap()[0];
        let bogus = Couple::new(Elem::Row(1), Elem::Col(2));
        assert!(flow_exchange(&g, df, &[bogus]).is_err());
    }

    #[test]
    fn invalid_flow_is_rejected() {
        let g = grid(2, 2).unwrap();
        let f = crate::flows::enumerate_flows(&g, &IndexPair::new(vec![1], vec![1]).unwrap()).unwrap();
        let mut bad = f[0].clone();
        bad.pair = IndexPair::new(vec![2], vec![1]).unwrap();
        assert!(DoubleFlow::new(&g, f[0].clone(), bad).is_err());
    }
}
