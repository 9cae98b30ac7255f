//! Path matrices, vertex-disjoint path systems and the two q-minor evaluators.

use crate::algebra::{CommutationTable, LaurentPoly, NcMonomial, NcPolynomial};
use crate::error::{Error, Result};
use crate::graph::{path_weight, GPath, Role, SeGraph};
use crate::scalar::Coeff;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest minor order accepted by [`qminor_det`].
pub const MAX_DET_ORDER: usize = 6;

/// Row set `I` and column set `J` of equal size, both strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub(crate) fn check_set(s: &[usize], bound: usize) -> Result<()> {
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedIndices(s.to_vec()));
    }
    for &x in s {
        if x == 0 || x > bound {
            return Err(Error::IndexOutOfRange { index: x, bound });
        }
    }
    Ok(())
}

impl IndexPair {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch { rows: rows.len(), cols: cols.len() });
        }
        check_set(&rows, usize::MAX)?;
        check_set(&cols, usize::MAX)?;
        Ok(Self { rows, cols })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Checks that the sets fit an `m x n` matrix.
    pub fn check_fits(&self, m: usize, n: usize) -> Result<()> {
        check_set(&self.rows, m)?;
        check_set(&self.cols, n)
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[usize]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}|{}]", join(&self.rows), join(&self.cols))
    }
}

/// Pairwise vertex-disjoint paths; `paths[l]` runs from `r_{rows[l]}` to `c_{cols[l]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flow {
    pub pair: IndexPair,
    pub paths: Vec<GPath>,
}

impl Flow {
    /// Edge ids of all paths, sorted.
    pub fn edge_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.paths.iter().flat_map(|p| p.edges.iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

/// `Path(i|j)`: sum of weights of all `r_i -> c_j` paths.
pub fn path_matrix_entry<C: Coeff>(g: &SeGraph, i: usize, j: usize) -> Result<NcPolynomial<C>> {
    let mut acc = NcPolynomial::zero();
    for p in crate::graph::enumerate_paths(g, i, j)? {
        let (m, d) = path_weight(g, &p)?;
        acc.add_term(m, &LaurentPoly::q_pow(d));
    }
    Ok(acc)
}

/// The full `m x n` path matrix, indexed from 0.
pub fn path_matrix<C: Coeff>(g: &SeGraph) -> Result<Vec<Vec<NcPolynomial<C>>>> {
    (1..=g.m())
        .map(|i| (1..=g.n()).map(|j| path_matrix_entry(g, i, j)).collect())
        .collect()
}

/// All flows for `(I|J)`, sources processed in increasing order.
///
/// Any unused sink of `C_J` is tried for each source; the sorted pairing of
/// sources with sinks is then checked rather than assumed.
pub fn enumerate_flows(g: &SeGraph, p: &IndexPair) -> Result<Vec<Flow>> {
    p.check_fits(g.m(), g.n())?;
    let sources: Vec<usize> = p.rows.iter().map(|&i| g.source(i)).collect::<Result<_>>()?;
    let sinks: Vec<usize> = p.cols.iter().map(|&j| g.sink(j)).collect::<Result<_>>()?;
    let mut used = vec![false; g.vertices().len()];
    let mut chosen: Vec<(GPath, usize)> = Vec::new();
    let mut out = Vec::new();
    extend_flows(g, &sources, &sinks, &mut used, &mut chosen, &mut out);
    let mut flows = Vec::with_capacity(out.len());
    for system in out {
        let mut cols = Vec::new();
        let mut paths = Vec::new();
        for (path, sink_idx) in system {
            cols.push(p.cols[sink_idx]);
            paths.push(path);
        }
        if cols != p.cols {
            return Err(Error::Internal(format!("flow for {p} pairs sources with sinks {cols:?}")));
        }
        flows.push(Flow { pair: p.clone(), paths });
    }
    Ok(flows)
}

fn extend_flows(
    g: &SeGraph,
    sources: &[usize],
    sinks: &[usize],
    used: &mut [bool],
    chosen: &mut Vec<(GPath, usize)>,
    out: &mut Vec<Vec<(GPath, usize)>>,
) {
    let l = chosen.len();
    if l == sources.len() {
        out.push(chosen.clone());
        return;
    }
    let s = sources[l];
    if used[s] {
        return;
    }
    used[s] = true;
    let mut stack = Vec::new();
    walk(g, s, sources, sinks, used, &mut stack, chosen, out);
    used[s] = false;
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &SeGraph,
    v: usize,
    sources: &[usize],
    sinks: &[usize],
    used: &mut [bool],
    stack: &mut Vec<usize>,
    chosen: &mut Vec<(GPath, usize)>,
    out: &mut Vec<Vec<(GPath, usize)>>,
) {
    if let Role::Sink(_) = g.role(v) {
        if let Some(k) = sinks.iter().position(|&t| t == v) {
            chosen.push((GPath::new(stack.clone()), k));
            extend_flows(g, sources, sinks, used, chosen, out);
            chosen.pop();
        }
        return;
    }
    let mut es = g.out_edges(v).to_vec();
    es.sort_unstable();
    for e in es {
        let h = g.edge(e).head;
        if used[h] {
            continue;
        }
        used[h] = true;
        stack.push(e);
        walk(g, h, sources, sinks, used, stack, chosen, out);
        stack.pop();
        used[h] = false;
    }
}

/// `w(phi)` as a single `q^d m`.
pub fn flow_weight_monomial(g: &SeGraph, f: &Flow) -> Result<(NcMonomial, i32)> {
    let t = g.commutation_table();
    let mut acc = (NcMonomial::one(), 0);
    for p in &f.paths {
        let (w, d) = path_weight(g, p)?;
        let (m, d2) = crate::algebra::nc_mul_mono(&acc.0, &w, t)?;
        acc = (m, acc.1 + d + d2);
    }
    Ok(acc)
}

/// Ordered product of the path weights of `f`.
pub fn flow_weight<C: Coeff>(g: &SeGraph, f: &Flow) -> Result<NcPolynomial<C>> {
    let (m, d) = flow_weight_monomial(g, f)?;
    Ok(NcPolynomial::from_qmonomial(m, d))
}

/// Inversion count of a permutation.
pub fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| p[a] > p[b])
        .count()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, free: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == free.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..free.len() {
            if free[x] {
                free[x] = false;
                cur.push(x);
                rec(cur, free, out);
                cur.pop();
                free[x] = true;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![true; k], &mut out);
    out
}

/// Quantum minor `sum_sigma (-q)^{inv(sigma)} a_{i_1 j_sigma(1)} ... a_{i_k j_sigma(k)}`.
///
/// `entries` is indexed from 0; `p` is 1-based.
pub fn qminor_det<C: Coeff>(
    entries: &[Vec<NcPolynomial<C>>],
    p: &IndexPair,
    t: &CommutationTable,
) -> Result<NcPolynomial<C>> {
    let k = p.len();
    if k > MAX_DET_ORDER {
        return Err(Error::OrderTooLarge(k));
    }
    let m = entries.len();
    let n = entries.first().map_or(0, |r| r.len());
    if entries.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameters("ragged matrix".into()));
    }
    p.check_fits(m, n)?;
    let mut acc = NcPolynomial::zero();
    for sigma in permutations(k) {
        let mut term = NcPolynomial::one();
        for (d, &s) in sigma.iter().enumerate() {
            let a = &entries[p.rows[d] - 1][p.cols[s] - 1];
            term = term.mul(a, t)?;
            if term.is_zero() {
                break;
            }
        }
        let inv = inversions(&sigma) as i32;
        let coeff = LaurentPoly::signed_q_pow(inv % 2 == 1, inv);
        acc = acc.add_ref(&term.scale(&coeff));
    }
    Ok(acc)
}

/// Quantum minor as a sum of flow weights.
pub fn qminor_flows<C: Coeff>(g: &SeGraph, p: &IndexPair) -> Result<NcPolynomial<C>> {
    let mut acc = NcPolynomial::zero();
    for f in enumerate_flows(g, p)? {
        let (m, d) = flow_weight_monomial(g, &f)?;
        acc.add_term(m, &LaurentPoly::q_pow(d));
    }
    Ok(acc)
}

/// The relations satisfied by the entries of a quantum matrix, for rows `i < l`
/// and columns `j < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ManinRelation {
    /// `x_ij x_ik = q x_ik x_ij`
    SameRow,
    /// `x_ij x_lj = q x_lj x_ij`
    SameColumn,
    /// `x_ik x_lj = x_lj x_ik`
    AntiDiagonal,
    /// `x_ij x_lk - x_lk x_ij = (q - q^-1) x_ik x_lj`
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManinFailure {
    pub relation: ManinRelation,
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManinReport {
    pub checked: usize,
    pub failure: Option<ManinFailure>,
}

impl ManinReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks every Manin relation on the path matrix of `g`; stops at the first failure.
pub fn check_manin<C: Coeff>(g: &SeGraph) -> Result<ManinReport> {
    let x = path_matrix::<C>(g)?;
    let t = g.commutation_table();
    let (m, n) = (g.m(), g.n());
    let prod = |a: &NcPolynomial<C>, b: &NcPolynomial<C>| a.mul(b, t);
    let qq = LaurentPoly::<C>::q_pow(1) - LaurentPoly::q_pow(-1);
    let mut checked = 0;
    let fail = |relation, rows, cols| ManinReport { checked: 0, failure: Some(ManinFailure { relation, rows, cols }) };
    for i in 0..m {
        for j in 0..n {
            for k in j + 1..n {
                checked += 1;
                if prod(&x[i][j], &x[i][k])? != prod(&x[i][k], &x[i][j])?.shift(1) {
                    return Ok(ManinReport { checked, ..fail(ManinRelation::SameRow, (i + 1, i + 1), (j + 1, k + 1)) });
                }
            }
            for l in i + 1..m {
                checked += 1;
                if prod(&x[i][j], &x[l][j])? != prod(&x[l][j], &x[i][j])?.shift(1) {
                    return Ok(ManinReport {
                        checked,
                        ..fail(ManinRelation::SameColumn, (i + 1, l + 1), (j + 1, j + 1))
                    });
                }
            }
        }
    }
    for i in 0..m {
        for l in i + 1..m {
            for j in 0..n {
                for k in j + 1..n {
                    checked += 1;
                    if prod(&x[i][k], &x[l][j])? != prod(&x[l][j], &x[i][k])? {
                        return Ok(ManinReport {
                            checked,
                            ..fail(ManinRelation::AntiDiagonal, (i + 1, l + 1), (j + 1, k + 1))
                        });
                    }
                    checked += 1;
                    let lhs = prod(&x[i][j], &x[l][k])?.sub_ref(&prod(&x[l][k], &x[i][j])?);
                    let rhs = prod(&x[i][k], &x[l][j])?.scale(&qq);
                    if lhs != rhs {
                        return Ok(ManinReport {
                            checked,
                            ..fail(ManinRelation::Diagonal, (i + 1, l + 1), (j + 1, k + 1))
                        });
                    }
                }
            }
        }
    }
    Ok(ManinReport { checked, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::grid;

    type P = NcPolynomial<i64>;

    fn pair(r: &[usize], c: &[usize]) -> IndexPair {
        IndexPair::new(r.to_vec(), c.to_vec()).unwrap()
    }

    #[test]
    fn entries_of_small_grid() {
        let g = grid(2, 2).unwrap();
        let t = g.commutation_table();
        assert_eq!(path_matrix_entry::<i64>(&g, 1, 1).unwrap().render(t), "t11");
        assert_eq!(path_matrix_entry::<i64>(&g, 2, 2).unwrap().render(t), "q*t11^-1*t12*t21 + t22");
    }

    #[test]
    fn flows_of_small_grid() {
        let g = grid(2, 2).unwrap();
        let t = g.commutation_table();
        let fs = enumerate_flows(&g, &pair(&[1, 2], &[1, 2])).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(flow_weight::<i64>(&g, &fs[0]).unwrap().render(t), "t11*t22");
        let empty = enumerate_flows(&g, &pair(&[], &[])).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(flow_weight::<i64>(&g, &empty[0]).unwrap(), P::one());
    }

    #[test]
    fn det_matches_flows_on_small_grids() {
        for (m, n, r, c) in [(2, 2, vec![1, 2], vec![1, 2]), (2, 3, vec![1, 2], vec![1, 3])] {
            let g = grid(m, n).unwrap();
            let x = path_matrix::<i64>(&g).unwrap();
            let p = pair(&r, &c);
            let a = qminor_det(&x, &p, g.commutation_table()).unwrap();
            let b = qminor_flows::<i64>(&g, &p).unwrap();
            assert_eq!(a, b);
        }
        let g = grid(2, 2).unwrap();
        let x = path_matrix::<i64>(&g).unwrap();
        let d = qminor_det(&x, &pair(&[1, 2], &[1, 2]), g.commutation_table()).unwrap();
        assert_eq!(d.render(g.commutation_table()), "t11*t22");
    }

    #[test]
    fn generic_two_by_two_det() {
        let names = ["x11", "x12", "x21", "x22"].map(String::from).to_vec();
        let t = CommutationTable::new(names);
        let x = |g: usize| P::from_qmonomial(NcMonomial::generator(g), 0);
        let entries = vec![vec![x(0), x(1)], vec![x(2), x(3)]];
        let d = qminor_det(&entries, &pair(&[1, 2], &[1, 2]), &t).unwrap();
        assert_eq!(d.render(&t), "x11*x22 - q*x12*x21");
        assert_eq!(qminor_det(&entries, &pair(&[2], &[1]), &t).unwrap(), x(2));
    }

    #[test]
    fn order_limit() {
        let t = CommutationTable::new(vec![]);
        let entries = vec![vec![P::one(); 7]; 7];
        let p = pair(&[1, 2, 3, 4, 5, 6, 7], &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(qminor_det(&entries, &p, &t), Err(Error::OrderTooLarge(7)));
    }

    #[test]
    fn manin_on_grids() {
        for (m, n) in [(1, 1), (1, 3), (2, 2), (3, 3)] {
            let r = check_manin::<i64>(&grid(m, n).unwrap()).unwrap();
            assert!(r.passed(), "{m}x{n}: {r:?}");
        }
    }
}
