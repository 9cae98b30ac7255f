//! Deciding q-balancedness of two families of corteges.
//!
//! Configurations `(S; M)` are grouped by the feasible matching `M`. For each
//! `M` a bipartite graph joins a left configuration `S` to a right one `T`
//! when `T` is the index exchange of `S` along some `Π ⊆ M` and
//! `beta(T) - alpha(S) = zeta_white - zeta_black`. The families are
//! q-balanced iff every such graph has a perfect matching.

use crate::bipartite::Bipartite;
use crate::cortege::{index_exchange, zeta, Cortege, Couple};
use crate::error::{Error, Result};
use crate::matchings::{enumerate_feasible, CircularMatching};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Default bound on the number of configurations for [`exists_exponents`].
pub const DEFAULT_CONFIG_CAP: usize = 2000;

/// A product `q^exp [I|J][I'|J']` of one side of an identity in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyTerm {
    pub cortege: Cortege,
    pub exp: i32,
}

impl FamilyTerm {
    pub fn new(cortege: Cortege, exp: i32) -> Self {
        Self { cortege, exp }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Lhs,
    Rhs,
}

/// `(S; M)` with `S` the `term`-th member of its family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub side: Side,
    pub term: usize,
    pub cortege: Cortege,
    pub exp: i32,
    pub matching: CircularMatching,
}

/// `I ∪ I'`, `I ∩ I'`, `J ∪ J'`, `J ∩ J'`.
fn ground_key(c: &Cortege) -> [Vec<usize>; 4] {
    [c.row_union(), c.common_rows(), c.col_union(), c.common_cols()]
}

/// Errors unless all corteges share unions and intersections of their row and column sets.
pub fn check_homogeneous<'a>(corteges: impl IntoIterator<Item = &'a Cortege>) -> Result<()> {
    let mut first: Option<(&Cortege, [Vec<usize>; 4])> = None;
    for c in corteges {
        let k = ground_key(c);
        match &first {
            None => first = Some((c, k)),
            Some((c0, k0)) if *k0 != k => {
                return Err(Error::Inhomogeneous(format!("{c0} and {c} differ in unions or intersections")))
            }
            _ => {}
        }
    }
    Ok(())
}

fn feasible_cached<'a>(
    cache: &'a mut HashMap<Cortege, Vec<CircularMatching>>,
    c: &Cortege,
) -> &'a Vec<CircularMatching> {
    cache.entry(c.clone()).or_insert_with(|| enumerate_feasible(c))
}

/// One configuration per term occurrence and feasible matching.
pub fn configurations(side: Side, family: &[FamilyTerm]) -> Result<Vec<Configuration>> {
    check_homogeneous(family.iter().map(|t| &t.cortege))?;
    let mut cache = HashMap::new();
    let mut out = Vec::new();
    for (k, t) in family.iter().enumerate() {
        for m in feasible_cached(&mut cache, &t.cortege) {
            out.push(Configuration { side, term: k, cortege: t.cortege.clone(), exp: t.exp, matching: m.clone() });
        }
    }
    Ok(out)
}

/// The couples of `m` whose colors differ between `s` and `t`, provided `t`
/// is the index exchange of `s` along them.
pub fn pi_between(s: &Cortege, t: &Cortege, m: &CircularMatching) -> Option<Vec<Couple>> {
    if !s.same_ground(t) {
        return None;
    }
    let mut pi = Vec::new();
    for cp in &m.couples {
        let a = (s.color(cp.0)?, t.color(cp.0)?);
        let b = (s.color(cp.1)?, t.color(cp.1)?);
        match (a.0 == a.1, b.0 == b.1) {
            (true, true) => {}
            (false, false) => pi.push(*cp),
            _ => return None,
        }
    }
    (index_exchange(s, &pi).ok()? == *t).then_some(pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "q-balanced")]
    QBalanced,
    #[serde(rename = "balanced-not-q-balanced")]
    BalancedNotQ,
    #[serde(rename = "unbalanced")]
    Unbalanced,
}

/// A matched pair of configurations sharing one matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairedConfig {
    pub lhs_term: usize,
    pub rhs_term: usize,
    pub exchanged: Vec<Couple>,
    pub zeta_white: usize,
    pub zeta_black: usize,
}

/// The bijection between configurations with matching `matching`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub matching: CircularMatching,
    pub pairs: Vec<PairedConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `matching` occurs a different number of times on the two sides.
    CountMismatch { matching: CircularMatching, lhs_terms: Vec<usize>, rhs_terms: Vec<usize> },
    /// The configurations of `matching` admit no bijection obeying the exponent condition.
    NoBijection { matching: CircularMatching, lhs_terms: Vec<usize>, rhs_terms: Vec<usize>, max_matched: usize },
}

impl Witness {
    pub fn matching(&self) -> &CircularMatching {
        match self {
            Witness::CountMismatch { matching, .. } | Witness::NoBijection { matching, .. } => matching,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub verdict: Verdict,
    pub lhs_configurations: usize,
    pub rhs_configurations: usize,
    /// Per-matching bijections; empty unless every matching has one.
    pub certificate: Vec<Block>,
    pub witness: Option<Witness>,
}

impl BalanceReport {
    pub fn is_q_balanced(&self) -> bool {
        self.verdict == Verdict::QBalanced
    }

    pub fn is_balanced(&self) -> bool {
        self.verdict != Verdict::Unbalanced
    }
}

/// Term indices per matching, for both sides.
type Groups = BTreeMap<CircularMatching, (Vec<usize>, Vec<usize>)>;

fn group(lhs: &[FamilyTerm], rhs: &[FamilyTerm]) -> Result<(Groups, usize, usize)> {
    check_homogeneous(lhs.iter().chain(rhs).map(|t| &t.cortege))?;
    let mut cache = HashMap::new();
    let mut groups: Groups = BTreeMap::new();
    let (mut nl, mut nr) = (0, 0);
    for (k, t) in lhs.iter().enumerate() {
        for m in feasible_cached(&mut cache, &t.cortege).clone() {
            groups.entry(m).or_default().0.push(k);
            nl += 1;
        }
    }
    for (k, t) in rhs.iter().enumerate() {
        for m in feasible_cached(&mut cache, &t.cortege).clone() {
            groups.entry(m).or_default().1.push(k);
            nr += 1;
        }
    }
    Ok((groups, nl, nr))
}

enum BlockOutcome {
    Ok(Block),
    Fail(Witness),
}

fn solve_block(
    m: &CircularMatching,
    ls: &[usize],
    rs: &[usize],
    lhs: &[FamilyTerm],
    rhs: &[FamilyTerm],
    with_exp: bool,
) -> BlockOutcome {
    if ls.len() != rs.len() {
        return BlockOutcome::Fail(Witness::CountMismatch {
            matching: m.clone(),
            lhs_terms: ls.to_vec(),
            rhs_terms: rs.to_vec(),
        });
    }
    let mut bip = Bipartite::new(ls.len(), rs.len());
    let mut info: HashMap<(usize, usize), (Vec<Couple>, usize, usize)> = HashMap::new();
    for (a, &s) in ls.iter().enumerate() {
        for (b, &t) in rs.iter().enumerate() {
            let (sc, tc) = (&lhs[s].cortege, &rhs[t].cortege);
            let Some(pi) = pi_between(sc, tc, m) else { continue };
            let (zw, zb) = zeta(sc, &pi).expect("couples of a feasible matching");
            if with_exp && rhs[t].exp - lhs[s].exp != zw as i32 - zb as i32 {
                continue;
            }
            bip.add_edge(a, b);
            info.insert((a, b), (pi, zw, zb));
        }
    }
    let mate = bip.maximum_matching();
    let matched = mate.iter().filter(|x| x.is_some()).count();
    if matched < ls.len() {
        return BlockOutcome::Fail(Witness::NoBijection {
            matching: m.clone(),
            lhs_terms: ls.to_vec(),
            rhs_terms: rs.to_vec(),
            max_matched: matched,
        });
    }
    let pairs = mate
        .iter()
        .enumerate()
        .map(|(a, b)| {
            let b = b.expect("perfect");
            let (pi, zw, zb) = info.remove(&(a, b)).expect("edge");
            PairedConfig { lhs_term: ls[a], rhs_term: rs[b], exchanged: pi, zeta_white: zw, zeta_black: zb }
        })
        .collect();
    BlockOutcome::Ok(Block { matching: m.clone(), pairs })
}

fn run(lhs: &[FamilyTerm], rhs: &[FamilyTerm], with_exp: bool) -> Result<(BalanceReport, bool)> {
    let (groups, nl, nr) = group(lhs, rhs)?;
    let entries: Vec<_> = groups.iter().collect();
    let outcomes: Vec<BlockOutcome> = entries
        .par_iter()
        .map(|(m, (ls, rs))| solve_block(m, ls, rs, lhs, rhs, with_exp))
        .collect();
    let mut certificate = Vec::new();
    let mut mismatch = None;
    let mut no_bijection = None;
    for o in outcomes {
        match o {
            BlockOutcome::Ok(b) => certificate.push(b),
            BlockOutcome::Fail(w @ Witness::CountMismatch { .. }) => {
                mismatch.get_or_insert(w);
            }
            BlockOutcome::Fail(w) => {
                no_bijection.get_or_insert(w);
            }
        }
    }
    let balanced = mismatch.is_none();
    let (verdict, witness) = match (mismatch, no_bijection) {
        (Some(w), _) => (Verdict::Unbalanced, Some(w)),
        (None, Some(w)) => (Verdict::BalancedNotQ, Some(w)),
        (None, None) => (Verdict::QBalanced, None),
    };
    if witness.is_some() {
        certificate.clear();
    }
    Ok((BalanceReport { verdict, lhs_configurations: nl, rhs_configurations: nr, certificate, witness }, balanced))
}

/// Decides whether `sum_lhs q^a [I|J][I'|J'] = sum_rhs q^b [K|L][K'|L']` is q-balanced.
pub fn check_q_balanced(lhs: &[FamilyTerm], rhs: &[FamilyTerm]) -> Result<BalanceReport> {
    Ok(run(lhs, rhs, true)?.0)
}

/// Balancedness ignoring exponents. The verdict separates q-balanced inputs from
/// merely balanced ones; the certificate, when present, ignores exponents.
pub fn check_balanced(lhs: &[FamilyTerm], rhs: &[FamilyTerm]) -> Result<BalanceReport> {
    let (plain, balanced) = run(lhs, rhs, false)?;
    if !balanced {
        return Ok(plain);
    }
    let with_exp = check_q_balanced(lhs, rhs)?;
    Ok(BalanceReport { verdict: with_exp.verdict, witness: with_exp.witness, ..plain })
}

/// Potentials `p` with constraints `p[b] - p[a] = d`, supporting undo.
struct Potentials {
    parent: Vec<usize>,
    diff: Vec<i64>,
    size: Vec<usize>,
    undo: Vec<(usize, usize)>,
}

impl Potentials {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), diff: vec![0; n], size: vec![1; n], undo: Vec::new() }
    }

    /// `(root, p[x] - p[root])`.
    fn find(&self, mut x: usize) -> (usize, i64) {
        let mut d = 0;
        while self.parent[x] != x {
            d += self.diff[x];
            x = self.parent[x];
        }
        (x, d)
    }

    /// Adds `p[b] - p[a] = d`; returns false (and changes nothing) on conflict.
    fn relate(&mut self, a: usize, b: usize, d: i64) -> bool {
        let (ra, da) = self.find(a);
        let (rb, db) = self.find(b);
        if ra == rb {
            self.undo.push((usize::MAX, usize::MAX));
            return db - da == d;
        }
        // p[rb] - p[ra] = d + da - db
        let off = d + da - db;
        let (child, root, delta) = if self.size[ra] >= self.size[rb] { (rb, ra, off) } else { (ra, rb, -off) };
        self.parent[child] = root;
        self.diff[child] = delta;
        self.size[root] += self.size[child];
        self.undo.push((child, root));
        true
    }

    fn rollback(&mut self) {
        if let Some((child, root)) = self.undo.pop() {
            if child != usize::MAX {
                self.parent[child] = child;
                self.diff[child] = 0;
                self.size[root] -= self.size[child];
            }
        }
    }
}

/// Left terms, right terms and the exponent gap table of one matching.
type GapBlock = (Vec<usize>, Vec<usize>, Vec<Vec<Option<i32>>>);

struct Search<'a> {
    blocks: &'a [GapBlock],
    nl: usize,
    pot: Potentials,
    used: Vec<Vec<bool>>,
}

impl Search<'_> {
    fn go(&mut self, bk: usize, a: usize) -> bool {
        if bk == self.blocks.len() {
            return true;
        }
        let (ls, rs, z) = &self.blocks[bk];
        if a == ls.len() {
            return self.go(bk + 1, 0);
        }
        for b in 0..rs.len() {
            if self.used[bk][b] {
                continue;
            }
            let Some(d) = z[a][b] else { continue };
            let ok = self.pot.relate(ls[a], self.nl + rs[b], d as i64);
            if ok {
                self.used[bk][b] = true;
                if self.go(bk, a + 1) {
                    return true;
                }
                self.used[bk][b] = false;
            }
            self.pot.rollback();
        }
        false
    }
}

/// Searches integer exponents making the families q-balanced.
///
/// Exhaustive backtracking over per-matching bijections with incremental
/// consistency of the difference constraints; exponential in the worst case.
/// Exponents are normalized so the first member of each connected group of
/// terms gets 0.
pub fn exists_exponents(lhs: &[Cortege], rhs: &[Cortege], cap: usize) -> Result<Option<(Vec<i32>, Vec<i32>)>> {
    let lt: Vec<FamilyTerm> = lhs.iter().map(|c| FamilyTerm::new(c.clone(), 0)).collect();
    let rt: Vec<FamilyTerm> = rhs.iter().map(|c| FamilyTerm::new(c.clone(), 0)).collect();
    let (groups, nl, nr) = group(&lt, &rt)?;
    if nl + nr > cap {
        return Err(Error::CapExceeded(cap));
    }
    if nl != nr || groups.values().any(|(a, b)| a.len() != b.len()) {
        return Ok(None);
    }
    let mut blocks: Vec<GapBlock> = groups
        .iter()
        .map(|(m, (ls, rs))| {
            let z = ls
                .iter()
                .map(|&s| {
                    rs.iter()
                        .map(|&t| {
                            pi_between(&lhs[s], &rhs[t], m).map(|pi| {
                                let (w, b) = zeta(&lhs[s], &pi).expect("feasible couples");
                                w as i32 - b as i32
                            })
                        })
                        .collect()
                })
                .collect();
            (ls.clone(), rs.clone(), z)
        })
        .collect();
    blocks.sort_by_key(|b| b.0.len());
    let n = lhs.len() + rhs.len();
    let mut search = Search {
        blocks: &blocks,
        nl: lhs.len(),
        pot: Potentials::new(n),
        used: blocks.iter().map(|b| vec![false; b.1.len()]).collect(),
    };
    if !search.go(0, 0) {
        return Ok(None);
    }
    let pot = &search.pot;
    let mut base: HashMap<usize, i64> = HashMap::new();
    let mut vals = Vec::with_capacity(n);
    for x in 0..n {
        let (r, d) = pot.find(x);
        let b = *base.entry(r).or_insert(d);
        vals.push((d - b) as i32);
    }
    let (a, b) = vals.split_at(lhs.len());
    Ok(Some((a.to_vec(), b.to_vec())))
}
