//! Feasible matchings on the circular diagram of a cortege.
//!
//! The ground set `Y_R ⊔ Y_C` is laid out on a circle: rows ascending along the
//! upper arc, then columns descending along the lower arc. A matching is
//! feasible when same-kind couples join different colors, row-column couples
//! join equal colors, and no two chords cross.

use crate::cortege::{Color, Cortege, Couple, CoupleKind, Elem};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A perfect matching of `Y_R ⊔ Y_C`, couples kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CircularMatching {
    pub couples: Vec<Couple>,
}

impl CircularMatching {
    pub fn new(mut couples: Vec<Couple>) -> Self {
        couples.sort();
        Self { couples }
    }

    pub fn empty() -> Self {
        Self { couples: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.couples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.couples.is_empty()
    }

    pub fn partner(&self, e: Elem) -> Option<Elem> {
        self.couples.iter().find_map(|c| c.other(e))
    }

    pub fn contains(&self, c: &Couple) -> bool {
        self.couples.contains(c)
    }
}

impl fmt::Display for CircularMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.couples.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Whether the pair may form a couple in a feasible matching.
fn admissible(c: &Cortege, a: Elem, b: Elem) -> bool {
    match (c.color(a), c.color(b)) {
        (Some(x), Some(y)) => match Couple::new(a, b).kind() {
            CoupleKind::RC => x == y,
            _ => x != y,
        },
        _ => false,
    }
}

/// Chords `{a, b}` and `{p, r}` (circle positions) cross.
pub(crate) fn chords_cross(a: usize, b: usize, p: usize, r: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let (p, r) = (p.min(r), p.max(r));
    (a < p && p < b && b < r) || (p < a && a < r && r < b)
}

/// Feasibility of `m` for `c`; errors if `m` is not a perfect matching of the ground set.
pub fn is_feasible(m: &CircularMatching, c: &Cortege) -> Result<bool> {
    let circle = c.circle();
    let mut covered = BTreeSet::new();
    for cp in &m.couples {
        for e in [cp.0, cp.1] {
            if !circle.contains(&e) {
                return Err(Error::NotInGroundSet(e.to_string()));
            }
            if !covered.insert(e) {
                return Err(Error::InvalidParameters(format!("{e} is covered twice")));
            }
        }
    }
    if covered.len() != circle.len() {
        return Err(Error::InvalidParameters("matching is not perfect".into()));
    }
    if m.couples.iter().any(|cp| !admissible(c, cp.0, cp.1)) {
        return Ok(false);
    }
    let pos = |e: Elem| circle.iter().position(|&x| x == e).expect("covered");
    let chords: Vec<(usize, usize)> = m.couples.iter().map(|cp| (pos(cp.0), pos(cp.1))).collect();
    for (k, &(a, b)) in chords.iter().enumerate() {
        for &(p, r) in &chords[k + 1..] {
            if chords_cross(a, b, p, r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All feasible matchings, by matching the first position of each arc segment
/// to every admissible partner and recursing on both sides of the chord.
pub fn enumerate_feasible(c: &Cortege) -> Vec<CircularMatching> {
    let circle = c.circle();
    let mut out: Vec<CircularMatching> = segment(c, &circle)
        .into_iter()
        .map(CircularMatching::new)
        .collect();
    out.sort();
    out
}

fn segment(c: &Cortege, s: &[Elem]) -> Vec<Vec<Couple>> {
    if s.is_empty() {
        return vec![Vec::new()];
    }
    if s.len() % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in (1..s.len()).step_by(2) {
        if !admissible(c, s[0], s[p]) {
            continue;
        }
        let inner = segment(c, &s[1..p]);
        if inner.is_empty() {
            continue;
        }
        let outer = segment(c, &s[p + 1..]);
        for a in &inner {
            for b in &outer {
                let mut v = Vec::with_capacity(s.len() / 2);
                v.push(Couple::new(s[0], s[p]));
                v.extend_from_slice(a);
                v.extend_from_slice(b);
                out.push(v);
            }
        }
    }
    out
}

/// Pairs the minority color of `whites`/`blacks` greedily by nearest index;
/// returns the couples and the unmatched elements of the majority color.
fn pair_nearest(whites: &[usize], blacks: &[usize], mk: fn(usize) -> Elem) -> (Vec<Couple>, Vec<usize>) {
    let (mut major, mut minor) = if whites.len() >= blacks.len() {
        (whites.to_vec(), blacks.to_vec())
    } else {
        (blacks.to_vec(), whites.to_vec())
    };
    let mut couples = Vec::new();
    while !minor.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (a, &x) in major.iter().enumerate() {
            for (b, &y) in minor.iter().enumerate() {
                let d = x.abs_diff(y);
                if best.is_none_or(|(bd, ba, bb)| (d, x, y) < (bd, major[ba], minor[bb])) {
                    best = Some((d, a, b));
                }
            }
        }
        let (_, a, b) = best.expect("both sides nonempty");
        couples.push(Couple::new(mk(major.remove(a)), mk(minor.remove(b))));
    }
    (couples, major)
}

/// One feasible matching: nearest opposite-color rows, then columns, then the
/// remaining rows and columns (all of one color) paired in nested order.
pub fn greedy_feasible(c: &Cortege) -> Result<CircularMatching> {
    if c.ground_size() == 0 {
        return Err(Error::InvalidParameters("empty ground set".into()));
    }
    let (wr, br) = (c.white_rows(), c.black_rows());
    let (wc, bc) = (c.white_cols(), c.black_cols());
    if wr.len() as i64 - br.len() as i64 != wc.len() as i64 - bc.len() as i64 {
        return Err(Error::InvalidParameters(format!("cortege {c} is not balanced")));
    }
    let (mut couples, rows_left) = pair_nearest(&wr, &br, Elem::Row);
    let (col_couples, cols_left) = pair_nearest(&wc, &bc, Elem::Col);
    couples.extend(col_couples);
    // Leftmost remaining row with leftmost remaining column, and so on.
    for (r, k) in rows_left.iter().zip(cols_left.iter()) {
        couples.push(Couple::new(Elem::Row(*r), Elem::Col(*k)));
    }
    let m = CircularMatching::new(couples);
    if !is_feasible(&m, c)? {
        return Err(Error::Internal(format!("greedy matching {m} infeasible for {c}")));
    }
    Ok(m)
}

/// Colors of the ground set under `c`, for diagnostics.
pub fn colored_circle(c: &Cortege) -> Vec<(Elem, Color)> {
    c.circle().into_iter().map(|e| (e, c.color(e).expect("ground element"))).collect()
}
