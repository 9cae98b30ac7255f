//! Transformations of identities that preserve validity.

use super::{IdentityTerm, QuadraticIdentity};
use crate::cortege::{Color, Cortege, Couple, Elem};
use crate::error::{Error, Result};
use crate::flows::check_set;
use crate::matchings::CircularMatching;
use std::collections::BTreeMap;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn map_terms(id: &QuadraticIdentity, f: impl Fn(&IdentityTerm) -> Result<IdentityTerm>) -> Result<(Vec<IdentityTerm>, Vec<IdentityTerm>)> {
    Ok((id.lhs.iter().map(&f).collect::<Result<_>>()?, id.rhs.iter().map(&f).collect::<Result<_>>()?))
}

/// Every product reversed and every exponent negated.
pub fn reverse(id: &QuadraticIdentity) -> QuadraticIdentity {
    let f = |t: &IdentityTerm| IdentityTerm::new(t.cortege.reversed(), t.sign, -t.qexp);
    QuadraticIdentity { m: id.m, n: id.n, lhs: id.lhs.iter().map(f).collect(), rhs: id.rhs.iter().map(f).collect() }
}

/// Rows and columns exchanged.
pub fn transpose(id: &QuadraticIdentity) -> QuadraticIdentity {
    let f = |t: &IdentityTerm| IdentityTerm::new(t.cortege.transposed(), t.sign, t.qexp);
    QuadraticIdentity { m: id.n, n: id.m, lhs: id.lhs.iter().map(f).collect(), rhs: id.rhs.iter().map(f).collect() }
}

type Ground = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

/// `(Y_R, X_R, Y_C, X_C)` shared by all terms, or `None` for an empty identity.
fn ground(id: &QuadraticIdentity) -> Option<Ground> {
    let c = &id.terms().next()?.cortege;
    Some((c.y_rows(), c.common_rows(), c.y_cols(), c.common_cols()))
}

/// New positions for the index sets of an identity.
///
/// `rows` replaces `Y_R = I △ I'` (order preserving) and `common_rows`
/// replaces `I ∩ I'`; likewise for columns. Sizes of `rows` and `cols` must be
/// kept, and `|common_rows| - |common_cols|` must not change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<usize>,
    pub common_rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub common_cols: Vec<usize>,
}

/// Re-embeds the index sets; validity and q-balancedness are unchanged.
pub fn relabel(id: &QuadraticIdentity, r: &Relabeling) -> Result<QuadraticIdentity> {
    id.validate()?;
    let Some((yr, xr, yc, xc)) = ground(id) else {
        return QuadraticIdentity::with_size(r.m, r.n, vec![], vec![]);
    };
    for (s, b) in [(&r.rows, r.m), (&r.common_rows, r.m), (&r.cols, r.n), (&r.common_cols, r.n)] {
        check_set(s, b)?;
    }
    if r.rows.len() != yr.len() || r.cols.len() != yc.len() {
        return Err(bad("relabeling must keep the sizes of the symmetric differences"));
    }
    if r.rows.iter().any(|x| r.common_rows.contains(x)) || r.cols.iter().any(|x| r.common_cols.contains(x)) {
        return Err(bad("relabeled differences and intersections must be disjoint"));
    }
    if r.common_rows.len() as i64 - r.common_cols.len() as i64 != xr.len() as i64 - xc.len() as i64 {
        return Err(bad("relabeling must keep |I ∩ I'| - |J ∩ J'|"));
    }
    let nu: BTreeMap<usize, usize> = yr.iter().copied().zip(r.rows.iter().copied()).collect();
    let mu: BTreeMap<usize, usize> = yc.iter().copied().zip(r.cols.iter().copied()).collect();
    let side = |s: &[usize], f: &BTreeMap<usize, usize>, common: &[usize], old_common: &[usize]| {
        let mut v: Vec<usize> = s.iter().filter(|x| !old_common.contains(x)).map(|x| f[x]).collect();
        v.extend_from_slice(common);
        v.sort_unstable();
        v
    };
    let (lhs, rhs) = map_terms(id, |t| {
        let c = &t.cortege;
        let out = Cortege::new(
            side(&c.i, &nu, &r.common_rows, &xr),
            side(&c.j, &mu, &r.common_cols, &xc),
            side(&c.ip, &nu, &r.common_rows, &xr),
            side(&c.jp, &mu, &r.common_cols, &xc),
        )?;
        Ok(IdentityTerm::new(out, t.sign, t.qexp))
    })?;
    QuadraticIdentity::with_size(r.m, r.n, lhs, rhs)
}

/// Adds `dr` to every row index and `dc` to every column index, enlarging `m` and `n`.
pub fn shift(id: &QuadraticIdentity, dr: usize, dc: usize) -> Result<QuadraticIdentity> {
    let Some((yr, xr, yc, xc)) = ground(id) else {
        return QuadraticIdentity::with_size(id.m + dr, id.n + dc, vec![], vec![]);
    };
    let up = |s: &[usize], d: usize| s.iter().map(|x| x + d).collect::<Vec<_>>();
    relabel(
        id,
        &Relabeling {
            m: id.m + dr,
            n: id.n + dc,
            rows: up(&yr, dr),
            common_rows: up(&xr, dr),
            cols: up(&yc, dc),
            common_cols: up(&xc, dc),
        },
    )
}

/// `dr` free rows and `dc` free columns on both sides of the used indices.
pub fn pad(id: &QuadraticIdentity, dr: usize, dc: usize) -> Result<QuadraticIdentity> {
    let mut out = shift(id, dr, dc)?;
    out.m += dr;
    out.n += dc;
    Ok(out)
}

/// The `(g, h)` rotation of a homogeneous family.
///
/// For `g > 0` the first `g` elements of `Y_R` move to fresh columns just
/// below `Y_C`; for `g < 0` the first `|g|` elements of `Y_C` move to fresh
/// rows just below `Y_R`. `h` does the same at the top ends. Moved elements
/// change color, the bijections between old and new positions reverse order,
/// and fresh common rows or columns keep `|I| = |J|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub g: i32,
    pub h: i32,
    /// `A`, `B`, `A'`, `B'` as row and column index sets.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub ap: Vec<usize>,
    pub bp: Vec<usize>,
    pub extra_rows: Vec<usize>,
    pub extra_cols: Vec<usize>,
    rho: BTreeMap<Elem, Elem>,
}

/// `k` free indices in `1..=bound` nearest to `anchor` from below (`down`) or above.
fn nearest_free(k: usize, anchor: usize, down: bool, taken: &[usize], bound: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut x = anchor;
    while out.len() < k {
        x = if down {
            x.checked_sub(1).filter(|&v| v >= 1).ok_or_else(|| bad("no room for the rotation margin below"))?
        } else {
            x + 1
        };
        if x > bound {
            return Err(bad("no room for the rotation margin above"));
        }
        if !taken.contains(&x) {
            out.push(x);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Just below `y`, or the lowest free indices when `y` is empty.
fn below(k: usize, y: &[usize], taken: &[usize], bound: usize) -> Result<Vec<usize>> {
    match y.first() {
        Some(&lo) => nearest_free(k, lo, true, taken, bound),
        None => nearest_free(k, 0, false, taken, bound),
    }
}

impl Rotation {
    #[allow(clippy::too_many_arguments)]
    /// Plans the rotation for ground sets `Y_R`, `Y_C` and intersections `X_R`, `X_C` inside `m x n`.
    pub fn new(yr: &[usize], xr: &[usize], yc: &[usize], xc: &[usize], m: usize, n: usize, g: i32, h: i32) -> Result<Self> {
        let (k, kp) = (yr.len() as i32, yc.len() as i32);
        let ok = match (g >= 0, h >= 0) {
            (true, true) => g + h <= k,
            (false, false) => -g - h <= kp,
            (true, false) => g <= k && -h <= kp,
            (false, true) => -g <= kp && h <= k,
        };
        if !ok {
            return Err(bad(format!("(g, h) = ({g}, {h}) out of range for |Y_R| = {k}, |Y_C| = {kp}")));
        }
        let (gu, hu) = (g.unsigned_abs() as usize, h.unsigned_abs() as usize);
        let (mut a, mut b, mut ap, mut bp) = (vec![], vec![], vec![], vec![]);
        // Fresh indices must avoid the intersections and the untouched ground.
        let mut rows_taken: Vec<usize> = xr.iter().chain(yr).copied().collect();
        let mut cols_taken: Vec<usize> = xc.iter().chain(yc).copied().collect();
        if g > 0 {
            a = yr[..gu].to_vec();
            ap = below(gu, yc, &cols_taken, n)?;
            cols_taken.extend(&ap);
        } else if g < 0 {
            ap = yc[..gu].to_vec();
            a = below(gu, yr, &rows_taken, m)?;
            rows_taken.extend(&a);
        }
        if h > 0 {
            b = yr[yr.len() - hu..].to_vec();
            let top = yc.last().or(ap.last()).copied().unwrap_or(0);
            bp = nearest_free(hu, top, false, &cols_taken, n)?;
            cols_taken.extend(&bp);
        } else if h < 0 {
            bp = yc[yc.len() - hu..].to_vec();
            let top = yr.last().or(a.last()).copied().unwrap_or(0);
            b = nearest_free(hu, top, false, &rows_taken, m)?;
            rows_taken.extend(&b);
        }
        let mut rho = BTreeMap::new();
        let mut pair = |rows: &[usize], cols: &[usize], rows_move: bool| {
            for (l, &r) in rows.iter().enumerate() {
                let c = cols[cols.len() - 1 - l];
                if rows_move {
                    rho.insert(Elem::Row(r), Elem::Col(c));
                } else {
                    rho.insert(Elem::Col(c), Elem::Row(r));
                }
            }
        };
        pair(&a, &ap, g > 0);
        pair(&b, &bp, h > 0);
        let to_cols = g.max(0) + h.max(0);
        let to_rows = (-g).max(0) + (-h).max(0);
        let (extra_rows, extra_cols) = match to_cols.cmp(&to_rows) {
            std::cmp::Ordering::Greater => {
                (nearest_free((to_cols - to_rows) as usize, 0, false, &rows_taken, m)?, vec![])
            }
            std::cmp::Ordering::Less => (vec![], nearest_free((to_rows - to_cols) as usize, 0, false, &cols_taken, n)?),
            std::cmp::Ordering::Equal => (vec![], vec![]),
        };
        Ok(Self { g, h, a, b, ap, bp, extra_rows, extra_cols, rho })
    }

    /// Plans the rotation of `id`.
    pub fn plan(id: &QuadraticIdentity, g: i32, h: i32) -> Result<Self> {
        id.validate()?;
        let (yr, xr, yc, xc) = ground(id).unwrap_or_default();
        Self::new(&yr, &xr, &yc, &xc, id.m, id.n, g, h)
    }

    /// `rho(e)`.
    pub fn elem(&self, e: Elem) -> Elem {
        self.rho.get(&e).copied().unwrap_or(e)
    }

    pub fn matching(&self, m: &CircularMatching) -> CircularMatching {
        CircularMatching::new(m.couples.iter().map(|c| Couple::new(self.elem(c.0), self.elem(c.1))).collect())
    }

    /// The rotated cortege.
    pub fn cortege(&self, s: &Cortege) -> Result<Cortege> {
        let mut rows = [s.common_rows(), s.common_rows()];
        let mut cols = [s.common_cols(), s.common_cols()];
        for r in &mut rows {
            r.extend(&self.extra_rows);
        }
        for c in &mut cols {
            c.extend(&self.extra_cols);
        }
        for e in s.circle() {
            let color = s.color(e).expect("ground element");
            let t = self.elem(e);
            let color = if t.is_row() == e.is_row() { color } else { color.flip() };
            let side = usize::from(color == Color::Black);
            match t {
                Elem::Row(x) => rows[side].push(x),
                Elem::Col(x) => cols[side].push(x),
            }
        }
        let [mut i, mut ip] = rows;
        let [mut j, mut jp] = cols;
        for v in [&mut i, &mut ip, &mut j, &mut jp] {
            v.sort_unstable();
        }
        Cortege::new(i, j, ip, jp)
    }

    /// `omega(S) = |A ∩ I°| + |A' ∩ J°| - |B ∩ I°| - |B' ∩ J°|`.
    pub fn omega(&self, s: &Cortege) -> i32 {
        let (iw, jw) = (s.white_rows(), s.white_cols());
        let count = |set: &[usize], white: &[usize]| set.iter().filter(|x| white.contains(x)).count() as i32;
        count(&self.a, &iw) + count(&self.ap, &jw) - count(&self.b, &iw) - count(&self.bp, &jw)
    }
}

/// The `(g, h)` rotation of `id`, with exponents shifted by `omega`.
pub fn rotate(id: &QuadraticIdentity, g: i32, h: i32) -> Result<QuadraticIdentity> {
    let plan = Rotation::plan(id, g, h)?;
    let (lhs, rhs) = map_terms(id, |t| {
        Ok(IdentityTerm::new(plan.cortege(&t.cortege)?, t.sign, t.qexp + plan.omega(&t.cortege)))
    })?;
    QuadraticIdentity::with_size(id.m, id.n, lhs, rhs)
}
