use super::table::CommutationTable;
use crate::error::Result;
use std::fmt::Write as _;

/// Ordered product `x_{g1}^{e1} ... x_{gk}^{ek}` with `g1 < ... < gk` and nonzero exponents.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NcMonomial {
    exps: Vec<(usize, i32)>,
}

impl NcMonomial {
    pub fn one() -> Self {
        Self { exps: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        Self { exps: vec![(g, 1)] }
    }

    pub fn power(g: usize, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Self { exps: vec![(g, e)] }
        }
    }

    /// Builds the normal form from arbitrary `(generator, exponent)` pairs, read as
    /// an already-ordered product: pairs are sorted and merged, zero exponents dropped.
    pub fn from_sorted_pairs(pairs: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut v: Vec<(usize, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut exps: Vec<(usize, i32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => exps.push((g, e)),
            }
        }
        exps.retain(|p| p.1 != 0);
        Self { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(usize, i32)] {
        &self.exps
    }

    pub fn exponent(&self, g: usize) -> i32 {
        self.exps.iter().find(|p| p.0 == g).map_or(0, |p| p.1)
    }

    pub fn degree(&self) -> i32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn render(&self, t: &CommutationTable) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (k, (g, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                s.push('*');
            }
            s.push_str(t.name(*g));
            if *e != 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }
}

/// Normal form of `a * b`: returns `(m, d)` with `a b = q^d m`.
///
/// Letters of `b` are moved left past the larger letters of `a`; each swap of
/// `u^x` (from `a`) with `v^y` (from `b`), `u > v`, contributes `x y c(u, v)`.
pub fn nc_mul_mono(a: &NcMonomial, b: &NcMonomial, t: &CommutationTable) -> Result<(NcMonomial, i32)> {
    for (g, _) in a.exps.iter().chain(b.exps.iter()) {
        t.check(*g)?;
    }
    Ok(nc_mul_mono_unchecked(a, b, t))
}

pub(crate) fn nc_mul_mono_unchecked(a: &NcMonomial, b: &NcMonomial, t: &CommutationTable) -> (NcMonomial, i32) {
    let mut d = 0i32;
    for (u, x) in &a.exps {
        for (v, y) in &b.exps {
            if v >= u {
                break;
            }
            d += x * y * i32::from(t.get(*u, *v));
        }
    }
    let mut exps = Vec::with_capacity(a.exps.len() + b.exps.len());
    let (mut i, mut j) = (0, 0);
    while i < a.exps.len() || j < b.exps.len() {
        if j == b.exps.len() || (i < a.exps.len() && a.exps[i].0 < b.exps[j].0) {
            exps.push(a.exps[i]);
            i += 1;
        } else if i == a.exps.len() || b.exps[j].0 < a.exps[i].0 {
            exps.push(b.exps[j]);
            j += 1;
        } else {
            let e = a.exps[i].1 + b.exps[j].1;
            if e != 0 {
                exps.push((a.exps[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    (NcMonomial { exps }, d)
}
