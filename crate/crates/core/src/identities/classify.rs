//! When do two minors quasicommute, and when do they commute.

use crate::cortege::{zeta, Cortege, Couple, Elem};
use crate::error::{Error, Result};
use crate::flows::check_set;
use crate::matchings::{enumerate_feasible, is_feasible, CircularMatching};

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

/// Every element of `a` is below every element of `b`.
fn before(a: &[usize], b: &[usize]) -> bool {
    match (a.last(), b.first()) {
        (Some(x), Some(y)) => x < y,
        _ => true,
    }
}

/// `(|O1|, |O2|)` for a split `outer = O1 ∪ O2` with `O1 < inner < O2`.
fn split(outer: &[usize], inner: &[usize]) -> Option<(usize, usize)> {
    let (Some(&lo), Some(&hi)) = (inner.first(), inner.last()) else {
        return outer.is_empty().then_some((0, 0));
    };
    if outer.iter().any(|&x| lo < x && x < hi) {
        return None;
    }
    let below = outer.iter().filter(|&&x| x < lo).count();
    Some((below, outer.len() - below))
}

/// `J - I = J1 ∪ J2` with `J1 < I - J < J2`, taking `|I| >= |J|`; on equal
/// sizes either orientation will do.
pub fn weakly_separated(i: &[usize], j: &[usize]) -> bool {
    let one = |big: &[usize], small: &[usize]| split(&minus(small, big), &minus(big, small)).is_some();
    (i.len() >= j.len() && one(i, j)) || (j.len() >= i.len() && one(j, i))
}

/// `zeta_white - zeta_black` of the exchange along all of `m`.
pub fn zeta_difference(c: &Cortege, m: &CircularMatching) -> Result<i32> {
    let (w, b) = zeta(c, &m.couples)?;
    Ok(w as i32 - b as i32)
}

/// The exponent `c` in `[I|J][I'|J'] = q^c [I'|J'][I|J]`, reading `c` as given,
/// with `|I| >= |I'|`; `None` if the criterion fails in this orientation.
pub fn quasicommute_oriented(c: &Cortege) -> Option<i32> {
    if c.i.len() < c.ip.len() {
        return None;
    }
    let (iw, ib, jw, jb) = (c.white_rows(), c.black_rows(), c.white_cols(), c.black_cols());
    let rows = split(&ib, &iw)?;
    let cols = split(&jb, &jw)?;
    let d = |(a, b): (usize, usize)| b as i32 - a as i32;
    match (ib.is_empty(), jb.is_empty()) {
        (true, _) => Some(d(cols)),
        (false, true) => Some(d(rows)),
        (false, false) => {
            if before(&iw, &ib) && before(&jb, &jw) {
                Some(ib.len() as i32 - jb.len() as i32)
            } else if before(&ib, &iw) && before(&jw, &jb) {
                Some(jb.len() as i32 - ib.len() as i32)
            } else {
                None
            }
        }
    }
}

/// `c` with `[I|J][I'|J'] = q^c [I'|J'][I|J]`, if the minors quasicommute.
///
/// On `|I| = |I'|` both orientations are evaluated; an orientation where the
/// criterion fails is ignored, and two applicable orientations must agree.
pub fn quasicommute(c: &Cortege) -> Option<i32> {
    let here = || quasicommute_oriented(c);
    let there = || quasicommute_oriented(&c.reversed()).map(|x| -x);
    match c.i.len().cmp(&c.ip.len()) {
        std::cmp::Ordering::Greater => here(),
        std::cmp::Ordering::Less => there(),
        std::cmp::Ordering::Equal => match (here(), there()) {
            (Some(a), Some(b)) => (a == b).then_some(a),
            (a, b) => a.or(b),
        },
    }
}

fn commutes_oriented(c: &Cortege) -> bool {
    let (iw, ib, jw, jb) = (c.white_rows(), c.black_rows(), c.white_cols(), c.black_cols());
    let c1 = iw.len() == jw.len() && ((before(&iw, &ib) && before(&jb, &jw)) || (before(&ib, &iw) && before(&jw, &jb)));
    let even = |s: Option<(usize, usize)>| matches!(s, Some((a, b)) if a == b);
    let c2 = (ib.is_empty() && even(split(&jb, &jw))) || (jb.is_empty() && even(split(&ib, &iw)));
    c1 || c2
}

/// `[I|J][I'|J'] = [I'|J'][I|J]`.
pub fn commutes(c: &Cortege) -> bool {
    match c.i.len().cmp(&c.ip.len()) {
        std::cmp::Ordering::Greater => commutes_oriented(c),
        std::cmp::Ordering::Less => commutes_oriented(&c.reversed()),
        std::cmp::Ordering::Equal => commutes_oriented(c) || commutes_oriented(&c.reversed()),
    }
}

/// Windows `[a, b]` of `white ∪ black` holding `k + 1` whites split around `k` blacks.
fn windows(white: &[usize], black: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for (x, &a) in white.iter().enumerate() {
        for &b in &white[x + 1..] {
            let w: Vec<usize> = white.iter().copied().filter(|&v| a <= v && v <= b).collect();
            let k: Vec<usize> = black.iter().copied().filter(|&v| a <= v && v <= b).collect();
            if k.is_empty() || w.len() != k.len() + 1 {
                continue;
            }
            let (lo, hi) = (k[0], k[k.len() - 1]);
            let i1: Vec<usize> = w.iter().copied().filter(|&v| v < lo).collect();
            let i2: Vec<usize> = w.iter().copied().filter(|&v| v > hi).collect();
            if !i1.is_empty() && !i2.is_empty() && i1.len() + i2.len() == w.len() {
                out.push((i1, k, i2));
            }
        }
    }
    out
}

/// The partner swap of `m` inside one window, if every black of the window is
/// coupled into it.
fn swap_in_window(m: &CircularMatching, i1: &[usize], mid: &[usize], i2: &[usize]) -> Option<CircularMatching> {
    let partner = |x: usize| m.partner(Elem::Col(x));
    let mut covered = Vec::new();
    for &x in mid {
        match partner(x)? {
            Elem::Col(y) if i1.contains(&y) || i2.contains(&y) => covered.push(y),
            _ => return None,
        }
    }
    let free: Vec<usize> = i1.iter().chain(i2).copied().filter(|y| !covered.contains(y)).collect();
    let &[u] = free.as_slice() else {
        return None;
    };
    // The free element sits on one side; the extreme element of the other side trades partners with it.
    let w = if i2.contains(&u) { i1[0] } else { i2[i2.len() - 1] };
    let (d, jw) = (partner(u)?, partner(w)?);
    let mut couples: Vec<Couple> = m
        .couples
        .iter()
        .copied()
        .filter(|cp| !cp.contains(Elem::Col(u)) && !cp.contains(Elem::Col(w)))
        .collect();
    couples.push(Couple::new(Elem::Col(w), d));
    couples.push(Couple::new(jw, Elem::Col(u)));
    Some(CircularMatching::new(couples))
}

/// Two feasible matchings of the flag cortege `([|I|] | I, [|J|] | J)` whose
/// full exchanges give different `zeta_white - zeta_black`.
///
/// A window need not hold the partners of its blacks for every feasible
/// matching, so windows and matchings are searched together.
pub fn non_quasicommute_witness(i: &[usize], j: &[usize]) -> Result<(CircularMatching, CircularMatching)> {
    check_set(i, usize::MAX)?;
    check_set(j, usize::MAX)?;
    if weakly_separated(i, j) {
        return Err(Error::InvalidParameters(format!("{i:?} and {j:?} are weakly separated")));
    }
    let upto = |k: usize| (1..=k).collect::<Vec<_>>();
    let s = Cortege::new(upto(i.len()), i.to_vec(), upto(j.len()), j.to_vec())?;
    // The construction takes the larger set as white; matchings are shared with the reversed cortege.
    let (big, small) = if i.len() >= j.len() { (i, j) } else { (j, i) };
    let all = enumerate_feasible(&s);
    for (i1, mid, i2) in windows(&minus(big, small), &minus(small, big)) {
        for m in &all {
            let Some(m2) = swap_in_window(m, &i1, &mid, &i2) else {
                continue;
            };
            if is_feasible(&m2, &s)? && zeta_difference(&s, m)? != zeta_difference(&s, &m2)? {
                return Ok((m.clone(), m2));
            }
        }
    }
    Err(Error::Internal(format!("no witness found for {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Cortege {
        Cortege::new(i.to_vec(), j.to_vec(), ip.to_vec(), jp.to_vec()).unwrap()
    }

    #[test]
    fn weak_separation() {
        assert!(weakly_separated(&[1, 2], &[1, 3]));
        assert!(!weakly_separated(&[1, 3], &[2, 4]));
        assert!(weakly_separated(&[2, 5], &[2, 5]));
        assert!(weakly_separated(&[1, 4], &[2, 3]));
        assert!(!weakly_separated(&[1, 2, 5], &[3]));
        assert!(weakly_separated(&[3], &[1, 2, 5]) == weakly_separated(&[1, 2, 5], &[3]));
    }

    #[test]
    fn subminors_commute() {
        let c = ct(&[1, 2], &[1, 2], &[1], &[1]);
        assert_eq!(quasicommute(&c), Some(0));
        assert!(commutes(&c));
    }

    #[test]
    fn row_entries_quasicommute() {
        let c = ct(&[1], &[1], &[1], &[2]);
        assert_eq!(quasicommute(&c), Some(1));
        assert!(!commutes(&c));
        assert_eq!(quasicommute(&c.reversed()), Some(-1));
    }

    #[test]
    fn interleaved_blocks() {
        // I° < I• and J• < J°: c = |I•| - |J•|.
        let c = ct(&[1, 2], &[3, 4], &[3], &[1]);
        assert_eq!(quasicommute_oriented(&c), Some(0));
        let c = ct(&[1, 2, 3], &[2, 3, 4], &[5, 6], &[1, 2]);
        assert_eq!(quasicommute_oriented(&c), Some(1));
        assert!(commutes(&ct(&[1], &[2], &[2], &[1])));
    }

    #[test]
    fn unseparated_rows_fail() {
        assert_eq!(quasicommute(&ct(&[1, 3], &[1, 2], &[2, 4], &[1, 2])), None);
    }

    #[test]
    fn witness_for_13_24() {
        let (m, m2) = non_quasicommute_witness(&[1, 3], &[2, 4]).unwrap();
        let s = ct(&[1, 2], &[1, 3], &[1, 2], &[2, 4]);
        assert!(is_feasible(&m, &s).unwrap() && is_feasible(&m2, &s).unwrap());
        assert_eq!((zeta_difference(&s, &m).unwrap() - zeta_difference(&s, &m2).unwrap()).abs(), 2);
        assert!(non_quasicommute_witness(&[1, 2], &[1, 3]).is_err());
    }
}
