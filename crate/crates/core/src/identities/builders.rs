//! The standard families of quadratic identities.

use super::classify::weakly_separated;
use super::{IdentityTerm, QuadraticIdentity};
use crate::cortege::Cortege;
use crate::error::{Error, Result};
use crate::flows::check_set;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn upto(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

fn sorted(v: &[usize]) -> Result<Vec<usize>> {
    check_set(v, usize::MAX)?;
    Ok(v.to_vec())
}

fn with(x: &[usize], extra: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = x.iter().chain(extra).copied().collect();
    s.into_iter().collect()
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

/// `Inv(A, B)`: pairs `(a, b)` with `a > b`.
fn inv(a: &[usize], b: &[usize]) -> i32 {
    a.iter().map(|x| b.iter().filter(|y| x > y).count() as i32).sum()
}

fn ct(i: Vec<usize>, j: Vec<usize>, ip: Vec<usize>, jp: Vec<usize>) -> Result<Cortege> {
    Cortege::new(i, j, ip, jp)
}

/// `([|a|] | a, [|b|] | b)`.
fn flag(a: &[usize], b: &[usize]) -> Result<Cortege> {
    ct(upto(a.len()), a.to_vec(), upto(b.len()), b.to_vec())
}

fn subsets(from: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if from.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (pos, &x) in from.iter().enumerate() {
        for mut rest in subsets(&from[pos + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// `[I|J][I'|J'] = [I'|J'][I|J]` for `I' ⊆ I`, `J' ⊆ J`.
pub fn commuting_subminor(i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Result<QuadraticIdentity> {
    let s = ct(sorted(i)?, sorted(j)?, sorted(ip)?, sorted(jp)?)?;
    if !minus(ip, i).is_empty() || !minus(jp, j).is_empty() {
        return Err(bad("the second minor must be a subminor of the first"));
    }
    QuadraticIdentity::new(vec![IdentityTerm::plus(s.clone(), 0)], vec![IdentityTerm::plus(s.reversed(), 0)])
}

/// `c` with `[I][J] = q^c [J][I]` for weakly separated flag column sets.
pub fn lz_exponent(i: &[usize], j: &[usize]) -> Option<i32> {
    // With |I| >= |J|, J - I = J1 ∪ J2 around I - J and c = |J2| - |J1|.
    let oriented = |big: &[usize], small: &[usize]| -> Option<i32> {
        let inner = minus(big, small);
        let outer = minus(small, big);
        let (lo, hi) = match (inner.first(), inner.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => return outer.is_empty().then_some(0),
        };
        if outer.iter().any(|&x| lo < x && x < hi) {
            return None;
        }
        let below = outer.iter().filter(|&&x| x < lo).count() as i32;
        Some(outer.len() as i32 - 2 * below)
    };
    let a = if i.len() >= j.len() { oriented(i, j) } else { None };
    let b = if j.len() >= i.len() { oriented(j, i).map(|c| -c) } else { None };
    a.or(b)
}

/// `[I][J] = q^c [J][I]` for weakly separated flag column sets `I`, `J`.
pub fn lz(i: &[usize], j: &[usize]) -> Result<QuadraticIdentity> {
    let (i, j) = (sorted(i)?, sorted(j)?);
    if !weakly_separated(&i, &j) {
        return Err(bad(format!("{i:?} and {j:?} are not weakly separated")));
    }
    let c = lz_exponent(&i, &j).ok_or_else(|| Error::Internal("weakly separated without exponent".into()))?;
    QuadraticIdentity::new(vec![IdentityTerm::plus(flag(&i, &j)?, 0)], vec![IdentityTerm::plus(flag(&j, &i)?, c)])
}

/// The relations between two entries of a 2x2 submatrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManinKind {
    /// `[i|j][i|j'] = q [i|j'][i|j]`.
    Row,
    /// `[i|j][i'|j] = q [i'|j][i|j]`.
    Column,
    /// `[i|j][i'|j'] + q^-1 [i|j'][i'|j] = q [i|j'][i'|j] + [i'|j'][i|j]`.
    Diagonal,
    /// `[i|j'][i'|j] = [i'|j][i|j']`.
    AntiDiagonal,
}

/// One relation of the submatrix on rows `i < i'` and columns `j < j'`.
pub fn manin(kind: ManinKind, i: usize, ip: usize, j: usize, jp: usize) -> Result<QuadraticIdentity> {
    if !(0 < i && i < ip && 0 < j && j < jp) {
        return Err(bad("manin needs 0 < i < i' and 0 < j < j'"));
    }
    let e = |r: usize, c: usize, r2: usize, c2: usize| ct(vec![r], vec![c], vec![r2], vec![c2]);
    let (lhs, rhs) = match kind {
        ManinKind::Row => (vec![IdentityTerm::plus(e(i, j, i, jp)?, 0)], vec![IdentityTerm::plus(e(i, jp, i, j)?, 1)]),
        ManinKind::Column => {
            (vec![IdentityTerm::plus(e(i, j, ip, j)?, 0)], vec![IdentityTerm::plus(e(ip, j, i, j)?, 1)])
        }
        ManinKind::Diagonal => (
            vec![IdentityTerm::plus(e(i, j, ip, jp)?, 0), IdentityTerm::plus(e(i, jp, ip, j)?, -1)],
            vec![IdentityTerm::plus(e(i, jp, ip, j)?, 1), IdentityTerm::plus(e(ip, jp, i, j)?, 0)],
        ),
        ManinKind::AntiDiagonal => {
            (vec![IdentityTerm::plus(e(i, jp, ip, j)?, 0)], vec![IdentityTerm::plus(e(ip, j, i, jp)?, 0)])
        }
    };
    QuadraticIdentity::new(lhs, rhs)
}

fn plucker_args(x: &[usize], ijk: &[usize]) -> Result<Vec<usize>> {
    let x = sorted(x)?;
    if ijk.windows(2).any(|w| w[0] >= w[1]) || ijk[0] == 0 {
        return Err(bad("indices must be positive and increasing"));
    }
    if ijk.iter().any(|a| x.contains(a)) {
        return Err(bad("indices must lie outside X"));
    }
    Ok(x)
}

/// `[Xj][Xik] = [Xij][Xk] + [Xjk][Xi]` for `i < j < k` outside `X`.
pub fn plucker3a(x: &[usize], i: usize, j: usize, k: usize) -> Result<QuadraticIdentity> {
    let x = plucker_args(x, &[i, j, k])?;
    let p = x.len() + 2;
    let s = |a: &[usize], b: &[usize]| ct(upto(p - 1), with(&x, a), upto(p), with(&x, b));
    let t = |a: &[usize], b: &[usize]| ct(upto(p), with(&x, a), upto(p - 1), with(&x, b));
    QuadraticIdentity::new(
        vec![IdentityTerm::plus(s(&[j], &[i, k])?, 0)],
        vec![IdentityTerm::plus(t(&[i, j], &[k])?, 0), IdentityTerm::plus(t(&[j, k], &[i])?, 0)],
    )
}

/// `[Xik][Xj] = q^-1 [Xij][Xk] + q [Xjk][Xi]` for `i < j < k` outside `X`.
pub fn plucker3b(x: &[usize], i: usize, j: usize, k: usize) -> Result<QuadraticIdentity> {
    let x = plucker_args(x, &[i, j, k])?;
    let p = x.len() + 2;
    let t = |a: &[usize], b: &[usize]| ct(upto(p), with(&x, a), upto(p - 1), with(&x, b));
    QuadraticIdentity::new(
        vec![IdentityTerm::plus(t(&[i, k], &[j])?, 0)],
        vec![IdentityTerm::plus(t(&[i, j], &[k])?, -1), IdentityTerm::plus(t(&[j, k], &[i])?, 1)],
    )
}

/// `[Xik][Xjl] = q^-1 [Xij][Xkl] + q [Xil][Xjk]` for `i < j < k < l` outside `X`.
pub fn plucker4(x: &[usize], i: usize, j: usize, k: usize, l: usize) -> Result<QuadraticIdentity> {
    let x = plucker_args(x, &[i, j, k, l])?;
    let p = x.len() + 2;
    let s = |a: &[usize], b: &[usize]| ct(upto(p), with(&x, a), upto(p), with(&x, b));
    QuadraticIdentity::new(
        vec![IdentityTerm::plus(s(&[i, k], &[j, l])?, 0)],
        vec![IdentityTerm::plus(s(&[i, j], &[k, l])?, -1), IdentityTerm::plus(s(&[i, l], &[j, k])?, 1)],
    )
}

/// `[Xi|X'i'][Xk|X'k'] = q [Xi|X'k'][Xk|X'i'] + [Xik|X'i'k'][X|X']`.
pub fn dodgson(x: &[usize], i: usize, k: usize, xp: &[usize], ip: usize, kp: usize) -> Result<QuadraticIdentity> {
    let x = plucker_args(x, &[i, k])?;
    let xp = plucker_args(xp, &[ip, kp])?;
    if x.len() != xp.len() {
        return Err(bad("|X| must equal |X'|"));
    }
    let s = |a: &[usize], b: &[usize], c: &[usize], d: &[usize]| ct(with(&x, a), with(&xp, b), with(&x, c), with(&xp, d));
    QuadraticIdentity::new(
        vec![IdentityTerm::plus(s(&[i], &[ip], &[k], &[kp])?, 0)],
        vec![IdentityTerm::plus(s(&[i], &[kp], &[k], &[ip])?, 1), IdentityTerm::plus(s(&[i, k], &[ip, kp], &[], &[])?, 0)],
    )
}

/// `[I][J] = sum_mu (-q)^{Inv(I, mu) - Inv(J-mu, mu)} [I ∪ mu][J - mu]` over
/// `mu ⊆ J - I` with `|mu| = |J| - |I|`.
///
/// With the opposite sign of the exponent the relation fails as soon as some
/// exponent is nonzero, e.g. for `I = {1}`, `J = {2, 3}`.
pub fn general_r1(i: &[usize], j: &[usize]) -> Result<QuadraticIdentity> {
    let (i, j) = (sorted(i)?, sorted(j)?);
    if i.len() > j.len() {
        return Err(bad("general_r1 needs |I| <= |J|"));
    }
    let (p, k) = (i.len(), j.len() - i.len());
    let lhs = vec![IdentityTerm::plus(ct(upto(p), i.clone(), upto(p + k), j.clone())?, 0)];
    let mut rhs = Vec::new();
    for mu in subsets(&minus(&j, &i), k) {
        let rest = minus(&j, &mu);
        let e = inv(&i, &mu) - inv(&rest, &mu);
        rhs.push(IdentityTerm::neg_q_power(ct(upto(p + k), with(&i, &mu), upto(p), rest)?, e));
    }
    QuadraticIdentity::new(lhs, rhs)
}

/// `sum_{a in I-J} (-q)^{Inv(a, I-a) - Inv(a, J)} [Ja][I-a] = 0` for `|I| - |J| >= 2`.
pub fn general_r2(i: &[usize], j: &[usize]) -> Result<QuadraticIdentity> {
    let (i, j) = (sorted(i)?, sorted(j)?);
    if i.len() < j.len() + 2 {
        return Err(bad("general_r2 needs |I| - |J| >= 2"));
    }
    let (p, k) = (j.len(), i.len() - j.len());
    let mut lhs = Vec::new();
    for a in minus(&i, &j) {
        let rest = minus(&i, &[a]);
        let e = inv(&[a], &rest) - inv(&[a], &j);
        lhs.push(IdentityTerm::neg_q_power(ct(upto(p + 1), with(&j, &[a]), upto(p + k - 1), rest)?, e));
    }
    QuadraticIdentity::new(lhs, vec![])
}

/// Small named instances of every family, each with at most six elements in its ground set.
pub fn catalog() -> Vec<(String, QuadraticIdentity)> {
    let mut out: Vec<(String, Result<QuadraticIdentity>)> = vec![
        ("commuting_subminor 12|12 1|1".into(), commuting_subminor(&[1, 2], &[1, 2], &[1], &[1])),
        ("commuting_subminor 12|23 2|3".into(), commuting_subminor(&[1, 2], &[2, 3], &[2], &[3])),
        ("commuting_subminor 123|123 2|1".into(), commuting_subminor(&[1, 2, 3], &[1, 2, 3], &[2], &[1])),
        ("lz 12 13".into(), lz(&[1, 2], &[1, 3])),
        ("lz 23 14".into(), lz(&[2, 3], &[1, 4])),
        ("lz 123 4".into(), lz(&[1, 2, 3], &[4])),
        ("lz 4 123".into(), lz(&[4], &[1, 2, 3])),
    ];
    for kind in [ManinKind::Row, ManinKind::Column, ManinKind::Diagonal, ManinKind::AntiDiagonal] {
        out.push((format!("manin {kind:?} 1,2,1,2"), manin(kind, 1, 2, 1, 2)));
        out.push((format!("manin {kind:?} 1,3,2,3"), manin(kind, 1, 3, 2, 3)));
    }
    out.extend([
        ("plucker3a 1,2,3".into(), plucker3a(&[], 1, 2, 3)),
        ("plucker3a X=2 1,3,4".into(), plucker3a(&[2], 1, 3, 4)),
        ("plucker3b 1,2,3".into(), plucker3b(&[], 1, 2, 3)),
        ("plucker3b X=1 2,3,4".into(), plucker3b(&[1], 2, 3, 4)),
        ("plucker4 1,2,3,4".into(), plucker4(&[], 1, 2, 3, 4)),
        ("plucker4 1,2,4,5".into(), plucker4(&[], 1, 2, 4, 5)),
        ("dodgson 1,2 1,2".into(), dodgson(&[], 1, 2, &[], 1, 2)),
        ("dodgson X=2 1,3 X'=1 2,3".into(), dodgson(&[2], 1, 3, &[1], 2, 3)),
        ("general_r1 1 23".into(), general_r1(&[1], &[2, 3])),
        ("general_r1 2 134".into(), general_r1(&[2], &[1, 3, 4])),
        ("general_r1 13 124".into(), general_r1(&[1, 3], &[1, 2, 4])),
        ("general_r2 234 1".into(), general_r2(&[2, 3, 4], &[1])),
        ("general_r2 123 ∅".into(), general_r2(&[1, 2, 3], &[])),
        ("general_r2 124 3".into(), general_r2(&[1, 2, 4], &[3])),
    ]);
    out.into_iter().map(|(name, id)| (name, id.expect("catalog instance"))).collect()
}
