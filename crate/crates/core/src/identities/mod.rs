//! Quadratic identities between products of quantum minors.
//!
//! An identity is `sum_lhs ±q^a [I|J][I'|J'] = sum_rhs ±q^b [K|L][K'|L']`.
//! It is decided universally through q-balancedness of the two families, or
//! checked on one graph by expanding both sides.

mod builders;
mod classify;
mod transform;

pub use builders::{
    catalog, commuting_subminor, dodgson, general_r1, general_r2, lz, lz_exponent, manin, plucker3a, plucker3b,
    plucker4, ManinKind,
};
pub use classify::{
    commutes, non_quasicommute_witness, quasicommute, quasicommute_oriented, weakly_separated, zeta_difference,
};
pub use transform::{pad, relabel, reverse, rotate, shift, transpose, Relabeling, Rotation};

use crate::algebra::{LaurentPoly, NcPolynomial};
use crate::balance::{check_homogeneous, check_q_balanced, BalanceReport, FamilyTerm};
use crate::cortege::Cortege;
use crate::error::{Error, Result};
use crate::flows::{qminor_flows, IndexPair};
use crate::graph::SeGraph;
use crate::scalar::Coeff;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

fn plus_one() -> i8 {
    1
}

/// `sign * q^qexp * [I|J][I'|J']`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdentityTerm {
    #[serde(flatten)]
    pub cortege: Cortege,
    #[serde(default = "plus_one")]
    pub sign: i8,
    #[serde(default)]
    pub qexp: i32,
}

impl IdentityTerm {
    pub fn new(cortege: Cortege, sign: i8, qexp: i32) -> Self {
        Self { cortege, sign, qexp }
    }

    /// `q^e [S]`.
    pub fn plus(cortege: Cortege, e: i32) -> Self {
        Self::new(cortege, 1, e)
    }

    /// `(-q)^e [S]`.
    pub fn neg_q_power(cortege: Cortege, e: i32) -> Self {
        Self::new(cortege, if e.rem_euclid(2) == 1 { -1 } else { 1 }, e)
    }
}

impl fmt::Display for IdentityTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.cortege;
        let s = if self.sign < 0 { "-" } else { "" };
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let body = format!("[{}|{}][{}|{}]", join(&c.i), join(&c.j), join(&c.ip), join(&c.jp));
        match self.qexp {
            0 => write!(f, "{s}{body}"),
            1 => write!(f, "{s}q{body}"),
            e => write!(f, "{s}q^{e}{body}"),
        }
    }
}

/// Identity on `m x n` quantum matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticIdentity {
    pub m: usize,
    pub n: usize,
    pub lhs: Vec<IdentityTerm>,
    pub rhs: Vec<IdentityTerm>,
}

impl fmt::Display for QuadraticIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ts: &[IdentityTerm]| {
            if ts.is_empty() {
                "0".to_string()
            } else {
                ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ")
            }
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

impl QuadraticIdentity {
    /// Builds and validates; `m` and `n` are the largest row and column indices used (at least 1).
    pub fn new(lhs: Vec<IdentityTerm>, rhs: Vec<IdentityTerm>) -> Result<Self> {
        let mut m = 1;
        let mut n = 1;
        for t in lhs.iter().chain(&rhs) {
            let c = &t.cortege;
            m = c.i.iter().chain(&c.ip).fold(m, |a, &x| a.max(x));
            n = c.j.iter().chain(&c.jp).fold(n, |a, &x| a.max(x));
        }
        Self::with_size(m, n, lhs, rhs)
    }

    pub fn with_size(m: usize, n: usize, lhs: Vec<IdentityTerm>, rhs: Vec<IdentityTerm>) -> Result<Self> {
        let id = Self { m, n, lhs, rhs };
        id.validate()?;
        Ok(id)
    }

    pub fn terms(&self) -> impl Iterator<Item = &IdentityTerm> {
        self.lhs.iter().chain(&self.rhs)
    }

    /// Index bounds, signs and homogeneity.
    pub fn validate(&self) -> Result<()> {
        for t in self.terms() {
            t.cortege.check(self.m, self.n)?;
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::InvalidParameters(format!("sign {} is not +1 or -1", t.sign)));
            }
        }
        check_homogeneous(self.terms().map(|t| &t.cortege))
    }

    /// Positive form: terms with sign -1 move to the other side.
    pub fn canonical(&self) -> (Vec<FamilyTerm>, Vec<FamilyTerm>) {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for t in &self.lhs {
            let ft = FamilyTerm::new(t.cortege.clone(), t.qexp);
            if t.sign > 0 { lhs.push(ft) } else { rhs.push(ft) }
        }
        for t in &self.rhs {
            let ft = FamilyTerm::new(t.cortege.clone(), t.qexp);
            if t.sign > 0 { rhs.push(ft) } else { lhs.push(ft) }
        }
        (lhs, rhs)
    }

    /// Same canonical form up to a common power of `q` and the choice of sides.
    pub fn equivalent(&self, other: &Self) -> bool {
        type Side = Vec<(Cortege, i32)>;
        fn normal(id: &QuadraticIdentity) -> (Side, Side) {
            let (l, r) = id.canonical();
            let base = l.iter().chain(&r).map(|t| t.exp).min().unwrap_or(0);
            let side = |v: Vec<FamilyTerm>| {
                let mut s: Vec<_> = v.into_iter().map(|t| (t.cortege, t.exp - base)).collect();
                s.sort();
                s
            };
            (side(l), side(r))
        }
        let (a, b) = (normal(self), normal(other));
        a == b || (a.0 == b.1 && a.1 == b.0)
    }
}

/// Decides universal validity by q-balancedness of the canonical form.
pub fn verify_universal(id: &QuadraticIdentity) -> Result<BalanceReport> {
    id.validate()?;
    let (lhs, rhs) = id.canonical();
    check_q_balanced(&lhs, &rhs)
}

/// `LHS - RHS` with minors expanded as flow sums on `g`.
pub fn verify_on_graph<C: Coeff>(g: &SeGraph, id: &QuadraticIdentity) -> Result<NcPolynomial<C>> {
    id.validate()?;
    let mut pairs: Vec<IndexPair> = Vec::new();
    for t in id.terms() {
        t.cortege.check(g.m(), g.n())?;
        pairs.push(t.cortege.first());
        pairs.push(t.cortege.second());
    }
    pairs.sort();
    pairs.dedup();
    let minors: HashMap<IndexPair, NcPolynomial<C>> = pairs
        .into_par_iter()
        .map(|p| qminor_flows::<C>(g, &p).map(|v| (p, v)))
        .collect::<Result<_>>()?;
    let t = g.commutation_table();
    let signed: Vec<(&IdentityTerm, bool)> =
        id.lhs.iter().map(|x| (x, false)).chain(id.rhs.iter().map(|x| (x, true))).collect();
    let products: Vec<NcPolynomial<C>> = signed
        .par_iter()
        .map(|(term, right)| {
            let c = &term.cortege;
            let p = minors[&c.first()].mul(&minors[&c.second()], t)?;
            let negative = (term.sign < 0) != *right;
            Ok(p.scale(&LaurentPoly::signed_q_pow(negative, term.qexp)))
        })
        .collect::<Result<_>>()?;
    Ok(products.iter().fold(NcPolynomial::zero(), |acc, p| acc.add_ref(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::grid;

    fn ct(i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Cortege {
        Cortege::new(i.to_vec(), j.to_vec(), ip.to_vec(), jp.to_vec()).unwrap()
    }

    #[test]
    fn json_defaults() {
        let id: QuadraticIdentity = serde_json::from_str(
            r#"{"m":2,"n":2,"lhs":[{"I":[1],"J":[1],"Ip":[1],"Jp":[2]}],
                "rhs":[{"I":[1],"J":[2],"Ip":[1],"Jp":[1],"qexp":1}]}"#,
        )
        .unwrap();
        assert_eq!(id.lhs[0].sign, 1);
        assert_eq!(id.rhs[0].qexp, 1);
        assert!(verify_universal(&id).unwrap().is_q_balanced());
        let back: QuadraticIdentity = serde_json::from_str(&serde_json::to_string(&id).unwrap()).unwrap();
        assert_eq!(back, id);
    }

    #[test]
    fn bad_sign_is_rejected() {
        let t = IdentityTerm::new(ct(&[1], &[1], &[2], &[2]), 2, 0);
        assert!(QuadraticIdentity::new(vec![t], vec![]).is_err());
    }

    #[test]
    fn negative_terms_change_sides() {
        let s = ct(&[1], &[1], &[1], &[2]);
        let id = QuadraticIdentity::new(
            vec![IdentityTerm::plus(s.clone(), 0), IdentityTerm::new(s.reversed(), -1, 1)],
            vec![],
        )
        .unwrap();
        let (l, r) = id.canonical();
        assert_eq!(l.len(), 1);
        assert_eq!(r, vec![FamilyTerm::new(s.reversed(), 1)]);
        assert!(verify_universal(&id).unwrap().is_q_balanced());
        let g = grid(1, 2).unwrap();
        assert!(verify_on_graph::<i64>(&g, &id).unwrap().is_zero());
    }

    #[test]
    fn equivalence_ignores_shift_and_sides() {
        let s = ct(&[1], &[1], &[1], &[2]);
        let a = QuadraticIdentity::new(vec![IdentityTerm::plus(s.clone(), 0)], vec![IdentityTerm::plus(s.reversed(), 1)])
            .unwrap();
        let b = QuadraticIdentity::new(vec![IdentityTerm::plus(s.reversed(), 3)], vec![IdentityTerm::plus(s.clone(), 2)])
            .unwrap();
        assert!(a.equivalent(&b));
        let c = QuadraticIdentity::new(vec![IdentityTerm::plus(s.reversed(), 0)], vec![IdentityTerm::plus(s, 0)]).unwrap();
        assert!(!a.equivalent(&c));
    }

    #[test]
    fn graph_must_fit() {
        let id = QuadraticIdentity::new(
            vec![IdentityTerm::plus(ct(&[1], &[1], &[1], &[3]), 0)],
            vec![IdentityTerm::plus(ct(&[1], &[3], &[1], &[1]), 1)],
        )
        .unwrap();
        assert!(verify_on_graph::<i64>(&grid(1, 2).unwrap(), &id).is_err());
        assert!(verify_on_graph::<i64>(&grid(1, 3).unwrap(), &id).unwrap().is_zero());
    }
}
