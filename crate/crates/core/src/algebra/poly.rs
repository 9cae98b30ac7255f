use super::laurent::LaurentPoly;
use super::monomial::{nc_mul_mono_unchecked, NcMonomial};
use super::table::CommutationTable;
use crate::error::Result;
use crate::scalar::Coeff;
use std::collections::BTreeMap;

/// Finite sum of normal-form monomials with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPolynomial<C> {
    terms: BTreeMap<NcMonomial, LaurentPoly<C>>,
}

impl<C: Coeff> Default for NcPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> NcPolynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_monomial(NcMonomial::one(), LaurentPoly::one())
    }

    pub fn scalar(s: LaurentPoly<C>) -> Self {
        Self::from_monomial(NcMonomial::one(), s)
    }

    pub fn from_monomial(m: NcMonomial, s: LaurentPoly<C>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &s);
        p
    }

    /// `q^d m`.
    pub fn from_qmonomial(m: NcMonomial, d: i32) -> Self {
        Self::from_monomial(m, LaurentPoly::q_pow(d))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcMonomial, &LaurentPoly<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &NcMonomial) -> LaurentPoly<C> {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: NcMonomial, s: &LaurentPoly<C>) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        slot.add_assign_ref(s);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(m.clone(), s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, s)| (m.clone(), -s.clone())).collect() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg())
    }

    /// Left multiplication by a central scalar.
    pub fn scale(&self, s: &LaurentPoly<C>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &s.mul_ref(c));
        }
        out
    }

    pub fn shift(&self, d: i32) -> Self {
        Self { terms: self.terms.iter().map(|(m, s)| (m.clone(), s.shift(d))).collect() }
    }

    /// Product in the quantum torus defined by `t`.
    pub fn mul(&self, other: &Self, t: &CommutationTable) -> Result<Self> {
        for m in self.terms.keys().chain(other.terms.keys()) {
            for (g, _) in m.exponents() {
                t.check(*g)?;
            }
        }
        Ok(self.mul_unchecked(other, t))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self, t: &CommutationTable) -> Self {
        let mut acc: BTreeMap<NcMonomial, LaurentPoly<C>> = BTreeMap::new();
        for (ma, sa) in &self.terms {
            for (mb, sb) in &other.terms {
                let (m, d) = nc_mul_mono_unchecked(ma, mb, t);
                let s = sa.mul_ref(sb).shift(d);
                acc.entry(m).or_default().add_assign_ref(&s);
            }
        }
        acc.retain(|_, s| !s.is_zero());
        Self { terms: acc }
    }

    /// Returns `d` with `self = q^d other`, if it exists.
    pub fn qpower_ratio(&self, other: &Self) -> Option<i32> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut d: Option<i32> = None;
        for ((ma, sa), (mb, sb)) in self.terms.iter().zip(other.terms.iter()) {
            if ma != mb {
                return None;
            }
            let e = sa.qpower_ratio(sb)?;
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    }

    pub fn convert<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcPolynomial<D> {
        let mut out = NcPolynomial::zero();
        for (m, s) in &self.terms {
            let mut t = LaurentPoly::zero();
            for (e, c) in s.terms() {
                t.add_term(e, f(c));
            }
            out.add_term(m.clone(), &t);
        }
        out
    }

    /// Canonical text: monomials in ascending order, scalars in front.
    pub fn render(&self, t: &CommutationTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, s)) in self.terms.iter().enumerate() {
            let mono = m.render(t);
            let (neg, body) = match s.as_monomial() {
                Some((c, e)) => {
                    let unit = LaurentPoly::monomial(c.abs(), e).to_string();
                    let body = match (unit.as_str(), m.is_one()) {
                        (u, true) => u.to_string(),
                        ("1", false) => mono,
                        (u, false) => format!("{u}*{mono}"),
                    };
                    (c.is_negative(), body)
                }
                None => {
                    let body = if m.is_one() { format!("({s})") } else { format!("({s})*{mono}") };
                    (false, body)
                }
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// `p * r` in the quantum torus of `t`.
pub fn poly_mul<C: Coeff>(p: &NcPolynomial<C>, r: &NcPolynomial<C>, t: &CommutationTable) -> Result<NcPolynomial<C>> {
    p.mul(r, t)
}

/// `d` with `p = q^d r`, or `None`.
pub fn poly_qpower_ratio<C: Coeff>(p: &NcPolynomial<C>, r: &NcPolynomial<C>) -> Option<i32> {
    p.qpower_ratio(r)
}
