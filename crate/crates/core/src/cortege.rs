//! Pairs of minors `(I|J, I'|J')`, their white/black refinement, and the
//! bookkeeping of index exchanges.

use crate::error::{Error, Result};
use crate::flows::{check_set, IndexPair};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A row or column index of the circular diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    Row(usize),
    Col(usize),
}

impl Elem {
    pub fn index(self) -> usize {
        match self {
            Elem::Row(i) | Elem::Col(i) => i,
        }
    }

    pub fn is_row(self) -> bool {
        matches!(self, Elem::Row(_))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Row(i) => write!(f, "r{i}"),
            Elem::Col(j) => write!(f, "c{j}'"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoupleKind {
    R,
    C,
    RC,
}

/// An unordered pair of elements, stored with the smaller element first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Couple(pub Elem, pub Elem);

impl Serialize for Couple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Couple {
    pub fn new(a: Elem, b: Elem) -> Self {
        if a <= b {
            Couple(a, b)
        } else {
            Couple(b, a)
        }
    }

    pub fn kind(self) -> CoupleKind {
        match (self.0, self.1) {
            (Elem::Row(_), Elem::Row(_)) => CoupleKind::R,
            (Elem::Col(_), Elem::Col(_)) => CoupleKind::C,
            _ => CoupleKind::RC,
        }
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0 == e || self.1 == e
    }

    pub fn other(self, e: Elem) -> Option<Elem> {
        if self.0 == e {
            Some(self.1)
        } else if self.1 == e {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Couple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// `(I|J, I'|J')`: the ordered product `[I|J][I'|J']`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cortege {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "Ip")]
    pub ip: Vec<usize>,
    #[serde(rename = "Jp")]
    pub jp: Vec<usize>,
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

fn inter(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

fn join(s: &[usize]) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Cortege {
    /// Validates sortedness and sizes; indices must be positive.
    pub fn new(i: Vec<usize>, j: Vec<usize>, ip: Vec<usize>, jp: Vec<usize>) -> Result<Self> {
        let c = Self { i, j, ip, jp };
        c.check(usize::MAX, usize::MAX)?;
        Ok(c)
    }

    pub fn from_pairs(a: &IndexPair, b: &IndexPair) -> Self {
        Self { i: a.rows.clone(), j: a.cols.clone(), ip: b.rows.clone(), jp: b.cols.clone() }
    }

    pub fn first(&self) -> IndexPair {
        IndexPair { rows: self.i.clone(), cols: self.j.clone() }
    }

    pub fn second(&self) -> IndexPair {
        IndexPair { rows: self.ip.clone(), cols: self.jp.clone() }
    }

    /// Checks sortedness, bounds and `|I| = |J|`, `|I'| = |J'|`.
    pub fn check(&self, m: usize, n: usize) -> Result<()> {
        for (s, b) in [(&self.i, m), (&self.j, n), (&self.ip, m), (&self.jp, n)] {
            check_set(s, b)?;
        }
        if self.i.len() != self.j.len() {
            return Err(Error::SizeMismatch { rows: self.i.len(), cols: self.j.len() });
        }
        if self.ip.len() != self.jp.len() {
            return Err(Error::SizeMismatch { rows: self.ip.len(), cols: self.jp.len() });
        }
        Ok(())
    }

    /// `(I'|J', I|J)`.
    pub fn reversed(&self) -> Self {
        Self { i: self.ip.clone(), j: self.jp.clone(), ip: self.i.clone(), jp: self.j.clone() }
    }

    /// Rows and columns exchanged.
    pub fn transposed(&self) -> Self {
        Self { i: self.j.clone(), j: self.i.clone(), ip: self.jp.clone(), jp: self.ip.clone() }
    }

    /// `I - I'`.
    pub fn white_rows(&self) -> Vec<usize> {
        minus(&self.i, &self.ip)
    }

    /// `I' - I`.
    pub fn black_rows(&self) -> Vec<usize> {
        minus(&self.ip, &self.i)
    }

    /// `J - J'`.
    pub fn white_cols(&self) -> Vec<usize> {
        minus(&self.j, &self.jp)
    }

    /// `J' - J`.
    pub fn black_cols(&self) -> Vec<usize> {
        minus(&self.jp, &self.j)
    }

    /// `I ∩ I'`.
    pub fn common_rows(&self) -> Vec<usize> {
        inter(&self.i, &self.ip)
    }

    /// `J ∩ J'`.
    pub fn common_cols(&self) -> Vec<usize> {
        inter(&self.j, &self.jp)
    }

    pub fn row_union(&self) -> Vec<usize> {
        union(&self.i, &self.ip)
    }

    pub fn col_union(&self) -> Vec<usize> {
        union(&self.j, &self.jp)
    }

    /// `Y_R = I △ I'`, ascending.
    pub fn y_rows(&self) -> Vec<usize> {
        union(&self.white_rows(), &self.black_rows())
    }

    /// `Y_C = J △ J'`, ascending.
    pub fn y_cols(&self) -> Vec<usize> {
        union(&self.white_cols(), &self.black_cols())
    }

    /// Color of `e`, or `None` if `e` is outside `Y_R ⊔ Y_C`.
    pub fn color(&self, e: Elem) -> Option<Color> {
        let (a, b) = match e {
            Elem::Row(_) => (&self.i, &self.ip),
            Elem::Col(_) => (&self.j, &self.jp),
        };
        let x = e.index();
        match (a.contains(&x), b.contains(&x)) {
            (true, false) => Some(Color::White),
            (false, true) => Some(Color::Black),
            _ => None,
        }
    }

    /// Ground set in circle order: rows ascending, then columns descending.
    pub fn circle(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.y_rows().into_iter().map(Elem::Row).collect();
        v.extend(self.y_cols().into_iter().rev().map(Elem::Col));
        v
    }

    /// Ground set size `|Y_R| + |Y_C|`.
    pub fn ground_size(&self) -> usize {
        self.y_rows().len() + self.y_cols().len()
    }

    /// Same unions and intersections (homogeneous pair).
    pub fn same_ground(&self, other: &Self) -> bool {
        self.row_union() == other.row_union()
            && self.col_union() == other.col_union()
            && self.common_rows() == other.common_rows()
            && self.common_cols() == other.common_cols()
    }
}

impl fmt::Display for Cortege {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}; {}|{})", join(&self.i), join(&self.j), join(&self.ip), join(&self.jp))
    }
}

fn check_couples(c: &Cortege, pi: &[Couple]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for cp in pi {
        for e in [cp.0, cp.1] {
            if c.color(e).is_none() {
                return Err(Error::NotInGroundSet(e.to_string()));
            }
            if !seen.insert(e) {
                return Err(Error::InvalidParameters(format!("element {e} covered twice")));
            }
        }
    }
    Ok(())
}

/// `(zeta_white, zeta_black)`: R- and C-couples `{f < g}` of `pi` whose smaller
/// element `f` is white, respectively black. RC-couples count for neither.
pub fn zeta(c: &Cortege, pi: &[Couple]) -> Result<(usize, usize)> {
    check_couples(c, pi)?;
    let (mut w, mut b) = (0, 0);
    for cp in pi {
        if cp.kind() == CoupleKind::RC {
            continue;
        }
        // Couples of one kind are stored smaller-index first.
        match c.color(cp.0) {
            Some(Color::White) => w += 1,
            Some(Color::Black) => b += 1,
            None => unreachable!("checked above"),
        }
    }
    Ok((w, b))
}

/// Flips the colors of every element covered by `pi`.
pub fn index_exchange(c: &Cortege, pi: &[Couple]) -> Result<Cortege> {
    check_couples(c, pi)?;
    let mut out = c.clone();
    let toggle = |s: &mut Vec<usize>, x: usize| {
        if let Some(p) = s.iter().position(|&y| y == x) {
            s.remove(p);
        } else {
            s.push(x);
            s.sort_unstable();
        }
    };
    for cp in pi {
        for e in [cp.0, cp.1] {
            match e {
                Elem::Row(x) => {
                    toggle(&mut out.i, x);
                    toggle(&mut out.ip, x);
                }
                Elem::Col(x) => {
                    toggle(&mut out.j, x);
                    toggle(&mut out.jp, x);
                }
            }
        }
    }
    Ok(out)
}
