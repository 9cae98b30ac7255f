use crate::error::{Error, Result};

/// Quasi-commutation data `u v = q^{c(u,v)} v u` on a finite ordered generator set.
///
/// Generator `k` is the `k`-th generator in the order used for normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationTable {
    names: Vec<String>,
    rel: Vec<i8>,
}

impl CommutationTable {
    /// All generators commute.
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        Self { names, rel: vec![0; n * n] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Records `u v = q^c v u` (and hence `v u = q^-c u v`).
    pub fn set(&mut self, u: usize, v: usize, c: i8) -> Result<()> {
        let n = self.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::UnknownGenerator(x));
            }
        }
        if u == v && c != 0 {
            return Err(Error::Internal("a generator commutes with itself".into()));
        }
        self.rel[u * n + v] = c;
        self.rel[v * n + u] = -c;
        Ok(())
    }

    /// `c(u, v)`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> i8 {
        self.rel[u * self.names.len() + v]
    }

    pub fn check(&self, u: usize) -> Result<()> {
        if u < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(u))
        }
    }
}
