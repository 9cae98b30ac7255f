//! Coefficient rings for Laurent scalars.

use num_traits::Signed;
use std::fmt::{Debug, Display};

/// Exact integer coefficients. Implemented for `i64`, `i128` and `BigInt`.
pub trait Coeff: Signed + Clone + Eq + Ord + Debug + Display + Send + Sync + 'static {}

impl<T> Coeff for T where T: Signed + Clone + Eq + Ord + Debug + Display + Send + Sync + 'static {}
