//! Exact algebra of quantum minors via planar path systems.
//!
//! Minors of the path matrix of an SE-graph are computed as sums over
//! vertex-disjoint path systems. Quadratic identities between such minors are
//! decided combinatorially through feasible matchings on a circular diagram,
//! and can be cross-checked by symbolic expansion on grids.

pub mod algebra;
pub mod balance;
pub mod bipartite;
pub mod cortege;
pub mod double_flow;
pub mod error;
pub mod flows;
pub mod graph;
pub mod identities;
pub mod matchings;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Coeff;

/// Laurent scalars with `i64` coefficients.
pub type Laurent = algebra::LaurentPoly<i64>;
/// Polynomials with `i64` coefficients; the default for everything in this crate.
pub type NcPoly = algebra::NcPolynomial<i64>;
/// Polynomials with `i128` coefficients.
pub type WideNcPoly = algebra::NcPolynomial<i128>;
/// Polynomials with arbitrary-precision coefficients.
pub type BigNcPoly = algebra::NcPolynomial<num_bigint::BigInt>;
