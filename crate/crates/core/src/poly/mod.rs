//! Exact sparse polynomials: the monomial basis, the transient signed-exponent
//! form used while expanding the cave formula, the binomial basis, and exact
//! rational expansions of the latter.

mod binomial;
mod laurent;
mod multi;
mod rational;
mod render;

use std::cmp::Ordering;

pub use binomial::{binomial_map, BinomialBasisPoly};
pub(crate) use laurent::LaurentPoly;
pub use multi::MultiPoly;
pub use rational::RationalPoly;

use crate::point::LatticePoint;

/// Canonical term order: total degree descending, then exponent vectors
/// lexicographically descending.
pub fn canonical_cmp(a: &LatticePoint, b: &LatticePoint) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.cmp(a))
}
