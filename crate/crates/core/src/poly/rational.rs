use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::canonical_cmp;
use super::render::{render_monomial, write_signed_terms};
use crate::error::{Error, Result};
use crate::point::LatticePoint;

/// Sparse polynomial with exact rational coefficients in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    p: usize,
    terms: BTreeMap<LatticePoint, BigRational>,
}

impl RationalPoly {
    pub fn zero(p: usize) -> Self {
        RationalPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: &LatticePoint) -> BigRational {
        self.terms.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, n: LatticePoint, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn sorted_terms(&self) -> Vec<(&LatticePoint, &BigRational)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    pub fn eval(&self, t: &[i64]) -> Result<BigRational> {
        if t.len() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: t.len(),
            });
        }
        let mut total = BigRational::zero();
        for (n, c) in &self.terms {
            let mut term = c.clone();
            for (&x, &e) in t.iter().zip(n.coords()) {
                term *= BigRational::from_integer(num_traits::pow(BigInt::from(x), e as usize));
            }
            total += term;
        }
        Ok(total)
    }

    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(n, c)| (c.is_negative(), c.abs().to_string(), render_monomial(n)));
        write_signed_terms(f, terms)
    }
}
