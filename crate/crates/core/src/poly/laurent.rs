use std::collections::BTreeMap;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::point::LatticePoint;

/// Polynomial with signed exponents. Only used while expanding products that
/// contain `t_i^{-1}`; it must be converted back with
/// [`LaurentPoly::into_polynomial`] before leaving the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LaurentPoly {
    p: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub(crate) fn monomial(exponents: Vec<i64>, coefficient: i64) -> Self {
        let mut terms = BTreeMap::new();
        let p = exponents.len();
        if coefficient != 0 {
            terms.insert(exponents, coefficient);
        }
        LaurentPoly { p, terms }
    }

    pub(crate) fn one(p: usize) -> Self {
        Self::monomial(vec![0; p], 1)
    }

    /// `1 - t_i^{-1}`
    pub(crate) fn one_minus_inverse(p: usize, i: usize) -> Self {
        let mut inv = vec![0; p];
        inv[i] = -1;
        let mut out = Self::one(p);
        out.terms.insert(inv, -1);
        out
    }

    pub(crate) fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        debug_assert_eq!(self.p, other.p);
        let mut terms: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let exponents = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?;
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                let slot = terms.entry(exponents).or_insert(0);
                *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(LaurentPoly { p: self.p, terms })
    }

    pub(crate) fn checked_add_assign(&mut self, other: &LaurentPoly) -> Result<()> {
        debug_assert_eq!(self.p, other.p);
        for (e, &c) in &other.terms {
            let slot = self.terms.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
            if *slot == 0 {
                self.terms.remove(e);
            }
        }
        Ok(())
    }

    pub(crate) fn zero(p: usize) -> Self {
        LaurentPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    /// Fails with [`Error::NegativeExponent`] if any exponent is negative.
    pub(crate) fn into_polynomial(self) -> Result<MultiPoly> {
        let p = self.p;
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| {
                LatticePoint::from_signed(&e)
                    .map(|n| (n, c))
                    .ok_or(Error::NegativeExponent(e))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(p, terms)
    }
}
