use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::canonical_cmp;
use super::render::{render_monomial, write_signed_terms};
use crate::error::{Error, Result};
use crate::point::LatticePoint;

/// Sparse polynomial in `t_1, …, t_p` with exact `i64` coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    p: usize,
    terms: BTreeMap<LatticePoint, i64>,
}

impl MultiPoly {
    pub fn zero(p: usize) -> Self {
        MultiPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: usize) -> Self {
        Self::monomial(LatticePoint::zero(p), 1)
    }

    pub fn monomial(exponents: LatticePoint, coefficient: i64) -> Self {
        let mut poly = Self::zero(exponents.dim());
        if coefficient != 0 {
            poly.terms.insert(exponents, coefficient);
        }
        poly
    }

    /// Collects `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(p: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, i64)>,
    {
        let mut poly = Self::zero(p);
        for (exponents, coefficient) in terms {
            exponents.check_dim(p)?;
            poly.add_term(exponents, coefficient)?;
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, i64> {
        &self.terms
    }

    pub fn coefficient(&self, exponents: &LatticePoint) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
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

    /// Terms in canonical order: total degree descending, then exponent
    /// vectors lexicographically descending.
    pub fn sorted_terms(&self) -> Vec<(&LatticePoint, i64)> {
        let mut out: Vec<_> = self.terms.iter().map(|(k, &v)| (k, v)).collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    pub(crate) fn add_term(&mut self, exponents: LatticePoint, coefficient: i64) -> Result<()> {
        if coefficient == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().checked_add(coefficient).ok_or(Error::Overflow)?;
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    fn check_same_dim(&self, other: &MultiPoly) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.p,
                found: other.p,
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        for (exponents, &c) in &other.terms {
            out.add_term(exponents.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(k, &c)| c.checked_neg().map(|c| (k.clone(), c)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(MultiPoly { p: self.p, terms })
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_dim(other)?;
        let mut out = MultiPoly::zero(self.p);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let exponents = a
                    .coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?;
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                out.add_term(LatticePoint::new(exponents), c)?;
            }
        }
        Ok(out)
    }

    /// Exact value at an integer point.
    pub fn eval(&self, t: &[i64]) -> Result<BigInt> {
        if t.len() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: t.len(),
            });
        }
        let mut total = BigInt::zero();
        for (exponents, &c) in &self.terms {
            let mut term = BigInt::from(c);
            for (&x, &e) in t.iter().zip(exponents.coords()) {
                term *= num_traits::pow(BigInt::from(x), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Sum of coefficients, i.e. the value at the all-ones vector.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, &c| acc + c)
    }

    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(n, c)| (c < 0, c.unsigned_abs().to_string(), render_monomial(n)));
        write_signed_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(p, terms.iter().map(|(e, c)| (LatticePoint::new(e.to_vec()), *c))).unwrap()
    }

    #[test]
    fn add_examples() {
        let cube = poly(2, &[(&[0, 3], 1)]);
        let neg = poly(2, &[(&[0, 3], -1)]);
        assert!(cube.checked_add(&neg).unwrap().is_zero());

        let a = poly(2, &[(&[1, 2], 1), (&[0, 2], -1)]);
        let expected = poly(2, &[(&[0, 3], 1), (&[1, 2], 1), (&[0, 2], -1)]);
        assert_eq!(a.checked_add(&cube).unwrap(), expected);

        assert_eq!(MultiPoly::zero(2).checked_add(&a).unwrap(), a);
        assert!(matches!(
            a.checked_add(&MultiPoly::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        let t1m1 = poly(2, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let t2m1 = poly(2, &[(&[0, 1], 1), (&[0, 0], -1)]);
        assert_eq!(
            t1m1.checked_mul(&t2m1).unwrap(),
            poly(2, &[(&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1), (&[0, 0], 1)])
        );
        assert_eq!(MultiPoly::one(2).checked_mul(&t1m1).unwrap(), t1m1);

        let a = poly(2, &[(&[2, 0], 1), (&[1, 0], -1)]);
        let t2 = poly(2, &[(&[0, 1], 1)]);
        assert_eq!(
            a.checked_mul(&t2).unwrap(),
            poly(2, &[(&[2, 1], 1), (&[1, 1], -1)])
        );
    }

    #[test]
    fn mul_overflow_is_reported() {
        let big = poly(1, &[(&[1], i64::MAX)]);
        let two = poly(1, &[(&[0], 2)]);
        assert_eq!(big.checked_mul(&two), Err(Error::Overflow));
    }

    #[test]
    fn canonical_strings() {
        let stal = poly(
            2,
            &[
                (&[0, 3], 1),
                (&[1, 2], 1),
                (&[0, 2], -1),
                (&[2, 1], 1),
                (&[1, 1], -1),
            ],
        );
        assert_eq!(stal.to_string(), "t1^2*t2 + t1*t2^2 + t2^3 - t1*t2 - t2^2");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(poly(2, &[(&[0, 0], -1)]).to_string(), "-1");
        assert_eq!(poly(2, &[(&[1, 0], 3), (&[0, 0], 1)]).to_string(), "3*t1 + 1");
        assert_eq!(poly(1, &[(&[2], -2), (&[0], -4)]).to_string(), "-2*t1^2 - 4");
    }

    #[test]
    fn eval_examples() {
        let stal = poly(
            2,
            &[
                (&[0, 3], 1),
                (&[1, 2], 1),
                (&[0, 2], -1),
                (&[2, 1], 1),
                (&[1, 1], -1),
            ],
        );
        assert_eq!(stal.eval(&[1, 1]).unwrap(), BigInt::from(1));
        assert_eq!(stal.coefficient_sum(), BigInt::from(1));
        assert_eq!(MultiPoly::zero(2).eval(&[5, -3]).unwrap(), BigInt::from(0));
        // t2^3 + t1 t2^2 - t2^2 + t1^2 t2 - t1 t2 at (2, -1)
        assert_eq!(stal.eval(&[2, -1]).unwrap(), BigInt::from(-1 + 2 - 1 - 4 + 2));
    }
}
