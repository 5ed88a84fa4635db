use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::render::write_signed_terms;
use super::{canonical_cmp, MultiPoly, RationalPoly};
use crate::error::{Error, Result};
use crate::point::LatticePoint;

/// `Σ_n c_n ∏_i C(t_i + n_i + offset, n_i)`.
///
/// `offset = 0` is the image of the monomial basis under the binomial map;
/// `offset = -1` is the shifted basis `C(t_i + n_i - 1, n_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialBasisPoly {
    p: usize,
    offset: i64,
    terms: BTreeMap<LatticePoint, i64>,
}

/// Reinterprets each monomial `t^n` as `∏ C(t_i + n_i, n_i)`.
pub fn binomial_map(q: &MultiPoly) -> BinomialBasisPoly {
    BinomialBasisPoly {
        p: q.dim(),
        offset: 0,
        terms: q.terms().clone(),
    }
}

impl BinomialBasisPoly {
    pub fn new(p: usize, offset: i64) -> Self {
        BinomialBasisPoly {
            p,
            offset,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(p: usize, offset: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, i64)>,
    {
        let mut out = Self::new(p, offset);
        for (n, c) in terms {
            n.check_dim(p)?;
            out.add_term(n, c)?;
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, n: LatticePoint, c: i64) -> Result<()> {
        let slot = self.terms.entry(n.clone()).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.terms.remove(&n);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sorted_terms(&self) -> Vec<(&LatticePoint, i64)> {
        let mut out: Vec<_> = self.terms.iter().map(|(k, &v)| (k, v)).collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    /// Exact value at an integer point, using generalized binomial
    /// coefficients so negative arguments are allowed too.
    pub fn eval(&self, t: &[i64]) -> Result<BigInt> {
        if t.len() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: t.len(),
            });
        }
        let mut total = BigInt::zero();
        for (n, &c) in &self.terms {
            let mut term = BigInt::from(c);
            for (&x, &k) in t.iter().zip(n.coords()) {
                let top = BigInt::from(x) + BigInt::from(k) + BigInt::from(self.offset);
                term *= binomial(&top, k);
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Expands every `C(t + n + offset, n) = ∏_{k=1}^{n} (t + offset + k) / n!`
    /// into the monomial basis with rational coefficients.
    pub fn expand(&self) -> RationalPoly {
        let mut cache: BTreeMap<u32, Vec<BigRational>> = BTreeMap::new();
        let mut out = RationalPoly::zero(self.p);
        for (n, &c) in &self.terms {
            let factors: Vec<Vec<BigRational>> = n
                .coords()
                .iter()
                .map(|&k| {
                    cache
                        .entry(k)
                        .or_insert_with(|| univariate_binomial(k, self.offset))
                        .clone()
                })
                .collect();
            let mut exps = vec![0u32; self.p];
            expand_product(
                &factors,
                0,
                &mut exps,
                BigRational::from_integer(c.into()),
                &mut out,
            );
        }
        out
    }

    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn expand_product(
    factors: &[Vec<BigRational>],
    pos: usize,
    exps: &mut Vec<u32>,
    coeff: BigRational,
    out: &mut RationalPoly,
) {
    if pos == factors.len() {
        out.add_term(LatticePoint::new(exps.clone()), coeff);
        return;
    }
    for (e, a) in factors[pos].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        exps[pos] = e as u32;
        expand_product(factors, pos + 1, exps, &coeff * a, out);
    }
    exps[pos] = 0;
}

/// Coefficients (constant first) of `∏_{k=1}^{n} (t + offset + k) / n!`.
fn univariate_binomial(n: u32, offset: i64) -> Vec<BigRational> {
    let mut coeffs = vec![BigInt::one()];
    let mut factorial = BigInt::one();
    for k in 1..=i64::from(n) {
        let shift = BigInt::from(offset + k);
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (d, a) in coeffs.iter().enumerate() {
            next[d + 1] += a;
            next[d] += a * &shift;
        }
        coeffs = next;
        factorial *= k;
    }
    coeffs
        .into_iter()
        .map(|a| BigRational::new(a, factorial.clone()))
        .collect()
}

/// `C(x, k) = x (x-1) ⋯ (x-k+1) / k!` for any integer `x`.
pub(crate) fn binomial(x: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= x - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

fn render_factor(i: usize, k: u32, offset: i64) -> String {
    let shift = i64::from(k) + offset;
    let top = match shift.cmp(&0) {
        std::cmp::Ordering::Greater => format!("t{}+{shift}", i + 1),
        std::cmp::Ordering::Less => format!("t{}{shift}", i + 1),
        std::cmp::Ordering::Equal => format!("t{}", i + 1),
    };
    format!("C({top},{k})")
}

impl fmt::Display for BinomialBasisPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms().into_iter().map(|(n, c)| {
            let basis = n
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| render_factor(i, k, self.offset))
                .collect::<Vec<_>>()
                .join("*");
            (c < 0, c.unsigned_abs().to_string(), basis)
        });
        write_signed_terms(f, terms)
    }
}
