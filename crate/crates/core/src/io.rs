//! JSON documents for instances and polynomials.
//!
//! Instances are `{"points": [[..], ..]}` or
//! `{"rank": {"p": .., "cage": [..], "values": {"[]": 0, "[1]": .., ..}}}`
//! with subsets written as sorted 1-based index lists.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::poly::{BinomialBasisPoly, MultiPoly, RationalPoly};
use crate::polymatroid::{Polymatroid, RankFunction};
use crate::subset::{self, from_indices, full_mask, to_indices};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankDocument {
    pub p: usize,
    pub cage: Vec<u32>,
    #[serde(serialize_with = "serialize_values")]
    pub values: BTreeMap<String, u32>,
}

/// Emits subsets by size, then lexicographically.
fn serialize_values<S: Serializer>(values: &BTreeMap<String, u32>, s: S) -> Result<S::Ok, S::Error> {
    let mut entries: Vec<(Option<Vec<usize>>, &String, &u32)> = values
        .iter()
        .map(|(k, v)| (serde_json::from_str::<Vec<usize>>(k).ok(), k, v))
        .collect();
    entries.sort_by(|a, b| {
        let key = |e: &(Option<Vec<usize>>, &String, &u32)| {
            (
                e.0.as_ref().map_or(usize::MAX, Vec::len),
                e.0.clone(),
                e.1.clone(),
            )
        };
        key(a).cmp(&key(b))
    });
    s.collect_map(entries.into_iter().map(|(_, k, v)| (k, v)))
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::InvalidDocument {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn subset_key(mask: u32) -> String {
    let inner: Vec<String> = to_indices(mask).iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

impl InstanceDocument {
    /// Point form when the cage is the componentwise maximum of the points,
    /// rank form otherwise, so that parsing gives back the same polymatroid.
    pub fn from_polymatroid(poly: &Polymatroid) -> Self {
        let mut max = vec![0u32; poly.dim()];
        for n in poly.points() {
            for (m, &c) in max.iter_mut().zip(n.coords()) {
                *m = (*m).max(c);
            }
        }
        if max == poly.cage().coords() {
            Self::points_form(poly)
        } else {
            Self::rank_form(&poly.rank_function())
        }
    }

    pub fn points_form(poly: &Polymatroid) -> Self {
        InstanceDocument {
            points: Some(poly.points().iter().map(|n| n.coords().to_vec()).collect()),
            rank: None,
        }
    }

    pub fn rank_form(rk: &RankFunction) -> Self {
        let values = (0..=full_mask(rk.dim()))
            .map(|mask| (subset_key(mask), rk.rank_of(mask)))
            .collect();
        InstanceDocument {
            points: None,
            rank: Some(RankDocument {
                p: rk.dim(),
                cage: rk.cage().coords().to_vec(),
                values,
            }),
        }
    }

    pub fn to_polymatroid(&self) -> Result<Polymatroid> {
        match (&self.points, &self.rank) {
            (Some(points), None) => points_to_polymatroid(points),
            (None, Some(rank)) => Polymatroid::from_rank(&rank.to_rank_function()?),
            (Some(_), Some(_)) => Err(invalid(
                "$",
                "expected exactly one of `points` and `rank`, found both",
            )),
            (None, None) => Err(invalid("$", "expected one of `points` or `rank`")),
        }
    }
}

fn points_to_polymatroid(points: &[Vec<u32>]) -> Result<Polymatroid> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    if first.is_empty() {
        return Err(invalid("$.points[0]", "points need at least one coordinate"));
    }
    for (k, row) in points.iter().enumerate() {
        if row.len() != first.len() {
            return Err(invalid(
                format!("$.points[{k}]"),
                format!("expected {} coordinates, found {}", first.len(), row.len()),
            ));
        }
    }
    Polymatroid::from_points(points.iter().map(|row| LatticePoint::new(row.clone())))
}

impl RankDocument {
    pub fn to_rank_function(&self) -> Result<RankFunction> {
        subset::check_dim(self.p).map_err(|e| invalid("$.rank.p", e.to_string()))?;
        if self.cage.len() != self.p {
            return Err(invalid(
                "$.rank.cage",
                format!("expected {} entries, found {}", self.p, self.cage.len()),
            ));
        }
        let mut table: Vec<Option<u32>> = vec![None; 1 << self.p];
        for (key, &value) in &self.values {
            let location = format!("$.rank.values[{key:?}]");
            let indices: Vec<usize> = serde_json::from_str(key)
                .map_err(|_| invalid(&location, "subset keys are JSON index lists such as \"[1,3]\""))?;
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(&location, "indices must be strictly increasing"));
            }
            let mask = from_indices(&indices, self.p).map_err(|e| invalid(&location, e.to_string()))?;
            if table[mask as usize].replace(value).is_some() {
                return Err(invalid(&location, "subset listed twice"));
            }
        }
        let values = table
            .into_iter()
            .enumerate()
            .map(|(mask, v)| {
                v.ok_or_else(|| {
                    invalid(
                        "$.rank.values",
                        format!("missing subset {}", subset_key(mask as u32)),
                    )
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        RankFunction::new(self.p, values, LatticePoint::new(self.cage.clone()))
    }
}

pub fn parse_instance_document(text: &str) -> Result<InstanceDocument> {
    parse_json(text)
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Polymatroid> {
    parse_instance_document(text)?.to_polymatroid()
}

pub fn serialize_instance(poly: &Polymatroid) -> String {
    serde_json::to_string(&InstanceDocument::from_polymatroid(poly)).expect("instance documents serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Binomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub exponents: Vec<u32>,
    pub coefficient: i64,
}

/// Integer polynomial in the monomial or binomial basis. `offset` is only
/// present for the shifted binomial basis `C(t_i + n_i + offset, n_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDocument {
    pub basis: Basis,
    pub p: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub offset: i64,
    pub terms: Vec<TermDocument>,
    pub canonical: String,
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

impl PolynomialDocument {
    pub fn monomial(q: &MultiPoly) -> Self {
        PolynomialDocument {
            basis: Basis::Monomial,
            p: q.dim(),
            offset: 0,
            terms: q
                .sorted_terms()
                .into_iter()
                .map(|(n, c)| TermDocument {
                    exponents: n.coords().to_vec(),
                    coefficient: c,
                })
                .collect(),
            canonical: q.canonical_string(),
        }
    }

    pub fn binomial(q: &BinomialBasisPoly) -> Self {
        PolynomialDocument {
            basis: Basis::Binomial,
            p: q.dim(),
            offset: q.offset(),
            terms: q
                .sorted_terms()
                .into_iter()
                .map(|(n, c)| TermDocument {
                    exponents: n.coords().to_vec(),
                    coefficient: c,
                })
                .collect(),
            canonical: q.canonical_string(),
        }
    }

    /// The term list, checked; the canonical string is not consulted.
    fn checked_terms(&self) -> Result<Vec<(LatticePoint, i64)>> {
        let mut seen = BTreeSet::new();
        for (k, term) in self.terms.iter().enumerate() {
            let location = format!("$.terms[{k}]");
            if term.exponents.len() != self.p {
                return Err(invalid(
                    location,
                    format!("expected {} exponents, found {}", self.p, term.exponents.len()),
                ));
            }
            if term.coefficient == 0 {
                return Err(invalid(location, "zero coefficient"));
            }
            if !seen.insert(term.exponents.clone()) {
                return Err(invalid(location, "repeated exponent vector"));
            }
        }
        Ok(self
            .terms
            .iter()
            .map(|t| (LatticePoint::new(t.exponents.clone()), t.coefficient))
            .collect())
    }

    pub fn to_multi(&self) -> Result<MultiPoly> {
        if self.basis != Basis::Monomial || self.offset != 0 {
            return Err(invalid("$.basis", "expected the monomial basis"));
        }
        MultiPoly::from_terms(self.p, self.checked_terms()?)
    }

    pub fn to_binomial(&self) -> Result<BinomialBasisPoly> {
        if self.basis != Basis::Binomial {
            return Err(invalid("$.basis", "expected the binomial basis"));
        }
        BinomialBasisPoly::from_terms(self.p, self.offset, self.checked_terms()?)
    }
}

pub fn parse_polynomial_document(text: &str) -> Result<PolynomialDocument> {
    parse_json(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalTermDocument {
    pub exponents: Vec<u32>,
    /// `"p/q"` in lowest terms, or `"p"` for integers.
    pub coefficient: String,
}

/// Rational polynomial in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalDocument {
    pub basis: Basis,
    pub p: usize,
    pub terms: Vec<RationalTermDocument>,
    pub canonical: String,
}

impl RationalDocument {
    pub fn new(q: &RationalPoly) -> Self {
        RationalDocument {
            basis: Basis::Monomial,
            p: q.dim(),
            terms: q
                .sorted_terms()
                .into_iter()
                .map(|(n, c)| RationalTermDocument {
                    exponents: n.coords().to_vec(),
                    coefficient: c.to_string(),
                })
                .collect(),
            canonical: q.canonical_string(),
        }
    }

    pub fn to_rational(&self) -> Result<RationalPoly> {
        let mut out = RationalPoly::zero(self.p);
        for (k, term) in self.terms.iter().enumerate() {
            let location = format!("$.terms[{k}]");
            if term.exponents.len() != self.p {
                return Err(invalid(location, "wrong number of exponents"));
            }
            let c = parse_rational(&term.coefficient)
                .ok_or_else(|| invalid(&location, format!("bad coefficient {:?}", term.coefficient)))?;
            out.add_term(LatticePoint::new(term.exponents.clone()), c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn parse_rational_document(text: &str) -> Result<RationalDocument> {
    parse_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ExchangeWitness;

    #[test]
    fn parse_examples() {
        let running = parse_instance(r#"{"points": [[0,3],[1,2],[2,1]]}"#).unwrap();
        assert_eq!(running.len(), 3);
        assert_eq!(running.rank(), 3);

        let zero = parse_instance(r#"{"rank": {"p":1, "cage":[0], "values":{"[]":0,"[1]":0}}}"#).unwrap();
        assert_eq!(zero.points().iter().next(), Some(&LatticePoint::from([0])));

        assert!(matches!(
            parse_instance(r#"{"points": [[2,0],[0,2]]}"#),
            Err(Error::NotMConvex(ExchangeWitness::Exchange { .. }))
        ));
    }

    #[test]
    fn structural_errors_carry_locations() {
        assert!(matches!(
            parse_instance("{\"points\": [[0,3],\n [1,2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"points": [[0,3],[1]]}"#),
            Err(Error::InvalidDocument { location, .. }) if location == "$.points[1]"
        ));
        assert!(matches!(
            parse_instance(r#"{}"#),
            Err(Error::InvalidDocument { .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"points": [[1]], "rank": {"p":1,"cage":[1],"values":{"[]":0,"[1]":1}}}"#),
            Err(Error::InvalidDocument { .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"points": [], "x": 1}"#),
            Err(Error::Parse { .. })
        ));
        assert_eq!(parse_instance(r#"{"points": []}"#), Err(Error::EmptyInput));
        assert!(matches!(
            parse_instance(r#"{"rank": {"p":2,"cage":[1,1],"values":{"[]":0,"[1]":1,"[2]":1}}}"#),
            Err(Error::InvalidDocument { message, .. }) if message.contains("[1,2]")
        ));
        assert!(matches!(
            parse_instance(r#"{"rank": {"p":2,"cage":[1,1],"values":{"[]":0,"[1]":1,"[2]":1,"[2,1]":1}}}"#),
            Err(Error::InvalidDocument { .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"rank": {"p":1,"cage":[1],"values":{"[]":1,"[1]":1}}}"#),
            Err(Error::AxiomViolation(_))
        ));
    }

    #[test]
    fn instance_round_trip() {
        let running = parse_instance(r#"{"points": [[0,3],[1,2],[2,1]]}"#).unwrap();
        let text = serialize_instance(&running);
        assert_eq!(text, r#"{"points":[[0,3],[1,2],[2,1]]}"#);
        assert_eq!(parse_instance(&text).unwrap(), running);

        // a cage larger than the points forces the rank form
        let loose = parse_instance(r#"{"rank": {"p":1,"cage":[2],"values":{"[]":0,"[1]":1}}}"#).unwrap();
        let text = serialize_instance(&loose);
        assert_eq!(text, r#"{"rank":{"p":1,"cage":[2],"values":{"[]":0,"[1]":1}}}"#);
        assert_eq!(parse_instance(&text).unwrap(), loose);
    }

    #[test]
    fn polynomial_documents() {
        let q =
            MultiPoly::from_terms(2, [([0, 3].into(), 1), ([1, 1].into(), -1), ([2, 1].into(), 1)]).unwrap();
        let doc = PolynomialDocument::monomial(&q);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"basis":"monomial","p":2,"terms":[{"exponents":[2,1],"coefficient":1},{"exponents":[0,3],"coefficient":1},{"exponents":[1,1],"coefficient":-1}],"canonical":"t1^2*t2 + t2^3 - t1*t2"}"#
        );
        assert_eq!(parse_polynomial_document(&text).unwrap().to_multi().unwrap(), q);

        let zero = PolynomialDocument::monomial(&MultiPoly::zero(3));
        assert_eq!(zero.to_multi().unwrap(), MultiPoly::zero(3));

        let bad = r#"{"basis":"monomial","p":1,"terms":[{"exponents":[1],"coefficient":0}],"canonical":""}"#;
        assert!(parse_polynomial_document(bad).unwrap().to_multi().is_err());
        assert!(doc.to_binomial().is_err());
    }

    #[test]
    fn rational_documents() {
        assert_eq!(parse_rational("3/6"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(BigRational::from_integer((-4).into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
