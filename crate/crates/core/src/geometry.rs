//! Lattice points of base and independence polytopes, truncations, and the
//! cave predicate.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algorithms::{stalactite_decomposition, LexOrder};
use crate::error::{Error, ExchangeWitness, Result};
use crate::point::{common_dim, LatticePoint};
use crate::polymatroid::{
    enumerate_box, is_generalized_polymatroid, is_m_convex, satisfies_rank, Polymatroid,
};

/// `1` if `n` is a base point, `0` otherwise. Vectors with negative entries
/// are outside `ℕ^p` and score `0`.
pub fn indicator(poly: &Polymatroid, n: &[i64]) -> Result<u8> {
    if n.len() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            found: n.len(),
        });
    }
    Ok(match LatticePoint::from_signed(n) {
        Some(point) if poly.contains(&point) => 1,
        _ => 0,
    })
}

/// `I(𝒫) ∩ ℕ^p` for a particular polymatroid.
#[derive(Debug, Clone)]
pub struct IndependenceSet<'a> {
    source: &'a Polymatroid,
    points: BTreeSet<LatticePoint>,
}

impl<'a> IndependenceSet<'a> {
    pub fn source(&self) -> &'a Polymatroid {
        self.source
    }

    pub fn points(&self) -> &BTreeSet<LatticePoint> {
        &self.points
    }

    pub fn into_points(self) -> BTreeSet<LatticePoint> {
        self.points
    }

    pub fn contains(&self, n: &LatticePoint) -> bool {
        self.points.contains(n)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All `n ∈ ℕ^p` with `Σ_{i∈I} n_i <= rk(I)` for every `I`, enumerated over
/// the box `n_i <= rk({i})`.
pub fn independence_points(poly: &Polymatroid) -> IndependenceSet<'_> {
    let rk = poly.rank_function();
    let p = poly.dim();
    let bounds: Vec<u32> = (0..p).map(|i| rk.rank_of(1 << i)).collect();
    let mut points = BTreeSet::new();
    let mut current = vec![0u32; p];
    for degree in 0..=poly.rank() {
        enumerate_box(&bounds, degree, 0, &mut current, &mut |n| {
            let point = LatticePoint::new(n.to_vec());
            if satisfies_rank(&point, &rk) {
                points.insert(point);
            }
        });
    }
    debug_assert_eq!(points, downward_closure(poly.points()));
    IndependenceSet { source: poly, points }
}

/// Every `n >= 0` lying componentwise below some member of `points`.
pub fn downward_closure(points: &BTreeSet<LatticePoint>) -> BTreeSet<LatticePoint> {
    let mut seen: BTreeSet<LatticePoint> = BTreeSet::new();
    let mut stack: Vec<LatticePoint> = points.iter().cloned().collect();
    while let Some(n) = stack.pop() {
        if !seen.insert(n.clone()) {
            continue;
        }
        for i in 0..n.dim() {
            if let Some(lower) = n.minus_unit(i) {
                if !seen.contains(&lower) {
                    stack.push(lower);
                }
            }
        }
    }
    seen
}

/// `n ∈ I(𝒫)`, tested against the rank inequalities.
pub fn in_independence(poly: &Polymatroid, n: &LatticePoint) -> Result<bool> {
    n.check_dim(poly.dim())?;
    Ok(satisfies_rank(n, &poly.rank_function()))
}

/// `𝒫_n = 𝒫 ∩ (n + ℕ^p)` for `n ∈ I(𝒫)`. The result is checked for
/// M-convexity on every call.
pub fn truncate(poly: &Polymatroid, n: &LatticePoint) -> Result<Polymatroid> {
    if !in_independence(poly, n)? {
        return Err(Error::NotInIndependence(n.clone()));
    }
    let kept: BTreeSet<LatticePoint> = poly.points().iter().filter(|u| n.is_below(u)).cloned().collect();
    Polymatroid::from_points(kept)
        .map_err(|e| Error::InternalInvariantFailure(format!("truncation at {n} is not a polymatroid: {e}")))
}

/// Members of `a` of maximal coordinate sum.
pub fn top_elements(a: &BTreeSet<LatticePoint>) -> Result<BTreeSet<LatticePoint>> {
    let top = a
        .iter()
        .map(LatticePoint::degree)
        .max()
        .ok_or(Error::EmptyInput)?;
    Ok(a.iter().filter(|n| n.degree() == top).cloned().collect())
}

/// `A_b = {n ∈ A : n >= b}`.
pub fn truncation_set(a: &BTreeSet<LatticePoint>, b: &LatticePoint) -> Result<BTreeSet<LatticePoint>> {
    for n in a {
        n.check_dim(b.dim())?;
    }
    Ok(a.iter().filter(|n| b.is_below(n)).cloned().collect())
}

/// The first cave condition that fails, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum CaveFailure {
    /// Condition 1: the top elements are not a polymatroid.
    TopsNotPolymatroid { witness: ExchangeWitness },
    /// Condition 2: the set differs from the union of stalactites of its tops.
    NotStalactiteUnion {
        missing: Vec<LatticePoint>,
        extra: Vec<LatticePoint>,
    },
    /// Condition 3: some truncation is not a generalized polymatroid.
    TruncationNotGeneralized {
        at: LatticePoint,
        witness: ExchangeWitness,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaveReport {
    /// 0-based priority permutation; serialized 1-based.
    #[serde(serialize_with = "one_based")]
    pub order: Vec<usize>,
    pub is_cave: bool,
    pub failure: Option<CaveFailure>,
}

fn one_based<S: serde::Serializer>(order: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(order.iter().map(|i| i + 1))
}

/// Checks the three cave conditions, building stalactites under `order`.
///
/// Condition 3 ranges over the nonzero `b` below some member of `c`; every
/// other nonzero `b` gives an empty truncation, which is accepted.
pub fn is_cave(c: &BTreeSet<LatticePoint>, order: &LexOrder) -> Result<CaveReport> {
    let p = common_dim(c)?;
    if order.dim() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: order.dim(),
        });
    }
    let report = |failure: Option<CaveFailure>| CaveReport {
        order: order.priority().to_vec(),
        is_cave: failure.is_none(),
        failure,
    };

    let tops = top_elements(c)?;
    if let Err(witness) = is_m_convex(&tops)? {
        return Ok(report(Some(CaveFailure::TopsNotPolymatroid { witness })));
    }
    let tops = Polymatroid::from_points(tops)?;
    let union = stalactite_decomposition(&tops, order)?.union();
    if &union != c {
        return Ok(report(Some(CaveFailure::NotStalactiteUnion {
            missing: union.difference(c).cloned().collect(),
            extra: c.difference(&union).cloned().collect(),
        })));
    }

    for b in downward_closure(c) {
        if b.is_zero() {
            continue;
        }
        let slice = truncation_set(c, &b)?;
        if slice.is_empty() {
            continue;
        }
        if let Err(witness) = is_generalized_polymatroid(&slice)? {
            return Ok(report(Some(CaveFailure::TruncationNotGeneralized {
                at: b,
                witness,
            })));
        }
    }
    Ok(report(None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[&[u32]]) -> BTreeSet<LatticePoint> {
        points.iter().map(|c| LatticePoint::new(c.to_vec())).collect()
    }

    fn running() -> Polymatroid {
        Polymatroid::from_points(set(&[&[0, 3], &[1, 2], &[2, 1]])).unwrap()
    }

    fn running_cave() -> BTreeSet<LatticePoint> {
        set(&[&[0, 3], &[1, 2], &[2, 1], &[0, 2], &[1, 1]])
    }

    #[test]
    fn indicator_examples() {
        let p = running();
        assert_eq!(indicator(&p, &[0, 3]).unwrap(), 1);
        assert_eq!(indicator(&p, &[3, 0]).unwrap(), 0);
        assert_eq!(indicator(&p, &[-1, 4]).unwrap(), 0);
        assert!(indicator(&p, &[1]).is_err());
    }

    #[test]
    fn independence_examples() {
        let p = running();
        let ind = independence_points(&p);
        assert_eq!(
            ind.points(),
            &set(&[
                &[0, 0],
                &[0, 1],
                &[0, 2],
                &[0, 3],
                &[1, 0],
                &[1, 1],
                &[1, 2],
                &[2, 0],
                &[2, 1]
            ])
        );
        let single = Polymatroid::from_points(set(&[&[0]])).unwrap();
        assert_eq!(independence_points(&single).points(), &set(&[&[0]]));
        let unit = Polymatroid::from_points(set(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            independence_points(&unit).points(),
            &set(&[&[0, 0], &[1, 0], &[0, 1]])
        );
    }

    #[test]
    fn truncate_examples() {
        let p = running();
        assert_eq!(
            truncate(&p, &[1, 1].into()).unwrap().points(),
            &set(&[&[1, 2], &[2, 1]])
        );
        assert_eq!(truncate(&p, &[0, 0].into()).unwrap(), p);
        assert_eq!(truncate(&p, &[0, 3].into()).unwrap().points(), &set(&[&[0, 3]]));
        assert_eq!(
            truncate(&p, &[3, 0].into()),
            Err(Error::NotInIndependence([3, 0].into()))
        );
    }

    #[test]
    fn tops_and_truncation_sets() {
        assert_eq!(top_elements(&running_cave()).unwrap(), *running().points());
        assert_eq!(top_elements(&set(&[&[4, 1]])).unwrap(), set(&[&[4, 1]]));
        assert_eq!(
            top_elements(&set(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap(),
            set(&[&[1, 0], &[0, 1]])
        );
        assert_eq!(top_elements(&BTreeSet::new()), Err(Error::EmptyInput));

        assert_eq!(
            truncation_set(&running_cave(), &[1, 1].into()).unwrap(),
            set(&[&[1, 2], &[2, 1], &[1, 1]])
        );
        assert_eq!(
            truncation_set(&running_cave(), &[0, 0].into()).unwrap(),
            running_cave()
        );
        assert_eq!(
            truncation_set(&running_cave(), &[0, 2].into()).unwrap(),
            set(&[&[0, 3], &[1, 2], &[0, 2]])
        );
    }

    #[test]
    fn cave_predicate_examples() {
        let order = LexOrder::identity(2);
        assert!(is_cave(&running_cave(), &order).unwrap().is_cave);

        let tops_only = is_cave(running().points(), &order).unwrap();
        assert_eq!(
            tops_only.failure,
            Some(CaveFailure::NotStalactiteUnion {
                missing: vec![[0, 2].into(), [1, 1].into()],
                extra: vec![]
            })
        );

        assert!(is_cave(&set(&[&[0]]), &LexOrder::identity(1)).unwrap().is_cave);

        let bad_tops = is_cave(&set(&[&[2, 0], &[0, 2]]), &order).unwrap();
        assert!(matches!(
            bad_tops.failure,
            Some(CaveFailure::TopsNotPolymatroid { .. })
        ));
        assert_eq!(is_cave(&BTreeSet::new(), &order), Err(Error::EmptyInput));
    }
}
