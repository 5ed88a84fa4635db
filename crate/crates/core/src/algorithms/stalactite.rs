use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{sign, LexOrder};
use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::poly::MultiPoly;
use crate::polymatroid::Polymatroid;

/// `point = u - e_direction + e_target` is a base point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Neighbor {
    pub direction: usize,
    pub target: usize,
    pub point: LatticePoint,
}

/// `St(apex; J) = {apex - e_J' : J' ⊆ J}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stalactite {
    pub apex: LatticePoint,
    pub directions: Vec<usize>,
    pub members: BTreeSet<LatticePoint>,
}

impl Stalactite {
    fn hanging(apex: LatticePoint, directions: Vec<usize>) -> Self {
        let mask: u32 = directions.iter().map(|&i| 1u32 << i).sum();
        let mut members = BTreeSet::new();
        // every submask of `mask`
        let mut sub = mask;
        loop {
            let member = apex
                .minus_mask(sub)
                .expect("stalactite directions lie in the support of the apex");
            members.insert(member);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        debug_assert_eq!(members.len(), 1 << directions.len());
        Stalactite {
            apex,
            directions,
            members,
        }
    }
}

/// Stalactites of every base point, in the order that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StalactiteDecomposition {
    #[serde(serialize_with = "serialize_order")]
    pub order: LexOrder,
    pub stalactites: Vec<Stalactite>,
}

fn serialize_order<S: serde::Serializer>(order: &LexOrder, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(order.priority().iter().map(|i| i + 1))
}

impl StalactiteDecomposition {
    /// The cave set: the union of all stalactites.
    pub fn union(&self) -> BTreeSet<LatticePoint> {
        self.stalactites
            .iter()
            .flat_map(|s| s.members.iter().cloned())
            .collect()
    }

    /// Number of stalactites containing each point (nonzero entries only).
    pub fn counts(&self) -> BTreeMap<LatticePoint, u64> {
        let mut counts = BTreeMap::new();
        for member in self.stalactites.iter().flat_map(|s| &s.members) {
            *counts.entry(member.clone()).or_insert(0) += 1;
        }
        counts
    }
}

fn require_base(poly: &Polymatroid, u: &LatticePoint) -> Result<()> {
    u.check_dim(poly.dim())?;
    if poly.contains(u) {
        Ok(())
    } else {
        Err(Error::NotABasePoint(u.clone()))
    }
}

/// All base points of the form `u - e_ℓ + e_j`, `ℓ != j`.
pub fn neighbors(poly: &Polymatroid, u: &LatticePoint) -> Result<Vec<Neighbor>> {
    require_base(poly, u)?;
    let p = poly.dim();
    let mut out = Vec::new();
    for direction in 0..p {
        for target in (0..p).filter(|&j| j != direction) {
            if let Some(point) = u.exchange(direction, target) {
                if poly.contains(&point) {
                    out.push(Neighbor {
                        direction,
                        target,
                        point,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `St(u; V)`: the directions are the `ℓ` for which `u` has a neighbor
/// `u - e_ℓ + e_j` inside `v`.
pub fn stalactite(u: &LatticePoint, v: &BTreeSet<LatticePoint>, poly: &Polymatroid) -> Result<Stalactite> {
    require_base(poly, u)?;
    for w in v {
        require_base(poly, w)?;
    }
    let directions = directions_where(u, poly.dim(), |w| v.contains(w));
    Ok(Stalactite::hanging(u.clone(), directions))
}

fn directions_where(u: &LatticePoint, p: usize, accept: impl Fn(&LatticePoint) -> bool) -> Vec<usize> {
    (0..p)
        .filter(|&l| {
            (0..p)
                .filter(|&j| j != l)
                .any(|j| u.exchange(l, j).is_some_and(|w| accept(&w)))
        })
        .collect()
}

/// Sorts the base points by `order` and hangs from each the stalactite
/// towards its predecessors.
pub fn stalactite_decomposition(poly: &Polymatroid, order: &LexOrder) -> Result<StalactiteDecomposition> {
    if order.dim() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            found: order.dim(),
        });
    }
    let mut sorted: Vec<&LatticePoint> = poly.points().iter().collect();
    sorted.sort_by(|a, b| order.compare(a, b));
    let stalactites = sorted
        .into_iter()
        .map(|apex| {
            // predecessors of `apex` are exactly the base points before it
            let directions = directions_where(apex, poly.dim(), |w| {
                poly.contains(w) && order.compare(w, apex) == Ordering::Less
            });
            Stalactite::hanging(apex.clone(), directions)
        })
        .collect();
    Ok(StalactiteDecomposition {
        order: order.clone(),
        stalactites,
    })
}

/// `c_n(𝒫)`: how many stalactites contain `n`.
pub fn stalactite_counts(poly: &Polymatroid, order: &LexOrder) -> Result<BTreeMap<LatticePoint, u64>> {
    Ok(stalactite_decomposition(poly, order)?.counts())
}

/// `c'_n(𝒫) = (-1)^(rk - |n|) c_n(𝒫)`.
pub fn signed_counts(poly: &Polymatroid, order: &LexOrder) -> Result<BTreeMap<LatticePoint, i64>> {
    let rank = poly.rank();
    Ok(stalactite_counts(poly, order)?
        .into_iter()
        .map(|(n, c)| {
            let signed = sign(rank, n.degree()) * c as i64;
            (n, signed)
        })
        .collect())
}

pub fn stalactite_polynomial(poly: &Polymatroid, order: &LexOrder) -> Result<MultiPoly> {
    MultiPoly::from_terms(poly.dim(), signed_counts(poly, order)?)
}
