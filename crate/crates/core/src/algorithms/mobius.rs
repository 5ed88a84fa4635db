use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::independence_points;
use crate::point::LatticePoint;
use crate::poly::MultiPoly;
use crate::polymatroid::Polymatroid;

/// `μ_𝒫(n) = -μ_P(n, 1̂)` on the lattice points of the independence region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: BTreeMap<LatticePoint, i64>,
}

impl MobiusTable {
    /// `0` outside the independence region.
    pub fn get(&self, n: &LatticePoint) -> i64 {
        self.values.get(n).copied().unwrap_or(0)
    }

    /// Every independence point with its value, zeros included.
    pub fn values(&self) -> &BTreeMap<LatticePoint, i64> {
        &self.values
    }
}

/// Closed form of the interval Möbius function: `(-1)^j` when `n - m` is a
/// 0/1 vector with `j` ones, `0` otherwise.
pub fn mobius_interval(m: &LatticePoint, n: &LatticePoint) -> Result<i64> {
    m.check_dim(n.dim())?;
    if !m.is_below(n) {
        return Err(Error::NotComparable(m.clone(), n.clone()));
    }
    let mut ones = 0;
    for (a, b) in m.coords().iter().zip(n.coords()) {
        match b - a {
            0 => {}
            1 => ones += 1,
            _ => return Ok(0),
        }
    }
    Ok(if ones % 2 == 0 { 1 } else { -1 })
}

/// The three-case recurrence, evaluated from the top degree down:
/// `1` on base points, `1 - Σ_{m > n} μ(m)` elsewhere in the region.
pub fn mobius_table(poly: &Polymatroid) -> MobiusTable {
    let mut points: Vec<LatticePoint> = independence_points(poly).into_points().into_iter().collect();
    points.sort_by_key(|n| std::cmp::Reverse(n.degree()));
    let mut values: BTreeMap<LatticePoint, i64> = BTreeMap::new();
    for n in &points {
        let mu = if poly.contains(n) {
            1
        } else {
            // everything strictly above n has larger degree, hence is done
            1 - values
                .iter()
                .filter(|(m, _)| *m != n && n.is_below(m))
                .map(|(_, &v)| v)
                .sum::<i64>()
        };
        values.insert(n.clone(), mu);
    }
    MobiusTable { values }
}

/// `μ_𝒫(n) = Σ_{u ∈ I, u >= n} μ_P(n, u)` using the closed form.
pub fn mobius_table_from_intervals(poly: &Polymatroid) -> Result<MobiusTable> {
    let points = independence_points(poly).into_points();
    let mut values = BTreeMap::new();
    for n in &points {
        let mut total = 0;
        for u in points.iter().filter(|u| n.is_below(u)) {
            total += mobius_interval(n, u)?;
        }
        values.insert(n.clone(), total);
    }
    Ok(MobiusTable { values })
}

/// `μ_P(m, a)` for every `a >= m` in `points`, straight from the defining
/// recurrence `μ(m, a) = -Σ_{m <= b < a} μ(m, b)`.
pub fn interval_mobius_brute_force(
    points: &BTreeSet<LatticePoint>,
    m: &LatticePoint,
) -> BTreeMap<LatticePoint, i64> {
    let mut above: Vec<&LatticePoint> = points.iter().filter(|a| m.is_below(a)).collect();
    above.sort_by_key(|a| a.degree());
    let mut values: BTreeMap<LatticePoint, i64> = BTreeMap::new();
    for a in above {
        let mu = if a == m {
            1
        } else {
            -values
                .iter()
                .filter(|(b, _)| b.is_below(a))
                .map(|(_, &v)| v)
                .sum::<i64>()
        };
        values.insert(a.clone(), mu);
    }
    values
}

pub fn mobius_polynomial(poly: &Polymatroid) -> Result<MultiPoly> {
    let table = mobius_table(poly);
    MultiPoly::from_terms(poly.dim(), table.values.into_iter().filter(|(_, v)| *v != 0))
}
