//! Polymatroids as rank functions and as M-convex point sets, and the
//! exchange-property checks shared by both.

use std::collections::BTreeSet;

use crate::error::{Axiom, AxiomViolation, Error, ExchangeWitness, Result};
use crate::point::{common_dim, LatticePoint};
use crate::subset::{self, full_mask};

/// Outcome of an exchange-property check; the error side carries the witness.
pub type ExchangeCheck = std::result::Result<(), ExchangeWitness>;

/// A validated polymatroid rank function on `[p]`, tabulated over all `2^p`
/// subsets (index = bit mask).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    p: usize,
    values: Vec<u32>,
    cage: LatticePoint,
}

impl RankFunction {
    /// Validates `values` (indexed by subset mask) against the four axioms.
    pub fn new(p: usize, values: Vec<u32>, cage: LatticePoint) -> Result<Self> {
        validate_rank_function(p, values, cage)
    }

    /// Tabulates `f` over all subsets and validates the result.
    pub fn from_fn(p: usize, cage: LatticePoint, f: impl Fn(u32) -> u32) -> Result<Self> {
        subset::check_dim(p)?;
        let values = (0..=full_mask(p)).map(f).collect();
        validate_rank_function(p, values, cage)
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn cage(&self) -> &LatticePoint {
        &self.cage
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `rk(I)` for the subset encoded by `mask`.
    pub fn rank_of(&self, mask: u32) -> u32 {
        self.values[mask as usize]
    }

    /// `rk([p])`.
    pub fn rank(&self) -> u32 {
        self.rank_of(full_mask(self.p))
    }
}

/// Checks the rank axioms and reports one witnessing subset pair for every
/// axiom that fails.
pub fn validate_rank_function(p: usize, values: Vec<u32>, cage: LatticePoint) -> Result<RankFunction> {
    subset::check_dim(p)?;
    cage.check_dim(p)?;
    let size = 1usize << p;
    if values.len() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: values.len(),
        });
    }
    let violations = axiom_violations(p, &values, &cage);
    if violations.is_empty() {
        Ok(RankFunction { p, values, cage })
    } else {
        Err(Error::AxiomViolation(violations))
    }
}

fn axiom_violations(p: usize, values: &[u32], cage: &LatticePoint) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let v = |mask: u32| values[mask as usize];

    if v(0) != 0 {
        out.push(AxiomViolation {
            axiom: Axiom::Normalized,
            first: 0,
            second: 0,
        });
    }

    if let Some(i) = (0..p).find(|&i| v(1 << i) > cage.coords()[i]) {
        out.push(AxiomViolation {
            axiom: Axiom::SingletonBound,
            first: 1 << i,
            second: 1 << i,
        });
    }

    // Single-element extensions suffice for monotonicity.
    'mono: for mask in 0..=full_mask(p) {
        for i in 0..p {
            let bigger = mask | (1 << i);
            if bigger != mask && v(mask) > v(bigger) {
                out.push(AxiomViolation {
                    axiom: Axiom::Monotone,
                    first: mask,
                    second: bigger,
                });
                break 'mono;
            }
        }
    }

    // Submodularity is equivalent to the local diminishing-returns condition,
    // and a local failure (S+i, S+j) is itself a violating pair.
    'sub: for mask in 0..=full_mask(p) {
        for i in 0..p {
            if mask & (1 << i) != 0 {
                continue;
            }
            for j in (i + 1)..p {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = mask | (1 << i);
                let b = mask | (1 << j);
                let lhs = u64::from(v(a)) + u64::from(v(b));
                let rhs = u64::from(v(a | b)) + u64::from(v(mask));
                if lhs < rhs {
                    out.push(AxiomViolation {
                        axiom: Axiom::Submodular,
                        first: a,
                        second: b,
                    });
                    break 'sub;
                }
            }
        }
    }
    out
}

/// A finite homogeneous M-convex set of lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polymatroid {
    p: usize,
    points: BTreeSet<LatticePoint>,
    rank: u64,
    cage: LatticePoint,
}

impl Polymatroid {
    /// Validates a point set. The cage is the componentwise maximum.
    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticePoint>,
    {
        let points: BTreeSet<LatticePoint> = points.into_iter().collect();
        let p = common_dim(&points)?;
        subset::check_dim(p)?;
        if let Err(witness) = is_m_convex(&points)? {
            return Err(Error::NotMConvex(witness));
        }
        let cage = componentwise_max(&points, p);
        let rank = points.iter().next().map(LatticePoint::degree).unwrap_or(0);
        Ok(Polymatroid {
            p,
            points,
            rank,
            cage,
        })
    }

    pub fn from_rank(rk: &RankFunction) -> Result<Self> {
        points_from_rank(rk)
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn cage(&self) -> &LatticePoint {
        &self.cage
    }

    /// Base points in standard lexicographic order.
    pub fn points(&self) -> &BTreeSet<LatticePoint> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, n: &LatticePoint) -> bool {
        self.points.contains(n)
    }

    pub fn rank_function(&self) -> RankFunction {
        rank_from_points(self)
    }
}

fn componentwise_max(points: &BTreeSet<LatticePoint>, p: usize) -> LatticePoint {
    let mut max = vec![0u32; p];
    for point in points {
        for (m, &c) in max.iter_mut().zip(point.coords()) {
            *m = (*m).max(c);
        }
    }
    LatticePoint::new(max)
}

/// All integer points `n >= 0` with `Σ_{i∈I} n_i <= rk(I)` for every `I` and
/// `|n| = rk([p])`.
pub fn points_from_rank(rk: &RankFunction) -> Result<Polymatroid> {
    let p = rk.dim();
    let bounds: Vec<u32> = (0..p).map(|i| rk.rank_of(1 << i)).collect();
    let target = u64::from(rk.rank());
    let mut points = BTreeSet::new();
    let mut current = vec![0u32; p];
    enumerate_box(&bounds, target, 0, &mut current, &mut |n| {
        let point = LatticePoint::new(n.to_vec());
        if satisfies_rank(&point, rk) {
            points.insert(point);
        }
    });
    if points.is_empty() {
        return Err(Error::InternalInvariantFailure(
            "rank function produced no base points".into(),
        ));
    }
    Ok(Polymatroid {
        p,
        points,
        rank: target,
        cage: rk.cage().clone(),
    })
}

/// Visits every vector in the box `0 <= n_i <= bounds[i]` whose coordinates
/// sum to exactly `target`.
pub(crate) fn enumerate_box(
    bounds: &[u32],
    target: u64,
    pos: usize,
    current: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if pos == bounds.len() {
        if target == 0 {
            visit(current);
        }
        return;
    }
    let rest: u64 = bounds[pos + 1..].iter().map(|&b| u64::from(b)).sum();
    let hi = u64::from(bounds[pos]).min(target);
    let lo = target.saturating_sub(rest);
    for c in lo..=hi {
        current[pos] = c as u32;
        enumerate_box(bounds, target - c, pos + 1, current, visit);
    }
    current[pos] = 0;
}

pub(crate) fn satisfies_rank(n: &LatticePoint, rk: &RankFunction) -> bool {
    (1..=full_mask(rk.dim())).all(|mask| n.mask_sum(mask) <= u64::from(rk.rank_of(mask)))
}

/// `rk(I) = max_{n ∈ P} Σ_{i∈I} n_i`.
pub fn rank_from_points(poly: &Polymatroid) -> RankFunction {
    let p = poly.dim();
    let values = (0..=full_mask(p))
        .map(|mask| poly.points().iter().map(|n| n.mask_sum(mask)).max().unwrap_or(0) as u32)
        .collect();
    let rk = RankFunction {
        p,
        values,
        cage: poly.cage().clone(),
    };
    debug_assert!(axiom_violations(p, &rk.values, &rk.cage).is_empty());
    rk
}

/// Homogeneity plus the exchange property: for `u, v` and `i` with
/// `u_i > v_i` there is `j` with `u_j < v_j` and `u - e_i + e_j` in the set.
pub fn is_m_convex(points: &BTreeSet<LatticePoint>) -> Result<ExchangeCheck> {
    let p = common_dim(points)?;
    let degree = points.iter().next().map(LatticePoint::degree).unwrap_or(0);
    if let Some(v) = points.iter().find(|v| v.degree() != degree) {
        return Ok(Err(ExchangeWitness::Inhomogeneous {
            u: points
                .iter()
                .next()
                .cloned()
                .unwrap_or_else(|| LatticePoint::zero(p)),
            v: v.clone(),
        }));
    }
    for u in points.iter().rev() {
        for v in points {
            for i in 0..p {
                if u.coords()[i] <= v.coords()[i] {
                    continue;
                }
                let found = (0..p).any(|j| {
                    u.coords()[j] < v.coords()[j] && u.exchange(i, j).is_some_and(|w| points.contains(&w))
                });
                if !found {
                    return Ok(Err(ExchangeWitness::Exchange {
                        u: u.clone(),
                        v: v.clone(),
                        i,
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// The explicit two-condition characterization of generalized polymatroids.
///
/// 1. for `u_i > v_i`: either some `j` with `u_j < v_j` has both
///    `u - e_i + e_j` and `v + e_i - e_j` in the set, or `|u| > |v|` and both
///    `u - e_i` and `v + e_i` are in the set;
/// 2. for `|u| > |v|`: some `j` with `u_j > v_j` has both `u - e_j` and
///    `v + e_j` in the set.
pub fn is_generalized_polymatroid(points: &BTreeSet<LatticePoint>) -> Result<ExchangeCheck> {
    let p = common_dim(points)?;
    let has = |w: Option<LatticePoint>| w.is_some_and(|w| points.contains(&w));
    for u in points.iter().rev() {
        let du = u.degree();
        for v in points {
            let dv = v.degree();
            if du > dv {
                let ok = (0..p).any(|j| {
                    u.coords()[j] > v.coords()[j] && has(u.minus_unit(j)) && has(Some(v.plus_unit(j)))
                });
                if !ok {
                    return Ok(Err(ExchangeWitness::Degree {
                        u: u.clone(),
                        v: v.clone(),
                    }));
                }
            }
            for i in 0..p {
                if u.coords()[i] <= v.coords()[i] {
                    continue;
                }
                let swap = (0..p)
                    .any(|j| u.coords()[j] < v.coords()[j] && has(u.exchange(i, j)) && has(v.exchange(j, i)));
                let drop = du > dv && has(u.minus_unit(i)) && has(Some(v.plus_unit(i)));
                if !swap && !drop {
                    return Ok(Err(ExchangeWitness::Exchange {
                        u: u.clone(),
                        v: v.clone(),
                        i,
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Pads each point with `N - |n|`, `N` the largest coordinate sum.
pub fn homogenize(points: &BTreeSet<LatticePoint>) -> Result<BTreeSet<LatticePoint>> {
    common_dim(points)?;
    let top = points.iter().map(LatticePoint::degree).max().unwrap_or(0);
    Ok(points
        .iter()
        .map(|n| {
            let mut coords = n.coords().to_vec();
            coords.push((top - n.degree()) as u32);
            LatticePoint::new(coords)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[&[u32]]) -> BTreeSet<LatticePoint> {
        points.iter().map(|c| LatticePoint::new(c.to_vec())).collect()
    }

    fn running_rank() -> Vec<u32> {
        // ∅, {1}, {2}, {1,2}
        vec![0, 2, 3, 3]
    }

    #[test]
    fn validates_running_example_rank() {
        let rk = validate_rank_function(2, running_rank(), [2, 3].into()).unwrap();
        assert_eq!(rk.rank(), 3);
    }

    #[test]
    fn rank_zero_is_valid() {
        let rk = validate_rank_function(1, vec![0, 0], [0].into()).unwrap();
        let poly = points_from_rank(&rk).unwrap();
        assert_eq!(poly.points(), &set(&[&[0]]));
    }

    #[test]
    fn superadditive_rank_fails_submodularity() {
        let err = validate_rank_function(2, vec![0, 2, 2, 5], [2, 2].into()).unwrap_err();
        let Error::AxiomViolation(v) = err else {
            panic!("expected axiom violation")
        };
        assert_eq!(
            v,
            vec![AxiomViolation {
                axiom: Axiom::Submodular,
                first: 0b01,
                second: 0b10
            }]
        );
    }

    #[test]
    fn reports_every_failing_axiom() {
        // rk(∅)=1, rk({1})=3 > cage 2, rk({2})=0 < rk(∅), 3+0 < 5+1
        let err = validate_rank_function(2, vec![1, 3, 0, 5], [2, 2].into()).unwrap_err();
        let Error::AxiomViolation(v) = err else {
            panic!("expected axiom violation")
        };
        let axioms: Vec<Axiom> = v.iter().map(|x| x.axiom).collect();
        assert_eq!(
            axioms,
            vec![
                Axiom::Normalized,
                Axiom::SingletonBound,
                Axiom::Monotone,
                Axiom::Submodular
            ]
        );
    }

    #[test]
    fn cage_length_is_checked() {
        assert!(matches!(
            validate_rank_function(2, running_rank(), [2].into()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            validate_rank_function(2, vec![0, 1, 1], [2, 2].into()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn points_from_running_rank() {
        let rk = validate_rank_function(2, running_rank(), [2, 3].into()).unwrap();
        let poly = points_from_rank(&rk).unwrap();
        assert_eq!(poly.points(), &set(&[&[0, 3], &[1, 2], &[2, 1]]));
        assert_eq!(poly.rank(), 3);
    }

    #[test]
    fn points_from_uniform_matroid() {
        let rk = validate_rank_function(2, vec![0, 1, 1, 1], [1, 1].into()).unwrap();
        let poly = points_from_rank(&rk).unwrap();
        assert_eq!(poly.points(), &set(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn rank_from_running_points() {
        let poly = Polymatroid::from_points(set(&[&[0, 3], &[1, 2], &[2, 1]])).unwrap();
        let rk = rank_from_points(&poly);
        assert_eq!(rk.values(), &[0, 2, 3, 3]);
        let single = Polymatroid::from_points(set(&[&[0]])).unwrap();
        assert_eq!(rank_from_points(&single).values(), &[0, 0]);
        let unit = Polymatroid::from_points(set(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(rank_from_points(&unit).values(), &[0, 1, 1, 1]);
    }

    #[test]
    fn m_convexity_examples() {
        assert_eq!(is_m_convex(&set(&[&[0, 3], &[1, 2], &[2, 1]])).unwrap(), Ok(()));
        assert_eq!(
            is_m_convex(&set(&[&[2, 0], &[0, 2]])).unwrap(),
            Err(ExchangeWitness::Exchange {
                u: [2, 0].into(),
                v: [0, 2].into(),
                i: 0
            })
        );
        assert_eq!(is_m_convex(&set(&[&[5]])).unwrap(), Ok(()));
        assert!(matches!(
            is_m_convex(&set(&[&[1, 0], &[0]])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            is_m_convex(&set(&[&[1, 0], &[0, 0]])).unwrap(),
            Err(ExchangeWitness::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn generalized_polymatroid_examples() {
        let running = set(&[&[0, 3], &[1, 2], &[2, 1]]);
        assert_eq!(is_generalized_polymatroid(&running).unwrap(), Ok(()));
        let square = set(&[&[1, 1], &[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(is_generalized_polymatroid(&square).unwrap(), Ok(()));
        assert_eq!(
            is_generalized_polymatroid(&set(&[&[2, 0], &[0, 0]])).unwrap(),
            Err(ExchangeWitness::Degree {
                u: [2, 0].into(),
                v: [0, 0].into()
            })
        );
    }

    #[test]
    fn homogenize_examples() {
        let square = set(&[&[1, 1], &[0, 1], &[1, 0], &[0, 0]]);
        assert_eq!(
            homogenize(&square).unwrap(),
            set(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1], &[0, 0, 2]])
        );
        assert_eq!(homogenize(&set(&[&[0, 3]])).unwrap(), set(&[&[0, 3, 0]]));
        assert_eq!(homogenize(&set(&[&[0]])).unwrap(), set(&[&[0, 0]]));
    }

    #[test]
    fn empty_point_set_is_rejected() {
        assert_eq!(Polymatroid::from_points(Vec::new()), Err(Error::EmptyInput));
    }
}
