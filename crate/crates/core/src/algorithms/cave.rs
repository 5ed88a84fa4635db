use crate::error::{Error, Result};
use crate::geometry::indicator;
use crate::poly::{LaurentPoly, MultiPoly};
use crate::polymatroid::Polymatroid;

/// Expands
/// `Σ_{|n| = rk} 1(n) ∏_{i=1}^{p-1} (1 - max_{j>i} 1(n - e_i + e_j) t_i^{-1}) t^n`.
///
/// Intermediate products carry `t_i^{-1}`; every such factor multiplies a
/// monomial with `n_i >= 1`, so a negative exponent in the result is an
/// internal error.
pub fn cave_polynomial(poly: &Polymatroid) -> Result<MultiPoly> {
    let p = poly.dim();
    let mut total = LaurentPoly::zero(p);
    // 1(n) vanishes off the base points, so only they contribute.
    for n in poly.points() {
        let signed = n.to_signed();
        debug_assert_eq!(indicator(poly, &signed)?, 1);
        let mut term = LaurentPoly::monomial(signed.clone(), 1);
        for i in 0..p.saturating_sub(1) {
            let mut has_neighbor = false;
            for j in (i + 1)..p {
                let mut shifted = signed.clone();
                shifted[i] -= 1;
                shifted[j] += 1;
                if indicator(poly, &shifted)? == 1 {
                    has_neighbor = true;
                    break;
                }
            }
            if has_neighbor {
                term = term.checked_mul(&LaurentPoly::one_minus_inverse(p, i))?;
            }
        }
        total.checked_add_assign(&term)?;
    }
    total.into_polynomial().map_err(|e| match e {
        Error::NegativeExponent(exps) => {
            Error::InternalInvariantFailure(format!("cave expansion left a negative exponent {exps:?}"))
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::LatticePoint;

    fn poly(points: &[&[u32]]) -> Polymatroid {
        Polymatroid::from_points(points.iter().map(|c| LatticePoint::new(c.to_vec()))).unwrap()
    }

    #[test]
    fn running_example() {
        let cave = cave_polynomial(&poly(&[&[0, 3], &[1, 2], &[2, 1]])).unwrap();
        let expected = MultiPoly::from_terms(
            2,
            [
                ([0, 3].into(), 1),
                ([1, 2].into(), 1),
                ([0, 2].into(), -1),
                ([2, 1].into(), 1),
                ([1, 1].into(), -1),
            ],
        )
        .unwrap();
        assert_eq!(cave, expected);
    }

    #[test]
    fn rank_zero_and_unit() {
        assert_eq!(cave_polynomial(&poly(&[&[0]])).unwrap(), MultiPoly::one(1));
        assert_eq!(
            cave_polynomial(&poly(&[&[1, 0], &[0, 1]])).unwrap().to_string(),
            "t1 + t2 - 1"
        );
    }
}
