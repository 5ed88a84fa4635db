use super::cave_polynomial;
use crate::error::Result;
use crate::geometry::independence_points;
use crate::poly::{binomial_map, BinomialBasisPoly};
use crate::polymatroid::Polymatroid;

/// The binomial map applied to the cave polynomial.
pub fn snapper_from_cave(poly: &Polymatroid) -> Result<BinomialBasisPoly> {
    Ok(binomial_map(&cave_polynomial(poly)?))
}

/// `Σ_{n ∈ I(𝒫)} ∏_i C(t_i + n_i - 1, n_i)`, kept in the shifted basis.
pub fn snapper_from_independence(poly: &Polymatroid) -> Result<BinomialBasisPoly> {
    let points = independence_points(poly).into_points();
    BinomialBasisPoly::from_terms(poly.dim(), -1, points.into_iter().map(|n| (n, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::LatticePoint;
    use num_bigint::BigInt;

    fn poly(points: &[&[u32]]) -> Polymatroid {
        Polymatroid::from_points(points.iter().map(|c| LatticePoint::new(c.to_vec()))).unwrap()
    }

    #[test]
    fn running_example_routes_agree() {
        let p = poly(&[&[0, 3], &[1, 2], &[2, 1]]);
        let cave_route = snapper_from_cave(&p).unwrap();
        assert_eq!(
            cave_route.to_string(),
            "C(t1+2,2)*C(t2+1,1) + C(t1+1,1)*C(t2+2,2) + C(t2+3,3) - C(t1+1,1)*C(t2+1,1) - C(t2+2,2)"
        );
        let el = snapper_from_independence(&p).unwrap();
        assert_eq!(cave_route.expand(), el.expand());
        assert_eq!(cave_route.eval(&[0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(el.eval(&[0, 0]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn rank_zero() {
        let p = poly(&[&[0]]);
        assert_eq!(snapper_from_cave(&p).unwrap().to_string(), "1");
        assert_eq!(
            snapper_from_independence(&p).unwrap().eval(&[7]).unwrap(),
            BigInt::from(1)
        );
    }
}
