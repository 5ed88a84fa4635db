use crate::error::Result;
use crate::geometry::independence_points;
use crate::point::LatticePoint;
use crate::poly::MultiPoly;
use crate::polymatroid::Polymatroid;

/// `t_i^{n_i} - t_i^{n_i - 1}` when `n_i >= 1`, and `1` when `n_i = 0`.
fn box_factor(p: usize, i: usize, exponent: u32) -> Result<MultiPoly> {
    if exponent == 0 {
        return Ok(MultiPoly::one(p));
    }
    let mut high = vec![0; p];
    high[i] = exponent;
    let mut low = vec![0; p];
    low[i] = exponent - 1;
    MultiPoly::from_terms(p, [(LatticePoint::new(high), 1), (LatticePoint::new(low), -1)])
}

/// One product `∏_i f_i(n)` per independence point, in lexicographic order
/// of `n`.
pub fn box_summands(poly: &Polymatroid) -> Result<Vec<(LatticePoint, MultiPoly)>> {
    let p = poly.dim();
    independence_points(poly)
        .into_points()
        .into_iter()
        .map(|n| {
            let mut product = MultiPoly::one(p);
            for (i, &e) in n.coords().iter().enumerate() {
                product = product.checked_mul(&box_factor(p, i, e)?)?;
            }
            Ok((n, product))
        })
        .collect()
}

pub fn box_polynomial(poly: &Polymatroid) -> Result<MultiPoly> {
    let mut total = MultiPoly::zero(poly.dim());
    for (_, summand) in box_summands(poly)? {
        total = total.checked_add(&summand)?;
    }
    Ok(total)
}
