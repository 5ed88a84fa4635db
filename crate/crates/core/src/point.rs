use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `ℕ^p`, used for polymatroid elements, exponent vectors and
/// poset elements alike.
///
/// The derived ordering is the standard lexicographic order (first coordinate
/// has the highest priority), which is the default order for stalactites.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u32>);

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(p: usize) -> Self {
        LatticePoint(vec![0; p])
    }

    /// The standard basis vector `e_i` (0-based).
    pub fn unit(p: usize, i: usize) -> Self {
        let mut coords = vec![0; p];
        coords[i] = 1;
        LatticePoint(coords)
    }

    /// Converts a signed vector, returning `None` if any entry is negative.
    pub fn from_signed(coords: &[i64]) -> Option<Self> {
        coords
            .iter()
            .map(|&c| u32::try_from(c).ok())
            .collect::<Option<Vec<_>>>()
            .map(LatticePoint)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    /// Coordinate sum `|n|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &LatticePoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|&c| i64::from(c)).collect()
    }

    /// `self - e_i`, or `None` if coordinate `i` is zero.
    pub fn minus_unit(&self, i: usize) -> Option<LatticePoint> {
        let mut coords = self.0.clone();
        coords[i] = coords[i].checked_sub(1)?;
        Some(LatticePoint(coords))
    }

    pub fn plus_unit(&self, i: usize) -> LatticePoint {
        let mut coords = self.0.clone();
        coords[i] += 1;
        LatticePoint(coords)
    }

    /// `self - e_i + e_j`, or `None` if coordinate `i` is zero.
    pub fn exchange(&self, i: usize, j: usize) -> Option<LatticePoint> {
        let mut coords = self.0.clone();
        coords[i] = coords[i].checked_sub(1)?;
        coords[j] += 1;
        Some(LatticePoint(coords))
    }

    /// `self - e_J` where `J` is given as a bit mask over coordinates.
    pub fn minus_mask(&self, mask: u32) -> Option<LatticePoint> {
        let mut coords = self.0.clone();
        for (i, c) in coords.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *c = c.checked_sub(1)?;
            }
        }
        Some(LatticePoint(coords))
    }

    /// Coordinate sum over the subset encoded by `mask`.
    pub fn mask_sum(&self, mask: u32) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| u64::from(c))
            .sum()
    }

    pub(crate) fn check_dim(&self, p: usize) -> Result<()> {
        if self.dim() == p {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: p,
                found: self.dim(),
            })
        }
    }
}

impl From<Vec<u32>> for LatticePoint {
    fn from(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }
}

impl<const N: usize> From<[u32; N]> for LatticePoint {
    fn from(coords: [u32; N]) -> Self {
        LatticePoint(coords.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Checks that all points share one dimension and returns it.
pub(crate) fn common_dim<'a, I>(points: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a LatticePoint>,
{
    let mut iter = points.into_iter();
    let first = iter.next().ok_or(Error::EmptyInput)?;
    let p = first.dim();
    for point in iter {
        point.check_dim(p)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_matches_running_example() {
        let a = LatticePoint::from([0, 3]);
        let b = LatticePoint::from([1, 2]);
        let c = LatticePoint::from([2, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn exchange_and_masks() {
        let u = LatticePoint::from([1, 2]);
        assert_eq!(u.exchange(0, 1), Some(LatticePoint::from([0, 3])));
        assert_eq!(u.exchange(0, 1).unwrap().exchange(0, 1), None);
        assert_eq!(u.minus_mask(0b11), Some(LatticePoint::from([0, 1])));
        assert_eq!(u.mask_sum(0b10), 2);
        assert_eq!(LatticePoint::from_signed(&[-1, 4]), None);
        assert_eq!(u.to_string(), "(1,2)");
    }
}
