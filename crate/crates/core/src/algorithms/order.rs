use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::point::LatticePoint;

/// A lexicographic order on `ℕ^p`: coordinates are compared in `priority`
/// order and the first difference decides (smaller value, smaller point).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexOrder {
    priority: Vec<usize>,
}

impl LexOrder {
    /// The standard order, `t_1` compared first.
    pub fn identity(p: usize) -> Self {
        LexOrder {
            priority: (0..p).collect(),
        }
    }

    /// `priority` must be a permutation of `0..p`.
    pub fn new(priority: Vec<usize>) -> Result<Self> {
        let p = priority.len();
        let mut seen = vec![false; p];
        for &i in &priority {
            if i >= p || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidOrder(format!("{priority:?} is not a permutation")));
            }
        }
        Ok(LexOrder { priority })
    }

    /// From a 1-based permutation such as `[2, 1]`.
    pub fn from_one_based(priority: &[usize]) -> Result<Self> {
        let zero_based = priority
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidOrder(format!("{priority:?} is not a permutation")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based).map_err(|_| Error::InvalidOrder(format!("{priority:?} is not a permutation")))
    }

    pub fn dim(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn compare(&self, a: &LatticePoint, b: &LatticePoint) -> Ordering {
        self.priority
            .iter()
            .map(|&i| a.coords()[i].cmp(&b.coords()[i]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// All `p!` coordinate orders.
    pub fn all(p: usize) -> Vec<LexOrder> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::with_capacity(p);
        let mut used = vec![false; p];
        permutations(p, &mut current, &mut used, &mut out);
        out
    }
}

fn permutations(p: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<LexOrder>) {
    if current.len() == p {
        out.push(LexOrder {
            priority: current.clone(),
        });
        return;
    }
    for i in 0..p {
        if !used[i] {
            used[i] = true;
            current.push(i);
            permutations(p, current, used, out);
            current.pop();
            used[i] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_orders_running_example() {
        let order = LexOrder::identity(2);
        let a = LatticePoint::from([0, 3]);
        let b = LatticePoint::from([1, 2]);
        assert_eq!(order.compare(&a, &b), Ordering::Less);
        let reversed = LexOrder::from_one_based(&[2, 1]).unwrap();
        assert_eq!(reversed.compare(&a, &b), Ordering::Greater);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(LexOrder::new(vec![0, 0]).is_err());
        assert!(LexOrder::new(vec![0, 2]).is_err());
        assert!(LexOrder::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn enumerates_all_orders() {
        assert_eq!(LexOrder::all(3).len(), 6);
        assert_eq!(LexOrder::all(1), vec![LexOrder::identity(1)]);
    }
}
