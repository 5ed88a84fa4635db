//! Subsets of `[p]` encoded as bit masks (bit `i` is element `i + 1`).

use crate::error::{Error, Result};

/// Largest ground set size for which rank tables are materialized.
pub const MAX_DIM: usize = 16;

pub(crate) fn check_dim(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    if p > MAX_DIM {
        return Err(Error::DimensionTooLarge(p));
    }
    Ok(())
}

pub fn full_mask(p: usize) -> u32 {
    if p >= 32 {
        u32::MAX
    } else {
        (1u32 << p) - 1
    }
}

/// Iterates over the (0-based) elements of `mask` in increasing order.
pub fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Sorted 1-based index list, the external encoding of a subset.
pub fn to_indices(mask: u32) -> Vec<usize> {
    elements(mask).map(|i| i + 1).collect()
}

/// Inverse of [`to_indices`]; rejects indices outside `1..=p` and duplicates.
pub fn from_indices(indices: &[usize], p: usize) -> Result<u32> {
    let mut mask = 0u32;
    for &i in indices {
        if i == 0 || i > p {
            return Err(Error::InvalidDocument {
                location: format!("subset {indices:?}"),
                message: format!("index {i} outside 1..={p}"),
            });
        }
        let bit = 1 << (i - 1);
        if mask & bit != 0 {
            return Err(Error::InvalidDocument {
                location: format!("subset {indices:?}"),
                message: format!("duplicate index {i}"),
            });
        }
        mask |= bit;
    }
    Ok(mask)
}

/// `{1,3}` style rendering used in diagnostics.
pub fn format_mask(mask: u32) -> String {
    let inner = to_indices(mask)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{inner}}}")
}
