//! The four constructions of the cave polynomial, the Möbius function of the
//! independence poset, stalactites, and the Snapper polynomial.

mod boxpoly;
mod cave;
mod mobius;
mod order;
mod snapper;
mod stalactite;

pub use boxpoly::{box_polynomial, box_summands};
pub use cave::cave_polynomial;
pub use mobius::{
    interval_mobius_brute_force, mobius_interval, mobius_polynomial, mobius_table,
    mobius_table_from_intervals, MobiusTable,
};
pub use order::LexOrder;
pub use snapper::{snapper_from_cave, snapper_from_independence};
pub use stalactite::{
    neighbors, signed_counts, stalactite, stalactite_counts, stalactite_decomposition, stalactite_polynomial,
    Neighbor, Stalactite, StalactiteDecomposition,
};

/// `(-1)^(rank - degree)`
pub(crate) fn sign(rank: u64, degree: u64) -> i64 {
    if rank.abs_diff(degree).is_multiple_of(2) {
        1
    } else {
        -1
    }
}
