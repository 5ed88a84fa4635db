//! Exact computation of the cave polynomial of a polymatroid by four
//! independent routes (cave formula, stalactites, box expansion, Möbius
//! recurrence), the Snapper polynomial, and a differential verification
//! engine that checks the routes against each other.
//!
//! Coordinates and subset elements are 0-based in the Rust API; the text and
//! JSON formats use the 1-based `t1..tp` convention.

pub mod algorithms;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod point;
pub mod poly;
pub mod polymatroid;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use generate::{random_polymatroid, GeneratorConfig, Strategy};
pub use point::LatticePoint;
pub use poly::{BinomialBasisPoly, MultiPoly, RationalPoly};
pub use polymatroid::{Polymatroid, RankFunction};
pub use verify::{verify_campaign, verify_instance, Check, VerificationReport};
