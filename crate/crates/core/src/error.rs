use std::fmt;

use thiserror::Error;

use crate::point::LatticePoint;

/// One of the four rank-function axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `rk(∅) = 0`
    Normalized,
    /// `rk({i}) <= m_i`
    SingletonBound,
    Monotone,
    Submodular,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Normalized => "normalized",
            Axiom::SingletonBound => "singleton-bound",
            Axiom::Monotone => "monotone",
            Axiom::Submodular => "submodular",
        };
        f.write_str(s)
    }
}

/// A violated axiom together with the subsets (as bit masks) that witness it.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub first: u32,
    pub second: u32,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on I1={}, I2={}",
            self.axiom,
            crate::subset::format_mask(self.first),
            crate::subset::format_mask(self.second)
        )
    }
}

/// Why a point set fails the exchange property.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExchangeWitness {
    /// Two points with different coordinate sums.
    Inhomogeneous { u: LatticePoint, v: LatticePoint },
    /// `u_i > v_i` but no `j` with `u_j < v_j` has `u - e_i + e_j` in the set.
    Exchange {
        u: LatticePoint,
        v: LatticePoint,
        i: usize,
    },
    /// `|u| > |v|` but no `j` with `u_j > v_j` has both `u - e_j` and `v + e_j` in the set.
    Degree { u: LatticePoint, v: LatticePoint },
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExchangeWitness::Inhomogeneous { u, v } => {
                write!(f, "{u} and {v} have different coordinate sums")
            }
            ExchangeWitness::Exchange { u, v, i } => {
                write!(f, "exchange fails for u={u}, v={v}, i={}", i + 1)
            }
            ExchangeWitness::Degree { u, v } => {
                write!(f, "degree exchange fails for u={u}, v={v}")
            }
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank function violates axioms: {}", list(.0))]
    AxiomViolation(Vec<AxiomViolation>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::subset::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("not M-convex: {0}")]
    NotMConvex(ExchangeWitness),
    #[error("{0} is not in the independence region")]
    NotInIndependence(LatticePoint),
    #[error("{0} is not a base point")]
    NotABasePoint(LatticePoint),
    #[error("{0} is not componentwise below {1}")]
    NotComparable(LatticePoint, LatticePoint),
    #[error("negative exponent in {0:?}")]
    NegativeExponent(Vec<i64>),
    #[error("integer overflow")]
    Overflow,
    #[error("invalid permutation: {0}")]
    InvalidOrder(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{param}` for family `{family}`")]
    MissingParameter { family: String, param: &'static str },
    #[error("generation exhausted after {0} attempts")]
    GenerationExhausted(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance at {location}: {message}")]
    InvalidDocument { location: String, message: String },
    #[error("internal invariant failure: {0}")]
    InternalInvariantFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
