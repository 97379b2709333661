// SPDX-License-Identifier: MIT OR Apache-2.0

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{fmt_vec, Rat};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two vectors that must have equal length do not.
    Dimension { expected: usize, found: usize },
    /// An H-representation describes an unbounded set; `ray` is a recession direction.
    Unbounded { ray: Vec<Rat> },
    /// Integration weight has zero total mass.
    DegenerateDensity,
    /// A point class has no divisor with positive jump.
    AUndefined { point: String },
    /// Input data failed validation.
    Invalid(String),
    /// A test-configuration vector lies outside the valuation cone.
    NotAGValuation { point: String },
    /// A point outside the moment polytope was passed where one inside is required.
    Domain(String),
    /// Lattice enumeration would exceed the configured bound.
    EnumerationBound { estimate: u128, bound: u128 },
    /// A precondition of the lattice-sum expansion fails.
    Precondition(String),
    /// Missing input that the requested computation needs.
    Missing(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Unbounded { ray } => write!(f, "not a polytope: unbounded along {}", fmt_vec(ray)),
            Error::DegenerateDensity => f.write_str("degenerate density: total mass is zero"),
            Error::AUndefined { point } => write!(f, "A undefined at point class {point}"),
            Error::Invalid(m) => write!(f, "invalid data: {m}"),
            Error::NotAGValuation { point } => write!(f, "not a G-valuation at point class {point}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::EnumerationBound { estimate, bound } => {
                write!(f, "lattice enumeration of about {estimate} points exceeds bound {bound}")
            }
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Missing(m) => write!(f, "missing input: {m}"),
        }
    }
}

impl core::error::Error for Error {}
