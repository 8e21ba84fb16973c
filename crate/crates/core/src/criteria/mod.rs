//! Analytic criteria: the ∨-product construction and the tests that decide
//! the window property without a census.

mod conjecture;
mod construction;
mod setpoly;
mod sufficient;
mod trace;
mod vee;

pub use conjecture::{conjecture_search, ConjectureEntry, ConjectureReport};
pub use construction::{classify_construction, ConstructionRecord, ConstructionType, TABLE_ROWS};
pub use setpoly::{setpoly_test, window_positions, PositionSet, MAX_EXHAUSTIVE_POSITIONS};
pub use sufficient::sufficient_conditions;
pub use trace::{det_test, trace_independence_test};
pub use vee::{vee, vee_by_kronecker, vee_by_sequences};

use crate::error::{Error, Result};
use crate::gf2poly::{classify, BinaryPolynomial};

/// Exponent shared by every irreducible factor of a square-free `f`.
pub fn uniform_exponent(f: &BinaryPolynomial) -> Result<u64> {
    classify(f)?.uniform_exponent().ok_or(Error::NonUniformExponent)
}
