//! Exact-arithmetic toolkit for quarter-plane lattice walks with three-step
//! step sets.
//!
//! The crate classifies all 56 three-step models, counts their walks with an
//! exact dynamic-programming oracle, evaluates the known closed-form
//! generating functions over truncated series with rational coefficients,
//! constructs the group of the walk and decides its finiteness up to a bound,
//! and produces holonomy evidence by guessing P-recurrences for the counting
//! sequences.
//!
//! Everything is exact: integers are arbitrary precision, series coefficients
//! are rationals, and every closed form is checked coefficientwise against
//! the oracle.

pub mod bivar;
pub mod closedforms;
pub mod enumerate;
pub mod group;
pub mod guess;
pub mod poly;
pub mod rat;
pub mod series;
pub mod stepset;
pub mod verify;

pub use stepset::{ClassId, Direction, StepSet, SymmetryReport};
