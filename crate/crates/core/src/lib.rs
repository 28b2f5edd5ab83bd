//! Evaluate propositional sentences under classical, three-valued,
//! quantum-logic, projector-copy and phase-space semantics, and replay the
//! built-in Stern-Gerlach detector scenario.

pub mod error;
pub mod formula;
pub mod hilbert;
pub mod scenario;
pub mod semantics;
pub mod trivalent;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use formula::{parse, render, Formula, TruthValue2, Valuation, Valuation2};
pub use hilbert::{Lattice, Projector, StateVector, Tolerance};
pub use trivalent::{TruthValue3, Valuation3};
