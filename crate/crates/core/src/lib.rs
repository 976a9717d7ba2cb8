//! Exact entropy-quantity algebra and topological entanglement entropy
//! evaluation on combinatorial disk partitions.
//!
//! The crate is organised around five pieces:
//!
//! - [`algebra`]: information quantities as sparse rational vectors over the
//!   nonempty-subsystem basis, with k-balance analysis and classification.
//! - [`dsl`]: a small text language for quantities, generators for the
//!   standard families (multi-information, cyclic inequalities, named
//!   probes), tripartite `I^pC^q` expansion and catalog loading.
//! - [`arrangement`]: trivalent planar maps modelling a disk cut into regions,
//!   plus the outer region `O` that closes the disk into a sphere.
//! - [`evaluator`]: punctured-sphere (TQFT) and area-law substitution of a
//!   quantity on an arrangement.
//! - [`anyon`]: concrete anyon models, the closed-form punctured-sphere
//!   entropy and a brute-force fusion-tree oracle for it.
//!
//! All coefficient arithmetic is exact ([`Rational`]); floating point only
//! appears when a symbolic result is evaluated against an anyon model.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod anyon;
pub mod arrangement;
pub mod dsl;
pub mod evaluator;
pub mod party;
pub mod rational;

pub use algebra::{AlgebraError, BalanceProfile, BalanceSlice, Classification, InfoQuantity};
pub use anyon::{AnyonError, AnyonModel, DerivedScalars};
pub use arrangement::{Arrangement, ArrangementError, Region};
pub use evaluator::{AreaLawExpr, EvalError, EvalMode, EvalOptions, SymEntropy, Tally};
pub use party::PartySet;
pub use rational::Rational;
