//! Non-semisimple quantum invariants of 3-manifolds from U_q^H(sl2) at
//! q = e^{iπ/r}, together with the classical Alexander–Conway machinery
//! used to cross-validate the r = 2 specialization.
//!
//! Layer map:
//! - [`scalar`]: root-of-unity arithmetic and q-combinatorics.
//! - [`linalg`]: dense complex maps (tensor, compose, partial closure).
//! - [`algebra`]: weight modules of U_q^H(sl2), braiding, twist, duality,
//!   modified dimension, grading.
//! - [`diagram`] / [`engine`]: Morse-sliced colored ribbon graphs and the
//!   functor evaluating them.
//! - [`builders`]: link/tangle constructions (braid closures, meridian
//!   spines, slide pairs, trivalent graphs).
//! - [`surgery`]: modified Kirby colors, blow-up anomalies, the surgery
//!   invariants N and N0.
//! - [`alexander`]: Wirtinger/Fox multivariable Alexander polynomials and a
//!   skein-recursion Conway oracle.
//! - [`bridge`]: r = 2 closed forms (Alexander relation, surgery formula,
//!   torsion, lens spaces, Clebsch–Gordan vertices).
//! - [`catalog`] / [`selftest`]: named test objects and the property suites
//!   driven by the CLI.

pub mod alexander;
pub mod algebra;
pub mod bridge;
pub mod builders;
pub mod catalog;
pub mod cg;
pub mod diagram;
pub mod engine;
pub mod format;
pub mod linalg;
pub mod scalar;
pub mod selftest;
pub mod surgery;

pub use scalar::{RootData, C64};
