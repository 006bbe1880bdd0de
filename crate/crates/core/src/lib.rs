//! Numerical certification toolkit for the bound `λ₃(G) ≤ n/3 − 1` on graph
//! adjacency eigenvalues and its weighted form `μ_{n−1} + μ_n ≥ −2n/3` for
//! symmetric matrices with off-diagonal entries in `[0, 1]` and nonnegative diagonal.
//!
//! - [`symspec`]: symmetric eigensolver, rank-2 frames and projections.
//! - [`graphs`]: graph model, named constructions, graph6 and edge-list I/O.
//! - [`certify`]: each step of the proof as a checkable inequality with signed slack.
//! - [`explore`]: exhaustive sweeps, random stress tests, and extremal searches.

pub mod certify;
pub mod error;
pub mod explore;
pub mod graphs;
pub mod rng;
pub mod symspec;

pub use error::{Error, Result};

/// Slack below `-SLACK_TOL` counts as a violation.
pub const SLACK_TOL: f64 = 1e-9;

/// `|slack| <= TIGHT_TOL` marks a bound as attained.
pub const TIGHT_TOL: f64 = 1e-7;
