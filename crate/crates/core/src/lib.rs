//! Solvers for Maximum (Weight) Independent Set and d-Scattered Set on
//! graphs without long induced paths, with the balanced-separator and
//! tree-decomposition machinery behind them, exact oracles for desk-scale
//! validation, and reduction-style instance generators.
//!
//! Weighted arithmetic is generic over an unsigned integer scalar (the
//! [`Weight`] trait); the aliases below fix the default concrete types.

pub mod approx;
pub mod dp;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod nice;
pub mod oracle;
pub mod pattern;
pub mod separator;
pub mod solver;
pub mod treewidth;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{Graph, SubgraphMap, VertexSet};
pub use weight::{Weight, WeightMap};

/// Default weight scalar.
pub type W64 = u64;
/// Weight map over the default scalar.
pub type WeightMap64 = weight::WeightMap<W64>;
/// Solve report over the default scalar.
pub type SolveReport64 = solver::SolveReport<W64>;
/// Separator result over the default scalar.
pub type SeparatorResult64 = separator::SeparatorResult<W64>;
