//! Exact decomposition of fractional perfect matchings in general
//! (non-bipartite) graphs into convex combinations of perfect matchings.
//!
//! The crate is organized around a handful of exact-arithmetic layers:
//!
//! * [`rat`], [`graph`], [`frac`] — rationals, graphs, edge vectors, cuts.
//! * [`maxflow`], [`gomory_hu`], [`oddcut`] — exact s-t min cuts, Gomory-Hu
//!   cut trees, minimum odd cuts and tight-odd-cut search.
//! * [`laminar`] — maximal laminar families of tight odd cuts and the derived
//!   edge weights.
//! * [`blossom`] — exact minimum-weight perfect matching with integer duals.
//! * [`decompose`], [`gamma`] — the decomposition loop, coefficient search,
//!   verification and sampling.
//! * [`oracle`] — brute-force ground truth for small instances.
//! * [`strategy`] — runtime-selectable decomposition strategies.
//!
//! All values are exact rationals; no tolerances exist anywhere.

pub mod blossom;
pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod frac;
pub mod gamma;
pub mod gomory_hu;
pub mod graph;
pub mod laminar;
pub mod maxflow;
pub mod oddcut;
pub mod oracle;
pub mod rat;
pub mod strategy;

pub use error::Error;
pub use frac::{Decomposition, FracMatching, Violation};
pub use graph::{Graph, OddSet, PerfectMatching};
pub use rat::{parse_rat, Rat};
