//! Long induced paths in sparse random graphs.
//!
//! The crate builds a long induced path in `G(n, d/n)` in two stages: a
//! greedy induced linear forest with components of a fixed order inside one
//! half of the vertices ([`forest`]), then a conflict-aware depth-first
//! search ([`conflict_dfs`]) over an auxiliary digraph whose edges are
//! single connector vertices from the other half ([`pipeline`]). The
//! [`moments`] module evaluates the probability and counting bounds that
//! govern the method, and [`oracles`] provides exhaustive ground truth for
//! small instances.

pub mod conflict_dfs;
pub mod forest;
pub mod graph;
pub mod harness;
pub mod moments;
pub mod oracles;
pub mod pipeline;
pub mod rng;

pub use graph::{Graph, GraphError};
