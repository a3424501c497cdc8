//! Halin graph workbench.
//!
//! A Halin graph is built from a plane tree with no degree-2 vertices by
//! joining the leaves into a cycle in the order they appear around the
//! embedding. This crate constructs, validates, transforms and exhaustively
//! enumerates such graphs, and computes exact extremal edge counts for
//! Halin graphs avoiding a fixed cycle length.
//!
//! The embedding is carried by the tree alone: each vertex stores its
//! neighbours in counter-clockwise rotation order, and the leaf cycle is
//! always *derived* from that rotation system by a face traversal, never
//! stored independently. See [`graph::PlaneTree`] for the conventions.

pub mod cache;
pub mod canon;
pub mod codec;
pub mod constructions;
pub mod cycles;
pub mod enumeration;
pub mod graph;
pub mod reductions;

pub use graph::{HalinGraph, PlaneTree, Vertex};

/// Version tag for persisted artifacts (cache records). Bump when the
/// enumeration order, canonical form or record layout changes.
pub const CODE_VERSION: u32 = 1;

/// Tool version reported in structured output and cache records.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
