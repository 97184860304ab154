//! Combinatorics of binomial edge ideals on small graphs.
//!
//! The crate decides the graph properties that control Cohen-Macaulayness
//! of a binomial edge ideal — cut sets, unmixedness, accessibility, good
//! cut vertices, strong unmixedness — and runs an exhaustive, pruned
//! search over blocks with whiskers looking for an accessible graph
//! without a good cut vertex.

pub mod blockgen;
pub mod canon;
pub mod codec;
pub mod cutsets;
pub mod error;
pub mod graph;
pub mod properties;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
