//! Exact reference solvers. Exponential in general and meant for small
//! instances: they are the ground truth the approximation schemes and the
//! bandwidth DP are tested against.

mod cover;
mod search;
mod tree;

use thiserror::Error;

use crate::graph::{GraphError, Vertex};
use crate::prefixcover::CoverError;

pub use cover::{exact_double_prefix_cover, exact_prefix_cover};
pub use search::{
    exact_broadcast_time, exact_broadcast_time_multi, exact_broadcast_time_multi_with,
    exact_broadcast_time_with,
};
pub use tree::tree_broadcast_time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the oracle cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("no sources given")]
    NoSources,
    #[error("source {0} is not a vertex of the graph")]
    SourceOutOfRange(Vertex),
    #[error("vertex {0} is listed as a source twice")]
    DuplicateSource(Vertex),
    #[error("graph is not a tree")]
    NotATree,
    #[error("covering numbers up to {bound} exceed the exact solver limit {limit}")]
    CoverTooLarge { bound: u64, limit: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Vertex caps for the state-space search (the memo is keyed by subsets).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub single_source_cap: usize,
    pub multi_source_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            single_source_cap: 20,
            multi_source_cap: 16,
        }
    }
}
