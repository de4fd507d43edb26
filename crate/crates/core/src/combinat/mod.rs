//! Matching, flow and graph-search engines.
//!
//! All engines are deterministic for a fixed input: ties are broken by the
//! smallest vertex or edge index.

mod flow;
mod graph;
mod matching;

pub use flow::{min_cost_max_flow, Arc, Flow, FlowNetwork};
pub use graph::{reachable, scc, Direction};
pub use matching::{extremal_weight_max_matching, max_matching, Sense};
