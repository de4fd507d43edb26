//! Sparsity patterns, system bundles and their graph views.

mod graph;
mod pattern;
mod system;

pub use graph::{
    pattern_bigraph, state_digraph, system_digraph, BiEdge, Bigraph, Digraph, Matching, Vertex, VertexClass,
};
pub use pattern::Pattern;
pub use system::SystemPattern;

/// `[top; bottom]`, see [`Pattern::stack`].
pub fn stack(top: &Pattern, bottom: &Pattern) -> crate::Result<Pattern> {
    top.stack(bottom)
}
