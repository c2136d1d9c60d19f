//! Graph representations, canonical keys and exhaustive enumeration.

mod canon;
mod enumerate;
#[allow(clippy::module_inception)]
mod graph;
pub mod graph6;
pub mod named;

pub use canon::{
    canonical_form, canonical_form_colored, canonical_form_ordered, canonical_labeling,
    is_isomorphic, CanonicalKey,
};
pub use enumerate::{enumerate_exact, enumerate_graphs, orderings, GraphKind};
pub(crate) use enumerate::next_permutation;
pub(crate) use graph::pair_index;
pub use graph::{ColoredGraph, Graph, OrderedGraph};
