//! Stable curves with an automorphism of prime order, encoded as decorated
//! dual graphs.
//!
//! Each vertex is a component, either fixed pointwise (`I0`) or carrying a
//! faithful action (`I1`). Each edge is a node with the rotation exponents of
//! its two branches, or a loop whose branches the automorphism exchanges.

pub mod canonical;
pub mod enumerate;
pub mod graph;
pub mod patterns;
pub mod rewrite;

pub use canonical::{canonical_graph, CanonicalForm};
pub use enumerate::{
    enumerate_graphs, enumerate_graphs_limited, stable_shapes, SearchLimits, Shape,
};
pub use graph::{
    graph_genus, stratum_dimension, vertex_data, AutoGraph, Colour, Edge, PreGraph, Vertex,
    VertexCoverData,
};
pub use patterns::{divisor_exception, exceptional_pattern, DivisorException, ExceptionalPattern};
pub use rewrite::{
    enlarge_max, enlarge_max_stepwise, enlarge_type1, enlarge_type2, simplify, simplify_with_trace,
    smooth_node, smoothable_nodes, SmoothingStep,
};
