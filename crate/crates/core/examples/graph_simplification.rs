//! Smoothing a pre-graph to its maximal type, step by step.

use cyclic_covers::stable_graphs::{canonical_graph, simplify_with_trace, Edge, PreGraph, Vertex};
use cyclic_covers::Result;

fn main() -> Result<()> {
    // a chain through two I0 elliptic curves; two I1 elliptic curves joined by
    // a node whose labels sum to 3
    let graphs = [
        PreGraph::new(
            2,
            vec![
                Vertex::i0(0, 1),
                Vertex::i0(1, 1),
                Vertex::i1(2, 1, vec![3]),
            ],
            vec![Edge::link(0, 1, [0, 0]), Edge::link(1, 2, [0, 1])],
        )?,
        PreGraph::new(
            3,
            vec![Vertex::i1(0, 1, vec![2, 0]), Vertex::i1(1, 1, vec![0, 2])],
            vec![Edge::link(0, 1, [1, 2])],
        )?,
    ];
    for g in &graphs {
        println!("{g}");
        let (out, trace) = simplify_with_trace(g);
        for step in &trace {
            println!("  {step:?}");
        }
        println!("  -> {}", canonical_graph(&out).graph);
    }
    Ok(())
}
