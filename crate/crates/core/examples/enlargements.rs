//! Enlarging a maximal graph: one type 2 step at the elliptic tail, then the
//! maximal enlargement keeping the action only on vertex 0.

use cyclic_covers::stable_graphs::{
    enlarge_max, enlarge_type2, stratum_dimension, AutoGraph, Edge, Vertex,
};
use cyclic_covers::Result;

fn main() -> Result<()> {
    let g = AutoGraph::new(
        2,
        vec![
            Vertex::i1(0, 2, vec![4]),
            Vertex::i0(1, 0),
            Vertex::i1(2, 1, vec![3]),
        ],
        vec![
            Edge::link(0, 1, [1, 0]),
            Edge::link(0, 1, [1, 0]),
            Edge::link(1, 2, [0, 1]),
        ],
    )?;
    println!("{g} dim {}", stratum_dimension(&g)?);
    let step = enlarge_type2(&g, 2)?;
    println!("type 2: {step} dim {}", stratum_dimension(&step)?);
    let max = enlarge_max(&g, 0)?;
    println!("max:    {max} dim {}", stratum_dimension(&max)?);
    Ok(())
}
