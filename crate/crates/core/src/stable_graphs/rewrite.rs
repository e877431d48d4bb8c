//! Equivariant smoothing of nodes, simplification to a maximal type, and
//! enlargements.
//!
//! At a node fixed by the automorphism with branches rotated by `zeta^a` and
//! `zeta^b`, the smoothing parameter `t` of `xy = t` is rotated by
//! `zeta^{a+b}`, so the node deforms equivariantly iff `a + b = 0 mod d`. If
//! instead the branches are exchanged, `t` is rotated by `zeta^{2m}` and the
//! node deforms iff `d = 2`.

use serde::{Deserialize, Serialize};

use super::graph::{AutoGraph, Colour, Edge, PreGraph};
use crate::error::{Error, Result};

fn is_smoothable(d: u32, e: &Edge) -> bool {
    match *e {
        Edge::Link { labels, .. } => (labels[0] + labels[1]) % d == 0,
        Edge::Loop {
            branch_swapped: true,
            ..
        } => d == 2,
        Edge::Loop { pair, .. } => (pair[0] + pair[1]) % d == 0,
    }
}

/// Indices of the edges that can be smoothed keeping the automorphism.
pub fn smoothable_nodes(g: &PreGraph) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| is_smoothable(g.d(), e))
        .map(|(idx, _)| idx)
        .collect()
}

/// One smoothing step: the edge removed and the vertex it was absorbed into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingStep {
    pub edge: Edge,
    pub vertex: u32,
}

/// Smooth edge `index`. A link merges its endpoints into the one with the
/// smaller id (genera add, free branch points are pooled, parallel links
/// become loops); a loop raises the genus of its vertex by one. Smoothing a
/// loop whose branches are exchanged by an involution creates two new fixed
/// points on the smoothed component.
pub fn smooth_node(g: &PreGraph, index: usize) -> Result<PreGraph> {
    smooth_step(g, index).map(|(out, _)| out)
}

fn smooth_step(g: &PreGraph, index: usize) -> Result<(PreGraph, SmoothingStep)> {
    let edge = g
        .edges()
        .get(index)
        .cloned()
        .ok_or(Error::NotSmoothable { index })?;
    if !is_smoothable(g.d(), &edge) {
        return Err(Error::NotSmoothable { index });
    }
    let mut out = g.clone();
    let (vertices, edges) = out.parts_mut();
    edges.remove(index);
    let target = match edge {
        Edge::Link { u, v, .. } => {
            let (keep, gone) = (u.min(v), u.max(v));
            let gone_pos = vertices.iter().position(|x| x.id == gone).unwrap();
            let absorbed = vertices.remove(gone_pos);
            let kept = vertices.iter_mut().find(|x| x.id == keep).unwrap();
            kept.genus += absorbed.genus;
            if absorbed.colour == Colour::I1 {
                debug_assert_eq!(kept.colour, Colour::I1);
                for (a, b) in kept.free_branching.iter_mut().zip(&absorbed.free_branching) {
                    *a += b;
                }
            }
            for e in edges.iter_mut() {
                if let Edge::Loop { vertex, .. } = e {
                    if *vertex == gone {
                        *vertex = keep;
                    }
                }
                if let Edge::Link { u, v, labels } = *e {
                    let (u, v) = (
                        if u == gone { keep } else { u },
                        if v == gone { keep } else { v },
                    );
                    *e = if u == v {
                        let mut pair = labels;
                        pair.sort_unstable();
                        Edge::loop_at(u, pair)
                    } else {
                        Edge::Link { u, v, labels }
                    };
                }
            }
            keep
        }
        Edge::Loop {
            vertex,
            branch_swapped,
            ..
        } => {
            let x = vertices.iter_mut().find(|x| x.id == vertex).unwrap();
            x.genus += 1;
            if branch_swapped {
                x.free_branching[0] += 2;
            }
            vertex
        }
    };
    let (vertices, edges) = (vertices.clone(), edges.clone());
    let out = PreGraph::new(g.d(), vertices, edges)?;
    Ok((
        out,
        SmoothingStep {
            edge,
            vertex: target,
        },
    ))
}

/// Smooth nodes until none is smoothable, always taking the first one.
pub fn simplify(g: &PreGraph) -> AutoGraph {
    simplify_with_trace(g).0
}

pub fn simplify_with_trace(g: &PreGraph) -> (AutoGraph, Vec<SmoothingStep>) {
    let mut current = g.clone();
    let mut trace = Vec::new();
    while let Some(&index) = smoothable_nodes(&current).first() {
        let (next, step) = smooth_step(&current, index).expect("smoothing preserves admissibility");
        current = next;
        trace.push(step);
    }
    let maximal = AutoGraph::try_from(current).expect("no smoothable node remains");
    (maximal, trace)
}

/// Make the automorphism trivial on the given components: their labels
/// become `0` and their free branch points disappear.
fn recolour(g: &PreGraph, ids: &[u32]) -> Result<PreGraph> {
    let mut out = g.clone();
    let (vertices, edges) = out.parts_mut();
    for v in vertices.iter_mut().filter(|v| ids.contains(&v.id)) {
        v.colour = Colour::I0;
        v.free_branching.clear();
    }
    if vertices.iter().all(|v| v.colour == Colour::I0) {
        return Err(Error::Enlargement(
            "the automorphism would become trivial".into(),
        ));
    }
    for e in edges.iter_mut() {
        match e {
            Edge::Link { u, v, labels } => {
                if ids.contains(u) {
                    labels[0] = 0;
                }
                if ids.contains(v) {
                    labels[1] = 0;
                }
            }
            Edge::Loop { vertex, pair, .. } => {
                if ids.contains(vertex) {
                    *pair = [0, 0];
                }
            }
        }
    }
    let (vertices, edges) = (vertices.clone(), edges.clone());
    PreGraph::new(g.d(), vertices, edges)
}

fn require_i1(g: &AutoGraph, j: u32) -> Result<()> {
    match g.vertex(j) {
        Some(v) if v.colour == Colour::I1 => Ok(()),
        Some(_) => Err(Error::Enlargement(format!("vertex {j} is not in I1"))),
        None => Err(Error::Enlargement(format!("no vertex {j}"))),
    }
}

fn meets_i0(g: &AutoGraph, j: u32) -> bool {
    g.neighbours(j)
        .iter()
        .any(|&n| g.vertex(n).is_some_and(|v| v.colour == Colour::I0))
}

/// Trivialize the action on an `I1` component meeting no `I0` component and
/// smooth its nodes.
pub fn enlarge_type1(g: &AutoGraph, j: u32) -> Result<AutoGraph> {
    require_i1(g, j)?;
    if meets_i0(g, j) {
        return Err(Error::Enlargement(format!(
            "vertex {j} meets an I0 vertex (type 2 applies)"
        )));
    }
    Ok(simplify(&recolour(g, &[j])?))
}

/// Trivialize the action on an `I1` component meeting `I0` components and
/// smooth it together with them.
pub fn enlarge_type2(g: &AutoGraph, j: u32) -> Result<AutoGraph> {
    require_i1(g, j)?;
    if !meets_i0(g, j) {
        return Err(Error::Enlargement(format!(
            "vertex {j} meets no I0 vertex (type 1 applies)"
        )));
    }
    if g.ids_with(Colour::I1).len() < 2 {
        return Err(Error::Enlargement(format!(
            "vertex {j} is the only I1 vertex"
        )));
    }
    Ok(simplify(&recolour(g, &[j])?))
}

/// Trivialize the action everywhere except on `j` and smooth everything
/// else.
pub fn enlarge_max(g: &AutoGraph, j: u32) -> Result<AutoGraph> {
    require_i1(g, j)?;
    let others: Vec<u32> = g
        .ids_with(Colour::I1)
        .into_iter()
        .filter(|&x| x != j)
        .collect();
    if others.is_empty() {
        return Err(Error::Enlargement(format!(
            "vertex {j} is the only I1 vertex"
        )));
    }
    Ok(simplify(&recolour(g, &others)?))
}

/// Maximal enlargement carried out one component at a time, by type 1 or
/// type 2 steps on the remaining `I1` vertices in increasing id order.
pub fn enlarge_max_stepwise(g: &AutoGraph, j: u32) -> Result<AutoGraph> {
    require_i1(g, j)?;
    if g.ids_with(Colour::I1).len() < 2 {
        return Err(Error::Enlargement(format!(
            "vertex {j} is the only I1 vertex"
        )));
    }
    let mut current = g.clone();
    while let Some(h) = current.ids_with(Colour::I1).into_iter().find(|&x| x != j) {
        current = if meets_i0(&current, h) {
            enlarge_type2(&current, h)?
        } else {
            enlarge_type1(&current, h)?
        };
    }
    Ok(current)
}
