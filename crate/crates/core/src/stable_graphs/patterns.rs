//! Special configurations: the two divisorial boundary types for involutions,
//! and the two configurations built from the curve `z^p = x^2 - 1` whose
//! order-`p` automorphism deforms to an order-2 one.

use serde::{Deserialize, Serialize};

use super::graph::{graph_genus, vertex_data, Colour, Edge, PreGraph};
use crate::arith::units;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorException {
    None,
    /// An involution on an elliptic tail, identity on the rest.
    EllipticTail,
    /// Two elliptic curves glued at fixed points of involutions on both; not
    /// maximal, it smooths to a genus-2 curve.
    Genus2Pair,
}

pub fn divisor_exception(g: &PreGraph) -> DivisorException {
    if g.d() != 2 || g.vertices().len() != 2 || g.edges().len() != 1 {
        return DivisorException::None;
    }
    if !matches!(g.edges()[0], Edge::Link { .. }) {
        return DivisorException::None;
    }
    let total = graph_genus(g);
    let mut v: Vec<_> = g.vertices().iter().map(|v| (v.colour, v.genus)).collect();
    v.sort();
    match v.as_slice() {
        [(Colour::I0, a), (Colour::I1, 1)] if *a + 1 == total => DivisorException::EllipticTail,
        [(Colour::I1, 1), (Colour::I1, 1)] => DivisorException::Genus2Pair,
        _ => DivisorException::None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionalPattern {
    None,
    /// `z^p = x^2 - 1` with its two points exchanged by the involution glued
    /// into a node, attached to one more curve at the remaining fixed point.
    IIa,
    /// `z^p = x^2 - 1` with a curve attached at each of its three fixed
    /// points, the two at the exchanged points of equal genus.
    IIb,
}

/// Match `{a, a, c}` with `c = -2a mod p`, i.e. unit-equivalent to
/// `{p - 2, 1, 1}` with the repeated label `a`.
fn repeated_with_complement(p: u32, repeated: u32, other: u32) -> bool {
    units(p).into_iter().any(|u| {
        u as u64 * repeated as u64 % p as u64 == 1
            && u as u64 * other as u64 % p as u64 == (p - 2) as u64
    })
}

pub fn exceptional_pattern(g: &PreGraph) -> ExceptionalPattern {
    let p = g.d();
    if p == 2 {
        return ExceptionalPattern::None;
    }
    let i1 = g.ids_with(Colour::I1);
    let [j] = i1.as_slice() else {
        return ExceptionalPattern::None;
    };
    let j = *j;
    let vj = g.vertex(j).unwrap();
    let Ok(data) = vertex_data(g, j) else {
        return ExceptionalPattern::None;
    };
    if vj.free_branching.iter().any(|&k| k != 0) || data.quotient_genus != 0 || data.k != 3 {
        return ExceptionalPattern::None;
    }
    let mut loops = Vec::new();
    let mut links = Vec::new();
    for e in g.edges() {
        match *e {
            Edge::Loop { vertex, pair, .. } if vertex == j => loops.push(pair),
            Edge::Link { u, v, labels } if u == j => links.push((labels[0], v)),
            Edge::Link { u, v, labels } if v == j => links.push((labels[1], u)),
            _ => return ExceptionalPattern::None,
        }
    }
    let i0_genus = |id: u32| {
        g.vertex(id)
            .filter(|v| v.colour == Colour::I0)
            .map(|v| v.genus)
    };
    match (loops.as_slice(), links.as_slice()) {
        ([pair], [(label, other)]) => {
            let tail_ok = i0_genus(*other).is_some_and(|genus| genus >= 1);
            if tail_ok && pair[0] == pair[1] && repeated_with_complement(p, pair[0], *label) {
                ExceptionalPattern::IIa
            } else {
                ExceptionalPattern::None
            }
        }
        ([], [x, y, z]) => {
            let ends = [x, y, z];
            let mut others: Vec<u32> = ends.iter().map(|e| e.1).collect();
            others.sort_unstable();
            others.dedup();
            if others.len() != 3 || others.iter().any(|&o| !i0_genus(o).is_some_and(|h| h >= 1)) {
                return ExceptionalPattern::None;
            }
            for c in 0..3 {
                let (a, b) = (ends[(c + 1) % 3], ends[(c + 2) % 3]);
                if a.0 == b.0
                    && repeated_with_complement(p, a.0, ends[c].0)
                    && i0_genus(a.1) == i0_genus(b.1)
                {
                    return ExceptionalPattern::IIb;
                }
            }
            ExceptionalPattern::None
        }
        _ => ExceptionalPattern::None,
    }
}
