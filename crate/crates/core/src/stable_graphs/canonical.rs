//! Canonical forms of labelled graphs up to vertex relabelling and the
//! action of `(Z/d)*` on all labels simultaneously.
//!
//! For each unit the vertices are split into cells by iterated refinement of
//! invariant data, and only orderings compatible with the ordered cells are
//! tried. The canonical encoding is the least flat encoding found.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::graph::{Colour, Edge, PreGraph, Vertex};
use crate::arith::{scale, units};

/// A graph in canonical position together with its encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub encoding: Vec<u32>,
    pub graph: PreGraph,
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encoding.cmp(&other.encoding)
    }
}

struct Acted {
    colour: Vec<u32>,
    genus: Vec<u32>,
    free: Vec<Vec<u32>>,
    /// `(kind, a, b, label at a, label at b)` on vertex positions; kind 0 is a
    /// link, 1 a loop, 2 a loop with swapped branches.
    edges: Vec<(u32, usize, usize, u32, u32)>,
}

fn act(g: &PreGraph, r: u32) -> Acted {
    let d = g.d();
    let pos = |id: u32| g.vertices().iter().position(|v| v.id == id).unwrap();
    let act_free = |v: &Vertex| -> Vec<u32> {
        let mut out = vec![0; (d - 1) as usize];
        if v.colour == Colour::I1 {
            for (idx, &k) in v.free_branching.iter().enumerate() {
                out[(scale(r, idx as u32 + 1, d) - 1) as usize] = k;
            }
        }
        out
    };
    let edges = g
        .edges()
        .iter()
        .map(|e| match *e {
            Edge::Link { u, v, labels } => (
                0,
                pos(u),
                pos(v),
                scale(r, labels[0], d),
                scale(r, labels[1], d),
            ),
            Edge::Loop {
                vertex,
                pair,
                branch_swapped,
            } => {
                let (a, b) = (scale(r, pair[0], d), scale(r, pair[1], d));
                let kind = if branch_swapped { 2 } else { 1 };
                (kind, pos(vertex), pos(vertex), a.min(b), a.max(b))
            }
        })
        .collect();
    Acted {
        colour: g
            .vertices()
            .iter()
            .map(|v| u32::from(v.colour == Colour::I1))
            .collect(),
        genus: g.vertices().iter().map(|v| v.genus).collect(),
        free: g.vertices().iter().map(act_free).collect(),
        edges,
    }
}

/// Ordered cells of vertices with equal refined invariants.
fn refine(a: &Acted) -> Vec<Vec<usize>> {
    let n = a.colour.len();
    let rank_of = |keys: &[Vec<u32>]| -> Vec<u32> {
        let mut sorted: Vec<&Vec<u32>> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        keys.iter()
            .map(|k| sorted.binary_search(&k).unwrap() as u32)
            .collect()
    };
    let initial: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut key = vec![a.colour[i], a.genus[i]];
            key.extend(&a.free[i]);
            key
        })
        .collect();
    let mut rank = rank_of(&initial);
    loop {
        let keys: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut incident: Vec<[u32; 4]> = Vec::new();
                for &(kind, x, y, lx, ly) in &a.edges {
                    if x == i && y == i {
                        incident.push([kind, lx, ly, rank[i]]);
                    } else if x == i {
                        incident.push([kind, lx, ly, rank[y]]);
                    } else if y == i {
                        incident.push([kind, ly, lx, rank[x]]);
                    }
                }
                incident.sort_unstable();
                let mut key = vec![rank[i]];
                key.extend(incident.iter().flatten());
                key
            })
            .collect();
        let next = rank_of(&keys);
        let before = rank.iter().max().map_or(0, |m| m + 1);
        let after = next.iter().max().map_or(0, |m| m + 1);
        rank = next;
        if after == before {
            break;
        }
    }
    let cells = rank.iter().max().map_or(0, |m| m + 1);
    (0..cells)
        .map(|c| (0..n).filter(|&i| rank[i] == c).collect())
        .collect()
}

fn encode(d: u32, a: &Acted, order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut position = vec![0usize; n];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut out = vec![d, n as u32, a.edges.len() as u32];
    for &i in order {
        out.push(a.colour[i]);
        out.push(a.genus[i]);
        out.extend(&a.free[i]);
    }
    let mut edges: Vec<[u32; 5]> = a
        .edges
        .iter()
        .map(|&(kind, x, y, lx, ly)| {
            let (px, py) = (position[x] as u32, position[y] as u32);
            if (px, lx) <= (py, ly) {
                [kind, px, py, lx, ly]
            } else {
                [kind, py, px, ly, lx]
            }
        })
        .collect();
    edges.sort_unstable();
    out.extend(edges.iter().flatten());
    out
}

/// Visit every ordering that lists the cells in order and permutes within.
fn for_each_order(cells: &[Vec<usize>], f: &mut impl FnMut(&[usize])) {
    fn go(cells: &[Vec<usize>], prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        let Some((first, rest)) = cells.split_first() else {
            f(prefix);
            return;
        };
        let mut cell = first.clone();
        permute(&mut cell, 0, &mut |perm: &[usize]| {
            let len = prefix.len();
            prefix.extend_from_slice(perm);
            go(rest, prefix, f);
            prefix.truncate(len);
        });
    }
    fn permute(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }
    go(cells, &mut Vec::new(), f);
}

fn decode(d: u32, encoding: &[u32]) -> PreGraph {
    let n = encoding[1] as usize;
    let e = encoding[2] as usize;
    let width = (d + 1) as usize;
    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        let chunk = &encoding[3 + i * width..3 + (i + 1) * width];
        let colour = if chunk[0] == 1 {
            Colour::I1
        } else {
            Colour::I0
        };
        vertices.push(Vertex {
            id: i as u32,
            colour,
            genus: chunk[1],
            free_branching: match colour {
                Colour::I0 => Vec::new(),
                Colour::I1 => chunk[2..].to_vec(),
            },
        });
    }
    let base = 3 + n * width;
    let edges = (0..e)
        .map(|k| {
            let c = &encoding[base + 5 * k..base + 5 * (k + 1)];
            match c[0] {
                0 => Edge::link(c[1], c[2], [c[3], c[4]]),
                1 => Edge::loop_at(c[1], [c[3], c[4]]),
                _ => Edge::swapped_loop(c[1]),
            }
        })
        .collect();
    PreGraph::new_unchecked(d, vertices, edges)
}

/// Least encoding over vertex relabellings and unit actions, with the graph
/// rebuilt in that position (vertex ids `0..V` in canonical order).
pub fn canonical_graph(g: &PreGraph) -> CanonicalForm {
    let d = g.d();
    let mut best: Option<Vec<u32>> = None;
    for r in units(d) {
        let acted = act(g, r);
        let cells = refine(&acted);
        for_each_order(&cells, &mut |order| {
            let enc = encode(d, &acted, order);
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        });
    }
    let encoding = best.expect("at least one unit");
    let graph = decode(d, &encoding);
    CanonicalForm { encoding, graph }
}
