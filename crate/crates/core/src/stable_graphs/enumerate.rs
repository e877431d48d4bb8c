//! Bounded enumeration of admissible graphs of a given genus and prime order.
//!
//! Stability says every vertex has excess `2 g_v - 2 + r_v >= 1` (with `r_v`
//! its number of branches), and the excesses add up to `2g - 2`. This bounds
//! shapes by `2g - 2` vertices and `3g - 3` edges. Shapes are built from
//! partitions of `2g - 2`, then coloured, labelled and given free branch
//! points, and the results are deduplicated by canonical form.

use std::collections::BTreeMap;

use super::canonical::canonical_graph;
use super::graph::{AutoGraph, Colour, Edge, PreGraph, Vertex};
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// An undecorated stable graph: vertex genera, loops and links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub genera: Vec<u32>,
    pub loops: Vec<u32>,
    /// Links as vertex index pairs, repeated for parallel edges.
    pub links: Vec<(usize, usize)>,
}

impl Shape {
    fn ends(&self, v: usize) -> u32 {
        2 * self.loops[v]
            + self
                .links
                .iter()
                .map(|&(a, b)| u32::from(a == v) + u32::from(b == v))
                .sum::<u32>()
    }

    fn as_graph(&self) -> PreGraph {
        let vertices = self
            .genera
            .iter()
            .enumerate()
            .map(|(i, &g)| Vertex::i0(i as u32, g))
            .collect();
        let mut edges: Vec<Edge> = self
            .links
            .iter()
            .map(|&(a, b)| Edge::link(a as u32, b as u32, [0, 0]))
            .collect();
        for (v, &l) in self.loops.iter().enumerate() {
            for _ in 0..l {
                edges.push(Edge::loop_at(v as u32, [0, 0]));
            }
        }
        PreGraph::new_unchecked(2, vertices, edges)
    }
}

fn partitions(total: u32, parts: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let hi = max.min(total - (parts - 1));
    for first in (1..=hi).rev() {
        if first * parts < total {
            break;
        }
        prefix.push(first);
        partitions(total - first, parts - 1, first, prefix, out);
        prefix.pop();
    }
}

/// Loop counts per vertex and the list of links.
type EdgeSet = (Vec<u32>, Vec<(usize, usize)>);

fn realize(
    degrees: &mut Vec<u32>,
    v: usize,
    next: usize,
    loops: &mut Vec<u32>,
    links: &mut Vec<(usize, usize)>,
    out: &mut Vec<EdgeSet>,
) {
    let n = degrees.len();
    if v == n {
        out.push((loops.clone(), links.clone()));
        return;
    }
    if next == v {
        // choose the loops at v first
        for l in 0..=degrees[v] / 2 {
            degrees[v] -= 2 * l;
            loops[v] = l;
            realize(degrees, v, v + 1, loops, links, out);
            degrees[v] += 2 * l;
        }
        loops[v] = 0;
        return;
    }
    if next == n {
        if degrees[v] == 0 {
            realize(degrees, v + 1, v + 1, loops, links, out);
        }
        return;
    }
    let max = degrees[v].min(degrees[next]);
    for m in 0..=max {
        degrees[v] -= m;
        degrees[next] -= m;
        links.extend(std::iter::repeat_n((v, next), m as usize));
        realize(degrees, v, next + 1, loops, links, out);
        links.truncate(links.len() - m as usize);
        degrees[v] += m;
        degrees[next] += m;
    }
}

fn connected(n: usize, links: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &(a, b) in links {
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All stable graph shapes of genus `g`, one per isomorphism class.
pub fn stable_shapes(g: u32) -> Result<Vec<Shape>> {
    if g < 2 {
        return Err(Error::GenusTooSmall { got: g, min: 2 });
    }
    let excess = 2 * g - 2;
    let mut found: BTreeMap<Vec<u32>, Shape> = BTreeMap::new();
    for n in 1..=excess {
        let mut parts = Vec::new();
        partitions(excess, n, excess, &mut Vec::new(), &mut parts);
        for e in parts {
            let mut genera = vec![0u32; n as usize];
            choose_genera(&e, 0, &mut genera, &mut |genera| {
                let mut degrees: Vec<u32> = e
                    .iter()
                    .zip(genera)
                    .map(|(&ev, &gv)| ev + 2 - 2 * gv)
                    .collect();
                let mut realizations = Vec::new();
                let mut loops = vec![0; genera.len()];
                realize(
                    &mut degrees,
                    0,
                    0,
                    &mut loops,
                    &mut Vec::new(),
                    &mut realizations,
                );
                for (loops, links) in realizations {
                    if !connected(genera.len(), &links) {
                        continue;
                    }
                    let shape = Shape {
                        genera: genera.to_vec(),
                        loops,
                        links,
                    };
                    let key = canonical_graph(&shape.as_graph()).encoding;
                    found.entry(key).or_insert(shape);
                }
            });
        }
    }
    let shapes: Vec<Shape> = found.into_values().collect();
    debug_assert!(shapes.iter().all(|s| {
        s.genera.len() as u32 <= excess
            && (s.links.len() as u32 + s.loops.iter().sum::<u32>()) <= 3 * g - 3
    }));
    Ok(shapes)
}

fn choose_genera(e: &[u32], i: usize, genera: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == e.len() {
        f(genera);
        return;
    }
    for gv in 0..=(e[i] + 2) / 2 {
        genera[i] = gv;
        choose_genera(e, i + 1, genera, f);
    }
}

/// Restrictions applied during the search rather than afterwards.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_i1: Option<usize>,
    pub min_i0: usize,
}

/// Admissible graphs of genus `g` and prime order `d` accepted by `filter`,
/// one per numerical type, in canonical position and canonical order.
pub fn enumerate_graphs(
    g: u32,
    d: u32,
    filter: impl Fn(&AutoGraph) -> bool,
) -> Result<Vec<AutoGraph>> {
    enumerate_graphs_limited(g, d, SearchLimits::default(), filter)
}

pub fn enumerate_graphs_limited(
    g: u32,
    d: u32,
    limits: SearchLimits,
    filter: impl Fn(&AutoGraph) -> bool,
) -> Result<Vec<AutoGraph>> {
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    let mut found: BTreeMap<Vec<u32>, AutoGraph> = BTreeMap::new();
    for shape in stable_shapes(g)? {
        decorate(&shape, d, limits, &mut |graph| {
            let canonical = canonical_graph(&graph);
            if found.contains_key(&canonical.encoding) {
                return;
            }
            let graph = AutoGraph::try_from(canonical.graph).expect("canonical form stays maximal");
            if filter(&graph) {
                found.insert(canonical.encoding, graph);
            }
        });
    }
    Ok(found.into_values().collect())
}

/// Quotient genus and fixed-point count options for an `I1` vertex of
/// genus `genus`: `k (d - 1) = 2 genus - 2 - 2d (g' - 1)`.
fn fixed_point_counts(genus: u32, d: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut gp = 0i64;
    loop {
        let num = 2 * genus as i64 - 2 - 2 * d as i64 * (gp - 1);
        if num < 0 {
            break;
        }
        if num % (d as i64 - 1) == 0 {
            out.push((num / (d as i64 - 1)) as u32);
        }
        gp += 1;
    }
    out
}

/// Free branchings with `total` points whose weighted sum is `-partial mod d`.
fn free_options(d: u32, total: u32, partial: u32) -> Vec<Vec<u32>> {
    fn go(
        d: u32,
        idx: u32,
        left: u32,
        sum: u32,
        target: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == d {
            if left == 0 && sum == target {
                out.push(cur.clone());
            }
            return;
        }
        // the last residue takes every remaining point
        let start = if idx == d - 1 { left } else { 0 };
        for n in start..=left {
            cur.push(n);
            go(d, idx + 1, left - n, (sum + idx * n) % d, target, cur, out);
            cur.pop();
        }
    }
    let target = (d - partial % d) % d;
    let mut out = Vec::new();
    go(d, 1, total, 0, target, &mut Vec::new(), &mut out);
    out
}

fn decorate(shape: &Shape, d: u32, limits: SearchLimits, emit: &mut impl FnMut(PreGraph)) {
    let n = shape.genera.len();
    let ends: Vec<u32> = (0..n).map(|v| shape.ends(v)).collect();
    let counts: Vec<Vec<u32>> = shape
        .genera
        .iter()
        .map(|&gv| fixed_point_counts(gv, d))
        .collect();
    for mask in 1u32..(1 << n) {
        let is_i1 = |v: usize| mask >> v & 1 == 1;
        let i1_count = mask.count_ones() as usize;
        if limits.max_i1.is_some_and(|m| i1_count > m) || n - i1_count < limits.min_i0 {
            continue;
        }
        if (0..n).any(|v| !is_i1(v) && shape.loops[v] > 0)
            || shape.links.iter().any(|&(a, b)| !is_i1(a) && !is_i1(b))
        {
            continue;
        }
        if (0..n).any(|v| is_i1(v) && !counts[v].iter().any(|&k| k >= ends[v])) {
            continue;
        }
        let colours: Vec<Colour> = (0..n)
            .map(|v| if is_i1(v) { Colour::I1 } else { Colour::I0 })
            .collect();
        label_edges(shape, d, &colours, &counts, &ends, emit);
    }
}

fn label_edges(
    shape: &Shape,
    d: u32,
    colours: &[Colour],
    counts: &[Vec<u32>],
    ends: &[u32],
    emit: &mut impl FnMut(PreGraph),
) {
    let n = shape.genera.len();
    // edge list: links then loops
    let mut slots: Vec<(usize, usize)> = shape.links.clone();
    for v in 0..n {
        for _ in 0..shape.loops[v] {
            slots.push((v, v));
        }
    }
    let choices: Vec<Vec<[u32; 2]>> = slots
        .iter()
        .map(|&(a, b)| {
            let range = |c: Colour| -> Vec<u32> {
                match c {
                    Colour::I0 => vec![0],
                    Colour::I1 => (1..d).collect(),
                }
            };
            let mut opts = Vec::new();
            for &x in &range(colours[a]) {
                for &y in &range(colours[b]) {
                    if (x + y) % d == 0 && x + y > 0 {
                        continue;
                    }
                    if a == b && x > y {
                        continue;
                    }
                    opts.push([x, y]);
                }
            }
            opts
        })
        .collect();
    // index of the last slot touching each vertex
    let mut last = vec![None; n];
    for (idx, &(a, b)) in slots.iter().enumerate() {
        last[a] = Some(idx);
        last[b] = Some(idx);
    }
    let mut partial = vec![0u32; n];
    let mut chosen: Vec<[u32; 2]> = Vec::with_capacity(slots.len());

    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        d: u32,
        shape: &Shape,
        slots: &[(usize, usize)],
        choices: &[Vec<[u32; 2]>],
        last: &[Option<usize>],
        colours: &[Colour],
        counts: &[Vec<u32>],
        ends: &[u32],
        partial: &mut Vec<u32>,
        chosen: &mut Vec<[u32; 2]>,
        emit: &mut impl FnMut(PreGraph),
    ) {
        if idx == slots.len() {
            finish(
                d, shape, slots, chosen, colours, counts, ends, partial, emit,
            );
            return;
        }
        let (a, b) = slots[idx];
        for &[x, y] in &choices[idx] {
            partial[a] += x;
            partial[b] += y;
            chosen.push([x, y]);
            let ok = [a, b].iter().all(|&v| {
                last[v] != Some(idx)
                    || colours[v] == Colour::I0
                    || counts[v].iter().any(|&k| {
                        k >= ends[v] && !free_options(d, k - ends[v], partial[v]).is_empty()
                    })
            });
            if ok {
                go(
                    idx + 1,
                    d,
                    shape,
                    slots,
                    choices,
                    last,
                    colours,
                    counts,
                    ends,
                    partial,
                    chosen,
                    emit,
                );
            }
            chosen.pop();
            partial[a] -= x;
            partial[b] -= y;
        }
    }

    go(
        0,
        d,
        shape,
        &slots,
        &choices,
        &last,
        colours,
        counts,
        ends,
        &mut partial,
        &mut chosen,
        emit,
    );
}

#[allow(clippy::too_many_arguments)]
fn finish(
    d: u32,
    shape: &Shape,
    slots: &[(usize, usize)],
    labels: &[[u32; 2]],
    colours: &[Colour],
    counts: &[Vec<u32>],
    ends: &[u32],
    partial: &[u32],
    emit: &mut impl FnMut(PreGraph),
) {
    let n = shape.genera.len();
    let edges: Vec<Edge> = slots
        .iter()
        .zip(labels)
        .map(|(&(a, b), &l)| {
            if a == b {
                Edge::loop_at(a as u32, l)
            } else {
                Edge::link(a as u32, b as u32, l)
            }
        })
        .collect();
    let options: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|v| match colours[v] {
            Colour::I0 => vec![Vec::new()],
            Colour::I1 => counts[v]
                .iter()
                .filter(|&&k| k >= ends[v])
                .flat_map(|&k| free_options(d, k - ends[v], partial[v]))
                .collect(),
        })
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; n];
    loop {
        let vertices: Vec<Vertex> = (0..n)
            .map(|v| Vertex {
                id: v as u32,
                colour: colours[v],
                genus: shape.genera[v],
                free_branching: options[v][pick[v]].clone(),
            })
            .collect();
        if let Ok(g) = PreGraph::new(d, vertices, edges.clone()) {
            emit(g);
        }
        let mut v = 0;
        while v < n {
            pick[v] += 1;
            if pick[v] < options[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
        if v == n {
            break;
        }
    }
}
