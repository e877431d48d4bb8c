//! Brute-force oracles shared by the integration tests and the acceptance
//! runner. They share no code with the library beyond its public data types.

#![allow(dead_code)]

pub mod cover;
pub mod sing;

use std::collections::{BTreeMap, BTreeSet};

use cyclic_covers::stable_graphs::{
    canonical_graph, graph_genus, simplify, smooth_node, smoothable_nodes, stable_shapes, Colour,
    Edge, PreGraph, Vertex,
};
use num_rational::Ratio;

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|x| x * x <= n).all(|x| n % x != 0)
}

pub fn primes(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn units(d: u32) -> Vec<u32> {
    (1..d).filter(|&r| gcd(r, d) == 1).collect()
}

/// Orbit key of a count vector: lexicographic minimum over all unit images.
pub fn orbit_key(d: u32, counts: &[u32]) -> Vec<u32> {
    units(d)
        .into_iter()
        .map(|r| {
            let mut out = vec![0; counts.len()];
            for (idx, &k) in counts.iter().enumerate() {
                let i = idx as u32 + 1;
                out[((r * i) % d - 1) as usize] = k;
            }
            out
        })
        .min()
        .unwrap()
}

/// Every count vector `(k_1..k_{d-1})` for which the rational Hurwitz formula
/// `2(g-1) = d (2(h-1) + sum_i k_i (1 - gcd(i,d)/d))` gives an integer
/// `h >= 0`, with `sum i k_i = 0 mod d` and a surjective monodromy (`h >= 1`
/// or the labels generate `Z/d`). Every vector with `k` below the bound
/// forced by `h >= 0` is tested. Returns orbit key to `h`.
pub fn brute_admissible(g: u32, d: u32) -> BTreeMap<Vec<u32>, u32> {
    let min_weight = (1..d).map(|i| d - gcd(i, d)).min().unwrap();
    let kmax = (2 * g + 2 * d - 2) / min_weight;
    let mut out = BTreeMap::new();
    let mut counts = vec![0u32; (d - 1) as usize];
    fill(g, d, 0, kmax, &mut counts, &mut out);
    out
}

fn fill(
    g: u32,
    d: u32,
    idx: usize,
    left: u32,
    counts: &mut Vec<u32>,
    out: &mut BTreeMap<Vec<u32>, u32>,
) {
    if idx == counts.len() {
        test_counts(g, d, counts, out);
        return;
    }
    for c in 0..=left {
        counts[idx] = c;
        fill(g, d, idx + 1, left - c, counts, out);
    }
    counts[idx] = 0;
}

fn test_counts(g: u32, d: u32, counts: &[u32], out: &mut BTreeMap<Vec<u32>, u32>) {
    let weighted: u64 = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u64 + 1) * c as u64)
        .sum();
    if weighted % d as u64 != 0 {
        return;
    }
    let ramification: Ratio<i64> = counts
        .iter()
        .enumerate()
        .map(|(idx, &c)| {
            let i = idx as u32 + 1;
            Ratio::new(c as i64 * (d - gcd(i, d)) as i64, d as i64)
        })
        .sum();
    let h = (Ratio::from_integer(2 * (g as i64 - 1)) / d as i64 - ramification) / 2 + 1;
    let span = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(d, |acc, (idx, _)| gcd(acc, idx as u32 + 1));
    if h.is_integer() && *h.numer() >= 0 && (span == 1 || *h.numer() >= 1) {
        out.insert(orbit_key(d, counts), *h.numer() as u32);
    }
}

// ---------------------------------------------------------------------------
// All pre-graphs of a bounded size.

/// Every admissible labelled graph of genus `2..=max_genus` and order `d` with
/// at most `max_v` vertices and `max_e` edges, smoothable nodes included,
/// one per canonical class.
pub fn all_pregraphs(d: u32, max_genus: u32, max_v: usize, max_e: usize) -> Vec<PreGraph> {
    let mut found: BTreeMap<Vec<u32>, PreGraph> = BTreeMap::new();
    for g in 2..=max_genus {
        for shape in stable_shapes(g).unwrap() {
            let n = shape.genera.len();
            let e = shape.links.len() + shape.loops.iter().sum::<u32>() as usize;
            if n > max_v || e > max_e {
                continue;
            }
            for mask in 1u32..(1 << n) {
                let colours: Vec<Colour> = (0..n)
                    .map(|v| {
                        if mask >> v & 1 == 1 {
                            Colour::I1
                        } else {
                            Colour::I0
                        }
                    })
                    .collect();
                decorate_all(
                    d,
                    &shape.genera,
                    &shape.loops,
                    &shape.links,
                    &colours,
                    &mut found,
                );
            }
        }
    }
    found.into_values().collect()
}

fn edge_options(d: u32, a: usize, b: usize, colours: &[Colour]) -> Vec<Edge> {
    let range = |c: Colour| -> Vec<u32> {
        match c {
            Colour::I0 => vec![0],
            Colour::I1 => (1..d).collect(),
        }
    };
    let mut out = Vec::new();
    if a == b {
        for x in range(colours[a]) {
            for y in range(colours[a]) {
                if x <= y {
                    out.push(Edge::loop_at(a as u32, [x, y]));
                }
            }
        }
        if d == 2 && colours[a] == Colour::I1 {
            out.push(Edge::swapped_loop(a as u32));
        }
    } else {
        for x in range(colours[a]) {
            for y in range(colours[b]) {
                out.push(Edge::link(a as u32, b as u32, [x, y]));
            }
        }
    }
    out
}

fn free_vectors(d: u32, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let n = (d - 1) as usize;
    let mut cur = vec![0u32; n];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            go(i + 1, left - x, cur, out);
        }
    }
    go(0, total, &mut cur, &mut out);
    out
}

fn decorate_all(
    d: u32,
    genera: &[u32],
    loops: &[u32],
    links: &[(usize, usize)],
    colours: &[Colour],
    found: &mut BTreeMap<Vec<u32>, PreGraph>,
) {
    let mut slots: Vec<(usize, usize)> = links.to_vec();
    for (v, &l) in loops.iter().enumerate() {
        for _ in 0..l {
            slots.push((v, v));
        }
    }
    let options: Vec<Vec<Edge>> = slots
        .iter()
        .map(|&(a, b)| edge_options(d, a, b, colours))
        .collect();
    let mut pick = vec![0usize; slots.len()];
    loop {
        let edges: Vec<Edge> = pick
            .iter()
            .zip(&options)
            .map(|(&i, o)| o[i].clone())
            .collect();
        attach_free(d, genera, colours, &edges, found);
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
}

fn attach_free(
    d: u32,
    genera: &[u32],
    colours: &[Colour],
    edges: &[Edge],
    found: &mut BTreeMap<Vec<u32>, PreGraph>,
) {
    let n = genera.len();
    // branch points already present at each vertex
    let present: Vec<u32> = (0..n)
        .map(|v| {
            edges
                .iter()
                .map(|e| e.labels_at(v as u32).len() as u32)
                .sum()
        })
        .collect();
    let per_vertex: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|v| {
            if colours[v] == Colour::I0 {
                return vec![Vec::new()];
            }
            // k (d - 1) = 2 g_v - 2 + 2d - 2d g'
            let mut out = Vec::new();
            for gp in 0..=genera[v] {
                let num = 2 * genera[v] as i64 - 2 + 2 * d as i64 - 2 * d as i64 * gp as i64;
                if num >= 0 && num % (d as i64 - 1) == 0 {
                    let k = (num / (d as i64 - 1)) as u32;
                    if k >= present[v] {
                        out.extend(free_vectors(d, k - present[v]));
                    }
                }
            }
            out
        })
        .collect();
    if per_vertex.iter().any(|o| o.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; n];
    loop {
        let vertices: Vec<Vertex> = (0..n)
            .map(|v| Vertex {
                id: v as u32,
                colour: colours[v],
                genus: genera[v],
                free_branching: per_vertex[v][pick[v]].clone(),
            })
            .collect();
        if let Ok(g) = PreGraph::new(d, vertices, edges.to_vec()) {
            let c = canonical_graph(&g);
            found.entry(c.encoding).or_insert(g);
        }
        let mut i = 0;
        while i < n {
            pick[i] += 1;
            if pick[i] < per_vertex[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Boundary components with a single I1 component, built directly as stars.

/// Key of a graph with one `I1` vertex `j` whose other vertices are `I0`
/// and joined only to `j`: minimum over units of
/// `(genus of j, loop pairs, tails as (genus, labels at j), free points)`.
pub type StarKey = (u32, Vec<[u32; 2]>, Vec<(u32, Vec<u32>)>, Vec<u32>);

fn star_key(
    d: u32,
    gj: u32,
    loops: &[[u32; 2]],
    tails: &[(u32, Vec<u32>)],
    free: &[u32],
) -> StarKey {
    units(d)
        .into_iter()
        .map(|r| {
            let s = |x: u32| (r * x) % d;
            let mut l: Vec<[u32; 2]> = loops
                .iter()
                .map(|p| {
                    let (a, b) = (s(p[0]), s(p[1]));
                    [a.min(b), a.max(b)]
                })
                .collect();
            l.sort();
            let mut t: Vec<(u32, Vec<u32>)> = tails
                .iter()
                .map(|(genus, labels)| {
                    let mut ls: Vec<u32> = labels.iter().map(|&x| s(x)).collect();
                    ls.sort();
                    (*genus, ls)
                })
                .collect();
            t.sort();
            let mut f = vec![0; free.len()];
            for (idx, &k) in free.iter().enumerate() {
                f[(s(idx as u32 + 1) - 1) as usize] = k;
            }
            (gj, l, t, f)
        })
        .min()
        .unwrap()
}

/// Key of a library graph that has the star shape; `None` otherwise.
pub fn star_key_of(g: &PreGraph) -> Option<StarKey> {
    let j: Vec<&Vertex> = g
        .vertices()
        .iter()
        .filter(|v| v.colour == Colour::I1)
        .collect();
    let [j] = j.as_slice() else { return None };
    let mut loops = Vec::new();
    let mut tails: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for e in g.edges() {
        match *e {
            Edge::Loop {
                vertex,
                pair,
                branch_swapped: false,
            } if vertex == j.id => loops.push(pair),
            Edge::Link { u, v, labels } if u == j.id => tails.entry(v).or_default().push(labels[0]),
            Edge::Link { u, v, labels } if v == j.id => tails.entry(u).or_default().push(labels[1]),
            _ => return None,
        }
    }
    let tails: Vec<(u32, Vec<u32>)> = tails
        .into_iter()
        .map(|(id, labels)| (g.vertex(id).unwrap().genus, labels))
        .collect();
    Some(star_key(g.d(), j.genus, &loops, &tails, &j.free_branching))
}

fn multisets(d: u32, size: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for x in min..d {
        cur.push(x);
        multisets(d, size, x, cur, out);
        cur.pop();
    }
}

/// Tail shapes `(genus, multiplicity)` in nondecreasing order whose
/// contribution `genus + multiplicity - 1` adds up to `budget`.
fn tail_shapes(
    budget: u32,
    min: (u32, u32),
    cur: &mut Vec<(u32, u32)>,
    out: &mut Vec<Vec<(u32, u32)>>,
) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    for genus in 0..=budget {
        for m in 1..=budget + 1 {
            if (genus, m) < min || genus + m - 1 > budget {
                continue;
            }
            // a tail must be stable: 2 genus - 2 + m >= 1
            if 2 * genus + m < 3 {
                continue;
            }
            cur.push((genus, m));
            tail_shapes(budget - (genus + m - 1), (genus, m), cur, out);
            cur.pop();
        }
    }
}

/// Numerical types of boundary components of order `d` in genus `g`,
/// enumerated from scratch: one `I1` component `j` with loops, joined to
/// `I0` tails, no smoothable node, excluding elliptic-tail involutions and
/// the two configurations on the curve with monodromies `{a, a, -2a}` whose
/// nodes are glued as described for those exceptions.
pub fn boundary_oracle(g: u32, d: u32) -> BTreeSet<StarKey> {
    let mut out = BTreeSet::new();
    for gj in 0..=g {
        for l in 0..=g - gj {
            let budget = g - gj - l;
            let mut shapes = Vec::new();
            tail_shapes(budget, (0, 0), &mut Vec::new(), &mut shapes);
            for shape in shapes {
                let used: u32 = shape.iter().map(|&(genus, m)| genus + m - 1).sum();
                if used != budget {
                    continue;
                }
                let links: u32 = shape.iter().map(|&(_, m)| m).sum();
                if 2 * gj + 2 * l + links < 3 {
                    continue;
                }
                let ends = 2 * l + links;
                for gp in 0..=gj {
                    let num = 2 * gj as i64 - 2 - 2 * d as i64 * (gp as i64 - 1);
                    if num < 0 || num % (d as i64 - 1) != 0 {
                        continue;
                    }
                    let k = (num / (d as i64 - 1)) as u32;
                    if k < ends {
                        continue;
                    }
                    star_decorations(d, g, gj, gp, k, l, &shape, &mut out);
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn star_decorations(
    d: u32,
    _g: u32,
    gj: u32,
    gp: u32,
    k: u32,
    l: u32,
    shape: &[(u32, u32)],
    out: &mut BTreeSet<StarKey>,
) {
    // loops: unordered pairs not summing to 0 mod d
    let pairs: Vec<[u32; 2]> = (1..d)
        .flat_map(|a| (a..d).map(move |b| [a, b]))
        .filter(|p| (p[0] + p[1]) % d != 0)
        .collect();
    let mut loop_choices = Vec::new();
    multisets(
        pairs.len() as u32,
        l as usize,
        0,
        &mut Vec::new(),
        &mut loop_choices,
    );
    let tail_choices: Vec<Vec<Vec<u32>>> = shape
        .iter()
        .map(|&(_, m)| {
            let mut o = Vec::new();
            multisets(d, m as usize, 1, &mut Vec::new(), &mut o);
            o
        })
        .collect();
    let ends: u32 = 2 * l + shape.iter().map(|&(_, m)| m).sum::<u32>();
    let frees = free_vectors(d, k - ends);
    for lc in &loop_choices {
        let loops: Vec<[u32; 2]> = lc.iter().map(|&i| pairs[i as usize]).collect();
        let mut pick = vec![0usize; shape.len()];
        loop {
            let tails: Vec<(u32, Vec<u32>)> = shape
                .iter()
                .zip(&pick)
                .zip(&tail_choices)
                .map(|((&(genus, _), &p), c)| (genus, c[p].clone()))
                .collect();
            for free in &frees {
                let weighted: u32 = loops.iter().map(|p| p[0] + p[1]).sum::<u32>()
                    + tails.iter().flat_map(|t| t.1.iter()).sum::<u32>()
                    + free
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| (i as u32 + 1) * x)
                        .sum::<u32>();
                if weighted % d != 0 {
                    continue;
                }
                if excluded(d, gj, gp, k, &loops, &tails, free) {
                    continue;
                }
                out.insert(star_key(d, gj, &loops, &tails, free));
            }
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < tail_choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
}

fn excluded(
    d: u32,
    gj: u32,
    gp: u32,
    k: u32,
    loops: &[[u32; 2]],
    tails: &[(u32, Vec<u32>)],
    free: &[u32],
) -> bool {
    let links: usize = tails.iter().map(|t| t.1.len()).sum();
    if d == 2 {
        // the involution of an elliptic tail
        return gj == 1 && loops.is_empty() && links == 1;
    }
    if gp != 0 || k != 3 || free.iter().any(|&x| x != 0) {
        return false;
    }
    // three branch points with labels a, a, c (then c = -2a automatically)
    let single_link_tails = tails.iter().all(|t| t.1.len() == 1 && t.0 >= 1);
    match (loops, tails.len()) {
        ([p], 1) => p[0] == p[1] && single_link_tails,
        ([], 3) if single_link_tails => {
            let labels: Vec<u32> = tails.iter().map(|t| t.1[0]).collect();
            (0..3).any(|c| {
                let (a, b) = ((c + 1) % 3, (c + 2) % 3);
                labels[a] == labels[b] && tails[a].0 == tails[b].0
            })
        }
        _ => false,
    }
}

/// Independent order of a class in `Z^r + sum Z/n_i`.
pub fn brute_order(free: &[i64], torsion: &[u64], factors: &[u64]) -> Option<u64> {
    if free.iter().any(|&x| x != 0) {
        return None;
    }
    let mut n = 1u64;
    loop {
        if torsion.iter().zip(factors).all(|(&t, &f)| (n * t) % f == 0) {
            return Some(n);
        }
        n += 1;
    }
}

pub fn distinct<T: Ord + Clone>(items: &[T]) -> bool {
    items.iter().cloned().collect::<BTreeSet<_>>().len() == items.len()
}

/// Maximal form reached from `g`, checked against every first smoothing: if
/// each one-step successor simplifies to the same canonical graph, all
/// smoothing orders agree (the successors are smaller graphs of the same
/// family and are checked in turn).
pub fn check_confluent(g: &PreGraph) -> Result<(), String> {
    let target = canonical_graph(&simplify(g));
    for e in smoothable_nodes(g) {
        let next = smooth_node(g, e).map_err(|err| err.to_string())?;
        if graph_genus(&next) != graph_genus(g) {
            return Err(format!("genus changed smoothing edge {e} of {g}"));
        }
        if canonical_graph(&simplify(&next)) != target {
            return Err(format!(
                "smoothing edge {e} of {g} first changes the result"
            ));
        }
    }
    Ok(())
}
