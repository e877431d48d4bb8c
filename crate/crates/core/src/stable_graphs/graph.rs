use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Whether the automorphism is the identity on a component (`I0`) or
/// preserves it acting nontrivially (`I1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    I0,
    I1,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub colour: Colour,
    /// Genus of the normalization of the component.
    pub genus: u32,
    /// Fixed points that are not nodes, counted by local monodromy
    /// (`k'_1, ..., k'_{d-1}`); empty on `I0` vertices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free_branching: Vec<u32>,
}

impl Vertex {
    pub fn i0(id: u32, genus: u32) -> Self {
        Self {
            id,
            colour: Colour::I0,
            genus,
            free_branching: Vec::new(),
        }
    }

    pub fn i1(id: u32, genus: u32, free_branching: Vec<u32>) -> Self {
        Self {
            id,
            colour: Colour::I1,
            genus,
            free_branching,
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// A node. Labels are local rotation exponents of the automorphism on each
/// branch; `0` on branches lying in `I0` components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Edge {
    /// Node joining two components; `labels[0]` is the label at `u`.
    Link { u: u32, v: u32, labels: [u32; 2] },
    /// Node of a single component. With `branch_swapped` the automorphism
    /// exchanges the two branches and `pair` is `[0, 0]`.
    Loop {
        vertex: u32,
        pair: [u32; 2],
        #[serde(default, skip_serializing_if = "is_false")]
        branch_swapped: bool,
    },
}

impl Edge {
    pub fn link(u: u32, v: u32, labels: [u32; 2]) -> Self {
        Edge::Link { u, v, labels }
    }

    pub fn loop_at(vertex: u32, pair: [u32; 2]) -> Self {
        Edge::Loop {
            vertex,
            pair,
            branch_swapped: false,
        }
    }

    pub fn swapped_loop(vertex: u32) -> Self {
        Edge::Loop {
            vertex,
            pair: [0, 0],
            branch_swapped: true,
        }
    }

    pub fn touches(&self, id: u32) -> bool {
        match *self {
            Edge::Link { u, v, .. } => u == id || v == id,
            Edge::Loop { vertex, .. } => vertex == id,
        }
    }

    /// Labels this edge contributes at vertex `id`, one per branch through it.
    pub fn labels_at(&self, id: u32) -> Vec<u32> {
        match *self {
            Edge::Link { u, v, labels } => {
                let mut out = Vec::new();
                if u == id {
                    out.push(labels[0]);
                }
                if v == id {
                    out.push(labels[1]);
                }
                out
            }
            Edge::Loop {
                vertex,
                pair,
                branch_swapped,
            } => {
                if vertex != id || branch_swapped {
                    Vec::new()
                } else {
                    pair.to_vec()
                }
            }
        }
    }

    /// Number of branches of this node on vertex `id`.
    pub fn ends_at(&self, id: u32) -> u32 {
        match *self {
            Edge::Link { u, v, .. } => u32::from(u == id) + u32::from(v == id),
            Edge::Loop { vertex, .. } => 2 * u32::from(vertex == id),
        }
    }
}

/// A labelled graph of a stable curve with an automorphism of prime order
/// that fixes every component, not necessarily maximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct PreGraph {
    d: u32,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    d: u32,
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for PreGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        PreGraph::new(raw.d, raw.vertices, raw.edges)
    }
}

/// Per-vertex data of the cover of the normalized component over its quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCoverData {
    pub vertex: u32,
    pub colour: Colour,
    /// Number of loops at the vertex.
    pub loops: u32,
    /// `k_m` for `m = 1..d`: free fixed points plus branches of nodes with
    /// label `m`. Empty on `I0` vertices.
    pub branching: Vec<u32>,
    pub k: u32,
    /// Genus of the quotient of the normalized component (its own genus on
    /// `I0` vertices).
    pub quotient_genus: u32,
    /// Genus plus number of loops, the arithmetic genus of the component.
    pub arithmetic_genus: u32,
    /// Marked points on the quotient: edge ends on `I0`, `k` on `I1`.
    pub marks: u32,
}

impl PreGraph {
    /// Validate and build. Requirements: prime `d`, distinct vertex ids,
    /// connectedness, stability, at least one `I1` vertex, labels consistent
    /// with colours, and an admissible cover at every `I1` vertex.
    pub fn new(d: u32, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let g = Self { d, vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(d: u32, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        Self { d, vertices, edges }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: u32) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut Vec<Vertex>, &mut Vec<Edge>) {
        (&mut self.vertices, &mut self.edges)
    }

    /// Number of branches through vertex `id`.
    pub fn edge_ends(&self, id: u32) -> u32 {
        self.edges.iter().map(|e| e.ends_at(id)).sum()
    }

    pub fn loop_count(&self, id: u32) -> u32 {
        self.edges
            .iter()
            .filter(|e| matches!(e, Edge::Loop { vertex, .. } if *vertex == id))
            .count() as u32
    }

    /// Ids of the vertices joined to `id` by a link.
    pub fn neighbours(&self, id: u32) -> BTreeSet<u32> {
        self.edges
            .iter()
            .filter_map(|e| match *e {
                Edge::Link { u, v, .. } if u == id => Some(v),
                Edge::Link { u, v, .. } if v == id => Some(u),
                _ => None,
            })
            .collect()
    }

    pub fn ids_with(&self, colour: Colour) -> Vec<u32> {
        self.vertices
            .iter()
            .filter(|v| v.colour == colour)
            .map(|v| v.id)
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let d = self.d;
        if !is_prime(d) {
            return Err(Error::NotPrime(d));
        }
        if self.vertices.is_empty() {
            return Err(Error::Graph("graph has no vertices".into()));
        }
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id) {
                return Err(Error::Graph(format!("duplicate vertex id {}", v.id)));
            }
            match v.colour {
                Colour::I0 if !v.free_branching.is_empty() => {
                    return Err(Error::Vertex {
                        vertex: v.id,
                        reason: "I0 vertex carries free branch points".into(),
                    })
                }
                Colour::I1 if v.free_branching.len() != (d - 1) as usize => {
                    return Err(Error::Vertex {
                        vertex: v.id,
                        reason: format!(
                            "free branching has {} entries, expected {}",
                            v.free_branching.len(),
                            d - 1
                        ),
                    })
                }
                _ => {}
            }
        }
        if self.ids_with(Colour::I1).is_empty() {
            return Err(Error::Graph(
                "no I1 vertex: the automorphism would be trivial".into(),
            ));
        }
        for (idx, e) in self.edges.iter().enumerate() {
            self.validate_edge(idx, e)?;
        }
        if !self.is_connected() {
            return Err(Error::Graph("graph is not connected".into()));
        }
        if !self.is_stable() {
            return Err(Error::Graph(
                "curve is not stable (a genus-0 component with fewer than 3 nodes, \
                 a genus-1 component with none, or total genus below 2)"
                    .into(),
            ));
        }
        for v in &self.vertices {
            vertex_data(self, v.id)?;
        }
        Ok(())
    }

    fn colour_of(&self, id: u32, edge: usize) -> Result<Colour> {
        self.vertex(id)
            .map(|v| v.colour)
            .ok_or_else(|| Error::Graph(format!("edge {edge} refers to unknown vertex {id}")))
    }

    fn validate_edge(&self, idx: usize, e: &Edge) -> Result<()> {
        let d = self.d;
        let check_label = |id: u32, colour: Colour, label: u32| -> Result<()> {
            let ok = match colour {
                Colour::I0 => label == 0,
                Colour::I1 => (1..d).contains(&label),
            };
            if ok {
                Ok(())
            } else {
                Err(Error::Graph(format!(
                    "edge {idx}: label {label} at vertex {id} must be {}",
                    match colour {
                        Colour::I0 => "0 on an I0 vertex".to_string(),
                        Colour::I1 => format!("in 1..{} on an I1 vertex", d - 1),
                    }
                )))
            }
        };
        match *e {
            Edge::Link { u, v, labels } => {
                if u == v {
                    return Err(Error::Graph(format!(
                        "edge {idx}: link from vertex {u} to itself (use a loop)"
                    )));
                }
                check_label(u, self.colour_of(u, idx)?, labels[0])?;
                check_label(v, self.colour_of(v, idx)?, labels[1])?;
            }
            Edge::Loop {
                vertex,
                pair,
                branch_swapped,
            } => {
                let colour = self.colour_of(vertex, idx)?;
                if branch_swapped {
                    if d != 2 || colour != Colour::I1 {
                        return Err(Error::Graph(format!(
                            "edge {idx}: branches can only be swapped by an involution \
                             acting nontrivially on the component"
                        )));
                    }
                    if pair != [0, 0] {
                        return Err(Error::Graph(format!(
                            "edge {idx}: branch-swapped loop must have pair [0, 0]"
                        )));
                    }
                } else {
                    check_label(vertex, colour, pair[0])?;
                    check_label(vertex, colour, pair[1])?;
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.first() else {
            return false;
        };
        let mut adjacency: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for e in &self.edges {
            if let Edge::Link { u, v, .. } = *e {
                adjacency.entry(u).or_default().push(v);
                adjacency.entry(v).or_default().push(u);
            }
        }
        let mut seen = BTreeSet::from([first.id]);
        let mut stack = vec![first.id];
        while let Some(x) = stack.pop() {
            for &y in adjacency.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Every genus-0 component meets at least 3 branches, every genus-1
    /// component at least one, and the total genus is at least 2.
    pub fn is_stable(&self) -> bool {
        graph_genus(self) >= 2
            && self.vertices.iter().all(|v| {
                let ends = self.edge_ends(v.id);
                match v.genus {
                    0 => ends >= 3,
                    1 => ends >= 1,
                    _ => true,
                }
            })
    }
}

impl fmt::Display for PreGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} [", self.d)?;
        for (n, v) in self.vertices.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            match v.colour {
                Colour::I0 => write!(f, "{}:I0 g{}", v.id, v.genus)?,
                Colour::I1 => write!(f, "{}:I1 g{} {:?}", v.id, v.genus, v.free_branching)?,
            }
        }
        write!(f, "]")?;
        for e in &self.edges {
            match *e {
                Edge::Link { u, v, labels } => write!(f, " {u}-{v}({},{})", labels[0], labels[1])?,
                Edge::Loop {
                    vertex,
                    branch_swapped: true,
                    ..
                } => write!(f, " {vertex}~swap")?,
                Edge::Loop { vertex, pair, .. } => {
                    write!(f, " {vertex}~{{{},{}}}", pair[0], pair[1])?
                }
            }
        }
        Ok(())
    }
}

/// Graph with no smoothable node: the numerical type of a maximal pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PreGraph", into = "PreGraph")]
pub struct AutoGraph(PreGraph);

impl TryFrom<PreGraph> for AutoGraph {
    type Error = Error;

    /// Fails when some node is smoothable, naming the first such edge and
    /// the reason.
    fn try_from(g: PreGraph) -> Result<Self> {
        let d = g.d;
        for (idx, e) in g.edges.iter().enumerate() {
            match *e {
                Edge::Link { u, v, labels } => {
                    let both_i0 = labels == [0, 0];
                    if both_i0 {
                        return Err(Error::Graph(format!(
                            "edge {idx}: vertices {u} and {v} both have trivial action \
                             and cannot be joined"
                        )));
                    }
                    if (labels[0] + labels[1]) % d == 0 {
                        return Err(Error::Graph(format!(
                            "edge {idx}: labels {} and {} add up to {d}",
                            labels[0], labels[1]
                        )));
                    }
                }
                Edge::Loop {
                    vertex,
                    pair,
                    branch_swapped,
                } => {
                    if branch_swapped {
                        return Err(Error::Graph(format!(
                            "edge {idx}: loop at {vertex} has its branches exchanged"
                        )));
                    }
                    if pair == [0, 0] {
                        return Err(Error::Graph(format!(
                            "edge {idx}: loop on vertex {vertex} with trivial action"
                        )));
                    }
                    if (pair[0] + pair[1]) % d == 0 {
                        return Err(Error::Graph(format!(
                            "edge {idx}: loop labels {} and {} add up to {d}",
                            pair[0], pair[1]
                        )));
                    }
                }
            }
        }
        Ok(AutoGraph(g))
    }
}

impl From<AutoGraph> for PreGraph {
    fn from(g: AutoGraph) -> Self {
        g.0
    }
}

impl Deref for AutoGraph {
    type Target = PreGraph;

    fn deref(&self) -> &PreGraph {
        &self.0
    }
}

impl AutoGraph {
    pub fn new(d: u32, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        PreGraph::new(d, vertices, edges)?.try_into()
    }

    pub fn into_pregraph(self) -> PreGraph {
        self.0
    }

    pub fn as_pregraph(&self) -> &PreGraph {
        &self.0
    }
}

impl fmt::Display for AutoGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `sum g_i + E - V + 1`, loops included in `E`.
pub fn graph_genus(g: &PreGraph) -> u32 {
    let genera: u32 = g.vertices.iter().map(|v| v.genus).sum();
    (genera as i64 + g.edges.len() as i64 - g.vertices.len() as i64 + 1) as u32
}

/// Cover data at vertex `id`, using Hurwitz on the normalized component:
/// `2(g - 1) = d (2(g' - 1) + k (1 - 1/d))`.
pub fn vertex_data(g: &PreGraph, id: u32) -> Result<VertexCoverData> {
    let v = g.vertex(id).ok_or_else(|| Error::Vertex {
        vertex: id,
        reason: "no such vertex".into(),
    })?;
    let loops = g.loop_count(id);
    let ends = g.edge_ends(id);
    if v.colour == Colour::I0 {
        return Ok(VertexCoverData {
            vertex: id,
            colour: Colour::I0,
            loops,
            branching: Vec::new(),
            k: 0,
            quotient_genus: v.genus,
            arithmetic_genus: v.genus + loops,
            marks: ends,
        });
    }
    let d = g.d;
    let mut branching = v.free_branching.clone();
    for e in &g.edges {
        for m in e.labels_at(id) {
            branching[(m - 1) as usize] += 1;
        }
    }
    let weighted: u64 = branching
        .iter()
        .enumerate()
        .map(|(idx, &k)| (idx as u64 + 1) * k as u64)
        .sum();
    if !weighted.is_multiple_of(d as u64) {
        return Err(Error::Vertex {
            vertex: id,
            reason: format!("branch divisor sum of m k_m = {weighted} is not divisible by {d}"),
        });
    }
    let k: u32 = branching.iter().sum();
    // 2d (g' - 1) = 2(g - 1) - k (d - 1)
    let numerator = 2 * (v.genus as i64 - 1) - k as i64 * (d as i64 - 1);
    let denom = 2 * d as i64;
    if numerator % denom != 0 || numerator / denom + 1 < 0 {
        return Err(Error::Vertex {
            vertex: id,
            reason: format!(
                "Hurwitz formula gives no integral quotient genus >= 0 \
                 (genus {}, order {d}, {k} fixed points)",
                v.genus
            ),
        });
    }
    Ok(VertexCoverData {
        vertex: id,
        colour: Colour::I1,
        loops,
        branching,
        k,
        quotient_genus: (numerator / denom + 1) as u32,
        arithmetic_genus: v.genus + loops,
        marks: k,
    })
}

/// `dim T_{g,n}` with a check that `(g, n)` is in the stable range.
fn teichmuller_dimension(genus: u32, marks: u32) -> Result<i64> {
    let stable = match genus {
        0 => marks >= 3,
        1 => marks >= 1,
        _ => true,
    };
    if !stable {
        return Err(Error::UnstableSummand { genus, marks });
    }
    Ok(3 * genus as i64 - 3 + marks as i64)
}

/// Dimension of the family of curves with the given numerical type: the
/// `I0` components move freely with their nodes, the `I1` components are
/// determined by their quotients with marked branch points.
pub fn stratum_dimension(g: &PreGraph) -> Result<i64> {
    g.vertices.iter().try_fold(0, |acc, v| {
        let data = vertex_data(g, v.id)?;
        Ok(acc + teichmuller_dimension(data.quotient_genus, data.marks)?)
    })
}
