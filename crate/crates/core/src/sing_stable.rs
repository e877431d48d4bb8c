//! Components of the singular locus of the compactification.
//!
//! Components meeting the interior are closures of the interior components.
//! The remaining ones are strata of maximal graphs with a single `I1`
//! component and at least one `I0` component, excluding involutions of
//! elliptic tails and the two configurations built from `z^p = x^2 - 1`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::sing_smooth::{decompose_sing, prime_bound, SingReport};
use crate::stable_graphs::{
    canonical_graph, enumerate_graphs_limited, exceptional_pattern, stratum_dimension, vertex_data,
    AutoGraph, Colour, ExceptionalPattern, PreGraph, SearchLimits,
};

/// A genus-1 `I1` vertex with no loops and a single edge end.
fn is_elliptic_tail(g: &PreGraph, id: u32) -> bool {
    g.vertex(id)
        .is_some_and(|v| v.colour == Colour::I1 && v.genus == 1)
        && g.loop_count(id) == 0
        && g.edge_ends(id) == 1
}

/// True iff `d = 2` and every `I1` vertex is an elliptic tail, so the action
/// is generated by elliptic-tail involutions and the moduli point is smooth.
pub fn pseudoreflection_only(g: &PreGraph) -> bool {
    g.d() == 2
        && g.ids_with(Colour::I1)
            .into_iter()
            .all(|id| is_elliptic_tail(g, id))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryFlag {
    /// The `I1` cover has `(g', k)` in `{(2,0), (1,2), (0,3), (0,4)}`, where
    /// a generic member may carry more automorphisms.
    ManualReview,
    /// The `I1` cover is rigid (`g' = 0`, `k = 3`).
    RigidI1Cover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub graph: AutoGraph,
    pub d: u32,
    pub dim: i64,
    pub codim: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<BoundaryFlag>,
}

fn flags_for(graph: &PreGraph) -> Vec<BoundaryFlag> {
    let mut flags = Vec::new();
    for id in graph.ids_with(Colour::I1) {
        let data = vertex_data(graph, id).expect("validated graph");
        match (data.quotient_genus, data.k) {
            (0, 3) => {
                flags.push(BoundaryFlag::ManualReview);
                flags.push(BoundaryFlag::RigidI1Cover);
            }
            (2, 0) | (1, 2) | (0, 4) => flags.push(BoundaryFlag::ManualReview),
            _ => {}
        }
    }
    flags.sort_unstable();
    flags.dedup();
    flags
}

/// Whether a maximal graph defines a boundary component on its own.
pub fn is_boundary_candidate(g: &AutoGraph) -> bool {
    let i1 = g.ids_with(Colour::I1);
    i1.len() == 1
        && g.vertices().len() > 1
        && !(g.d() == 2 && is_elliptic_tail(g, i1[0]))
        && exceptional_pattern(g) == ExceptionalPattern::None
}

/// Boundary components for all primes `d <= d_max`, in order of `d` and then
/// canonical encoding.
pub fn boundary_components(g: u32, d_max: u32) -> Result<Vec<BoundaryComponent>> {
    Ok(boundary_scan(g, d_max)?.0)
}

/// As [`boundary_components`], also returning a notice when `d_max` exceeds
/// the largest prime that can act.
pub fn boundary_scan(g: u32, d_max: u32) -> Result<(Vec<BoundaryComponent>, Vec<String>)> {
    if g < 2 {
        return Err(Error::GenusTooSmall { got: g, min: 2 });
    }
    let cap = prime_bound(g);
    let mut notices = Vec::new();
    if d_max > cap {
        notices.push(format!(
            "orders above {cap} cannot act on a genus-{g} stable curve; dmax {d_max} truncated to {cap}"
        ));
    }
    let limits = SearchLimits {
        max_i1: Some(1),
        min_i0: 1,
    };
    let mut out = Vec::new();
    for d in primes_up_to(d_max.min(cap)) {
        for graph in enumerate_graphs_limited(g, d, limits, is_boundary_candidate)? {
            let dim = stratum_dimension(&graph)?;
            let codim = 3 * g as i64 - 3 - dim;
            debug_assert!(codim >= 1);
            out.push(BoundaryComponent {
                flags: flags_for(&graph),
                graph,
                d,
                dim,
                codim,
            });
        }
    }
    Ok((out, notices))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub g: u32,
    pub d_max: u32,
    /// Interior classification; its components close up to components of the
    /// compactified singular locus.
    pub interior: SingReport,
    pub boundary: Vec<BoundaryComponent>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

pub fn decompose_sing_bar(g: u32, d_max: u32) -> Result<DecompositionReport> {
    let interior = decompose_sing(g)?;
    let (boundary, notices) = boundary_scan(g, d_max)?;
    let mut warnings = Vec::new();
    for r in &interior.manual_review {
        warnings.push(format!(
            "{}: needs review ({:?})",
            r.locus.label(),
            r.case_tag
        ));
    }
    for b in &boundary {
        if !b.flags.is_empty() {
            let names: Vec<String> = b
                .flags
                .iter()
                .map(|f| {
                    serde_json::to_string(f)
                        .unwrap()
                        .trim_matches('"')
                        .to_string()
                })
                .collect();
            warnings.push(format!("{}: {}", b.graph.as_pregraph(), names.join(", ")));
        }
    }
    let mut keys: Vec<Vec<u32>> = boundary
        .iter()
        .map(|b| canonical_graph(&b.graph).encoding)
        .collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), boundary.len(), "boundary types repeat");
    Ok(DecompositionReport {
        g,
        d_max,
        interior,
        boundary,
        warnings,
        notices,
    })
}

/// Automorphism-count bounds in genus `g`, as exact integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutBoundReport {
    pub g: u32,
    /// `2^g`: involutions of `g` general elliptic tails on a rational curve.
    #[serde(with = "decimal")]
    pub generic_lower: BigUint,
    /// `2g * 6^g`: the same with equianharmonic tails attached at roots of unity.
    #[serde(with = "decimal")]
    pub special_config: BigUint,
    /// `84 (g - 1)`.
    #[serde(with = "decimal")]
    pub hurwitz_smooth: BigUint,
    /// Orders of automorphisms of an elliptic tail fixing its node.
    pub tail_orders: Vec<u32>,
    pub special_exceeds_hurwitz: bool,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom("not a decimal integer"))
    }
}

pub fn aut_bounds(g: u32) -> Result<AutBoundReport> {
    if g < 2 {
        return Err(Error::GenusTooSmall { got: g, min: 2 });
    }
    let generic_lower = BigUint::from(2u32).pow(g);
    let special_config = BigUint::from(2 * g) * BigUint::from(6u32).pow(g);
    let hurwitz_smooth = BigUint::from(84u32) * BigUint::from(g - 1);
    Ok(AutBoundReport {
        g,
        special_exceeds_hurwitz: special_config > hurwitz_smooth,
        generic_lower,
        special_config,
        hurwitz_smooth,
        tail_orders: vec![2, 4, 6],
    })
}
