//! Irreducible components of the singular locus of `M_g`, `g >= 3`.
//!
//! Every curve with a nontrivial automorphism has one of prime order, so the
//! singular locus is covered by the prime-order loci `M_{g;p,[datum]}`. A
//! locus fails to be a component when its generic curve carries a larger
//! automorphism group forcing it into a bigger locus of some order `q`; this
//! only happens for the quotient types `(h, k) = (2, 0), (1, 2), (0, 4),
//! (0, 3)` and the normalizer shapes below. The genus-3 hyperelliptic divisor
//! is smooth in moduli (its involution acts as a pseudoreflection) and is
//! dropped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, primes_up_to, units};
use crate::branching::{
    canonical_datum, enumerate_admissible, locus, BranchingSequence, SmoothLocus,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Component,
    Redundant,
    ExcludedPseudoreflection,
    ManualReview,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    #[serde(rename = "Case4_Z2")]
    Case4Z2,
    #[serde(rename = "Case4_Z3")]
    Case4Z3,
}

/// Shape of the normalizer of the order-`p` subgroup in the full group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizerShape {
    Dihedral,
    /// `D_p x Z/2`
    DihedralTimesCyclic2,
    Cyclic2p,
    Klein4,
    Cyclic3Extension,
}

/// A locus of order `q` containing the generic curve of a classified locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Container {
    pub q: u32,
    /// The container itself when its branching datum is known.
    pub locus: Option<SmoothLocus>,
    /// Dimension of the container, or a lower bound for it.
    pub dim: i64,
    pub dim_is_lower_bound: bool,
}

impl Container {
    fn exact(l: SmoothLocus) -> Self {
        Self {
            q: l.d,
            dim: l.dim,
            dim_is_lower_bound: false,
            locus: Some(l),
        }
    }

    pub fn describe(&self) -> String {
        match &self.locus {
            Some(l) => format!("{} (dim {})", l.label(), l.dim),
            None => format!("order {} locus of dim >= {}", self.q, self.dim),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub locus: SmoothLocus,
    pub verdict: Verdict,
    pub case_tag: Option<CaseTag>,
    pub container: Option<Container>,
    pub normalizer_shape: Option<NormalizerShape>,
}

/// Match the quotient type and monodromies against the cases where the
/// normalizer of the order-`p` subgroup can be larger than the subgroup.
pub fn case_pattern(l: &SmoothLocus) -> Result<Option<(CaseTag, NormalizerShape)>> {
    let p = l.d;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let dihedral = if p == 2 {
        NormalizerShape::Klein4
    } else {
        NormalizerShape::Dihedral
    };
    let mono = l.datum.canonical().monodromies();
    let tag = match (l.h, l.k) {
        (2, 0) => Some((CaseTag::Case1, dihedral)),
        (1, 2) => Some((CaseTag::Case2, dihedral)),
        (0, 4) if is_symmetric(p, &mono) => {
            let mut distinct = mono.clone();
            distinct.dedup();
            let shape = if distinct.len() <= 2 {
                NormalizerShape::DihedralTimesCyclic2
            } else {
                NormalizerShape::Dihedral
            };
            Some((CaseTag::Case3, shape))
        }
        (0, 3) if has_repeat(&mono) => Some((CaseTag::Case4Z2, NormalizerShape::Cyclic2p)),
        (0, 3) if p % 3 == 1 && is_cube_root_orbit(p, &mono) => {
            Some((CaseTag::Case4Z3, NormalizerShape::Cyclic3Extension))
        }
        _ => None,
    };
    Ok(tag)
}

/// `M = -M` as multisets of residues mod `p`.
fn is_symmetric(p: u32, mono: &[u32]) -> bool {
    let mut neg: Vec<u32> = mono.iter().map(|&m| (p - m) % p).collect();
    neg.sort_unstable();
    neg == mono
}

fn has_repeat(sorted: &[u32]) -> bool {
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// `M = u {1, m, m^2}` for a unit `u` and a nontrivial cube root of unity `m`.
fn is_cube_root_orbit(p: u32, mono: &[u32]) -> bool {
    let p64 = p as u64;
    let roots: Vec<u64> = (2..p64).filter(|&m| m * m % p64 * m % p64 == 1).collect();
    units(p).into_iter().any(|u| {
        roots.iter().any(|&m| {
            let u = u as u64;
            let mut candidate = [u % p64, u * m % p64, u * m % p64 * m % p64];
            candidate.sort_unstable();
            candidate.iter().map(|&x| x as u32).eq(mono.iter().copied())
        })
    })
}

/// The locus receiving the generic curve of `l` under the given case.
pub fn container_locus(l: &SmoothLocus, tag: CaseTag) -> Result<Option<Container>> {
    let p = l.d;
    let g = l.g;
    let involution_locus = |k: u32| -> Result<SmoothLocus> {
        let seq = BranchingSequence::new(2, vec![k])?;
        locus(g, &canonical_datum(&seq))
    };
    let container = match tag {
        // the hyperelliptic involution of the genus-2 quotient lifts with 6
        // fixed points; for p = 2 the lift is a bielliptic involution
        CaseTag::Case1 if p == 2 => Some(Container::exact(involution_locus(4)?)),
        CaseTag::Case1 => {
            let c = involution_locus(6)?;
            debug_assert_eq!(c.h, 1 + (p - 3) / 2);
            Some(Container::exact(c))
        }
        CaseTag::Case2 => {
            let c = involution_locus(4)?;
            debug_assert_eq!(c.h, 1 + (p - 3) / 2);
            Some(Container::exact(c))
        }
        // z^p = x^2 - 1: the involution fixes the point over x = infinity and
        // the p points over x = 0
        CaseTag::Case4Z2 => {
            let c = involution_locus(p + 1)?;
            debug_assert_eq!(c.h, 0);
            Some(Container::exact(c))
        }
        CaseTag::Case3 => smallest_locus(g, 2)?,
        CaseTag::Case4Z3 => smallest_locus(g, 3)?,
    };
    Ok(container)
}

/// A lower bound for the dimension of any order-`q` locus in genus `g` other
/// than the genus-3 hyperelliptic divisor.
fn smallest_locus(g: u32, q: u32) -> Result<Option<Container>> {
    let dim = enumerate_admissible(g, q)?
        .into_iter()
        .map(|(datum, _)| locus(g, &datum))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|l| !l.is_pseudoreflection_locus())
        .map(|l| l.dim)
        .min();
    Ok(dim.map(|dim| Container {
        q,
        locus: None,
        dim,
        dim_is_lower_bound: true,
    }))
}

pub fn classify(l: &SmoothLocus) -> Result<ClassificationRecord> {
    if l.g < 3 {
        return Err(Error::GenusTooSmall { got: l.g, min: 3 });
    }
    let mut record = ClassificationRecord {
        locus: l.clone(),
        verdict: Verdict::Component,
        case_tag: None,
        container: None,
        normalizer_shape: None,
    };
    if l.is_pseudoreflection_locus() {
        record.verdict = Verdict::ExcludedPseudoreflection;
        return Ok(record);
    }
    let Some((tag, shape)) = case_pattern(l)? else {
        return Ok(record);
    };
    record.case_tag = Some(tag);
    record.normalizer_shape = Some(shape);
    record.container = container_locus(l, tag)?;
    let strict = record.container.as_ref().is_some_and(|c| {
        c.dim > l.dim
            && !c
                .locus
                .as_ref()
                .is_some_and(SmoothLocus::is_pseudoreflection_locus)
    });
    record.verdict = if strict {
        Verdict::Redundant
    } else {
        Verdict::ManualReview
    };
    Ok(record)
}

/// Classification of every prime-order locus in genus `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingReport {
    pub g: u32,
    pub components: Vec<ClassificationRecord>,
    pub redundant: Vec<ClassificationRecord>,
    pub excluded: Vec<ClassificationRecord>,
    pub manual_review: Vec<ClassificationRecord>,
}

impl SingReport {
    pub fn records(&self) -> impl Iterator<Item = &ClassificationRecord> {
        self.components
            .iter()
            .chain(&self.redundant)
            .chain(&self.excluded)
            .chain(&self.manual_review)
    }
}

/// Largest prime order acting on a genus-`g` curve: `2(g-1) >= p (-2 + k (1 - 1/p))`
/// with `k >= 3` gives `p <= 2g + 1`.
pub fn prime_bound(g: u32) -> u32 {
    2 * g + 1
}

pub fn decompose_sing(g: u32) -> Result<SingReport> {
    if g < 3 {
        return Err(Error::GenusTooSmall { got: g, min: 3 });
    }
    let bound = prime_bound(g);
    let next_prime = (bound + 1..).find(|&n| is_prime(n)).unwrap();
    assert!(
        enumerate_admissible(g, next_prime)?.is_empty(),
        "order {next_prime} acts in genus {g}"
    );
    let mut by_verdict: BTreeMap<Verdict, Vec<ClassificationRecord>> = BTreeMap::new();
    for p in primes_up_to(bound) {
        for (datum, _) in enumerate_admissible(g, p)? {
            let record = classify(&locus(g, &datum)?)?;
            if record.verdict == Verdict::Redundant {
                let c = record
                    .container
                    .as_ref()
                    .expect("redundant without container");
                assert!(c.dim > record.locus.dim);
            }
            by_verdict.entry(record.verdict).or_default().push(record);
        }
    }
    let mut take = |v| by_verdict.remove(&v).unwrap_or_default();
    Ok(SingReport {
        g,
        components: take(Verdict::Component),
        redundant: take(Verdict::Redundant),
        excluded: take(Verdict::ExcludedPseudoreflection),
        manual_review: take(Verdict::ManualReview),
    })
}
