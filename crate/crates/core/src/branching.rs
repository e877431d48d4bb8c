//! Branching sequences and branching data of cyclic covers `C -> C/G` of
//! smooth curves, with `G = Z/d`.
//!
//! A branching sequence `(k_1, ..., k_{d-1})` counts the branch points of the
//! quotient map by local monodromy. Changing the generator of `G` multiplies
//! the indices by a unit of `Z/d`; a branching datum is the resulting orbit,
//! represented here by a canonical sequence.
//!
//! All Hurwitz computations are done in exact integer arithmetic after
//! clearing the denominator `2d`:
//!
//! ```text
//! 2d * h = 2d + 2(g - 1) - sum_i k_i (d - gcd(i, d))
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, scale, units};
use crate::error::{Error, Result};

/// Counts of branch points by local monodromy residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct BranchingSequence {
    d: u32,
    counts: Vec<u32>,
}

#[derive(Deserialize)]
struct RawSequence {
    d: u32,
    counts: Vec<u32>,
}

impl TryFrom<RawSequence> for BranchingSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        BranchingSequence::new(raw.d, raw.counts)
    }
}

impl BranchingSequence {
    pub fn new(d: u32, counts: Vec<u32>) -> Result<Self> {
        if d < 2 {
            return Err(Error::OrderTooSmall(d));
        }
        if counts.len() != (d - 1) as usize {
            return Err(Error::SequenceLength {
                d,
                expected: (d - 1) as usize,
                got: counts.len(),
            });
        }
        Ok(Self { d, counts })
    }

    /// The sequence with no branch points (an unramified cover).
    pub fn unramified(d: u32) -> Result<Self> {
        Self::new(d, vec![0; d.saturating_sub(1) as usize])
    }

    /// Build a sequence from a list of local monodromies (each taken mod `d`,
    /// zero residues rejected).
    pub fn from_monodromies(d: u32, monodromies: &[u32]) -> Result<Self> {
        let mut seq = Self::unramified(d)?;
        for &m in monodromies {
            let r = m % d;
            if r == 0 {
                return Err(Error::Graph(format!(
                    "local monodromy {m} is trivial mod {d}"
                )));
            }
            seq.counts[(r - 1) as usize] += 1;
        }
        Ok(seq)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `k_i` for `i` in `1..d`.
    pub fn count(&self, i: u32) -> u32 {
        self.counts[(i - 1) as usize]
    }

    /// Total number of branch points `k`.
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// The monodromy multiset, each residue `i` repeated `k_i` times, ascending.
    pub fn monodromies(&self) -> Vec<u32> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(idx, &k)| std::iter::repeat_n(idx as u32 + 1, k as usize))
            .collect()
    }

    /// Re-index by the unit `r`: the result `k'` satisfies `k'_{r i mod d} = k_i`.
    pub fn act(&self, r: u32) -> Self {
        let d = self.d;
        let mut counts = vec![0; self.counts.len()];
        for (idx, &k) in self.counts.iter().enumerate() {
            let target = scale(r, idx as u32 + 1, d);
            counts[(target - 1) as usize] = k;
        }
        Self { d, counts }
    }

    /// `gcd(d, {i : k_i != 0})`; equals `d` for an unramified sequence.
    pub fn inertia_gcd(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .fold(self.d as u64, |acc, (idx, _)| gcd(acc, idx as u64 + 1)) as u32
    }

    fn order_key(&self) -> impl Iterator<Item = &u32> {
        self.counts.iter().rev()
    }
}

impl fmt::Display for BranchingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, k) in self.counts.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Orbit of branching sequences under the unit group, stored by its canonical
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BranchingSequence", into = "BranchingSequence")]
pub struct BranchingDatum {
    canonical: BranchingSequence,
}

impl TryFrom<BranchingSequence> for BranchingDatum {
    type Error = Error;

    fn try_from(seq: BranchingSequence) -> Result<Self> {
        let datum = canonical_datum(&seq);
        if datum.canonical != seq {
            return Err(Error::Document(format!(
                "branching datum {seq} is not in canonical form (expected {})",
                datum.canonical
            )));
        }
        Ok(datum)
    }
}

impl From<BranchingDatum> for BranchingSequence {
    fn from(datum: BranchingDatum) -> Self {
        datum.canonical
    }
}

impl BranchingDatum {
    pub fn d(&self) -> u32 {
        self.canonical.d
    }

    pub fn canonical(&self) -> &BranchingSequence {
        &self.canonical
    }

    pub fn total(&self) -> u32 {
        self.canonical.total()
    }
}

impl fmt::Display for BranchingDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical)
    }
}

/// The branch divisor `sum i D_i` has degree divisible by `d`.
pub fn check_star(seq: &BranchingSequence) -> bool {
    let d = seq.d as u64;
    let total = seq
        .counts
        .iter()
        .enumerate()
        .map(|(idx, &k)| (idx as u64 + 1) * k as u64 % d)
        .sum::<u64>();
    total % d == 0
}

/// `2d + 2(g-1) - sum_i k_i (d - gcd(i, d))`, which equals `2d * h`.
fn scaled_quotient_genus(g: u32, seq: &BranchingSequence) -> i64 {
    let d = seq.d as i64;
    let branch: i64 = seq
        .counts
        .iter()
        .enumerate()
        .map(|(idx, &k)| k as i64 * (d - gcd(idx as u64 + 1, d as u64) as i64))
        .sum();
    2 * d + 2 * (g as i64 - 1) - branch
}

/// Genus of the quotient curve from the Hurwitz formula, or `None` when it is
/// not a non-negative integer.
pub fn quotient_genus(g: u32, seq: &BranchingSequence) -> Option<u32> {
    let scaled = scaled_quotient_genus(g, seq);
    let denom = 2 * seq.d as i64;
    if scaled < 0 || scaled % denom != 0 {
        return None;
    }
    u32::try_from(scaled / denom).ok()
}

/// Genus of the covering curve given the quotient genus, or `None` when the
/// Hurwitz formula does not give an integer `>= 0`.
pub fn covering_genus(h: u32, seq: &BranchingSequence) -> Option<u32> {
    // 2(g - 1) = 2d(h - 1) + sum_i k_i (d - gcd(i, d))
    let d = seq.d as i64;
    let branch: i64 = seq
        .counts
        .iter()
        .enumerate()
        .map(|(idx, &k)| k as i64 * (d - gcd(idx as u64 + 1, d as u64) as i64))
        .sum();
    let twice = 2 * d * (h as i64 - 1) + branch;
    if twice % 2 != 0 || twice / 2 + 1 < 0 {
        return None;
    }
    u32::try_from(twice / 2 + 1).ok()
}

/// Admissibility for genus `g`; returns the quotient genus on success.
///
/// Besides the divisibility condition and integrality of `h`, a cover whose local
/// monodromies generate a proper subgroup (`m = gcd(d, i : k_i != 0) > 1`)
/// needs an unramified cyclic cover of order `m` of the quotient, which does
/// not exist when `h = 0`.
pub fn is_admissible(g: u32, seq: &BranchingSequence) -> Option<u32> {
    if g < 2 || !check_star(seq) {
        return None;
    }
    let h = quotient_genus(g, seq)?;
    if seq.inertia_gcd() != 1 && h == 0 {
        return None;
    }
    Some(h)
}

/// Canonical representative of the unit orbit of `seq`.
///
/// Sequences are ordered lexicographically starting from the highest index
/// `k_{d-1}`, which is the same as ordering the monodromy multisets sorted in
/// decreasing order. The canonical datum is the least element of the orbit.
pub fn canonical_datum(seq: &BranchingSequence) -> BranchingDatum {
    let mut best = seq.clone();
    for r in units(seq.d).into_iter().skip(1) {
        let candidate = seq.act(r);
        if candidate.order_key().lt(best.order_key()) {
            best = candidate;
        }
    }
    BranchingDatum { canonical: best }
}

/// All admissible branching data for `(g, d)`, with their quotient genera.
///
/// Each branch point contributes at least `d/2` to the scaled Hurwitz budget
/// `2d + 2(g-1)`, which bounds the search. Output is sorted by total branch
/// count, then by sequence.
pub fn enumerate_admissible(g: u32, d: u32) -> Result<Vec<(BranchingDatum, u32)>> {
    if g < 2 {
        return Err(Error::GenusTooSmall { got: g, min: 2 });
    }
    if d < 2 {
        return Err(Error::OrderTooSmall(d));
    }
    let budget = 2 * d as i64 + 2 * (g as i64 - 1);
    let costs: Vec<i64> = (1..d)
        .map(|i| d as i64 - gcd(i as u64, d as u64) as i64)
        .collect();
    debug_assert!(costs.iter().all(|&c| 2 * c >= d as i64));
    // suffix minima let the search stop as soon as nothing more fits
    let mut min_from = vec![i64::MAX; costs.len() + 1];
    for idx in (0..costs.len()).rev() {
        min_from[idx] = min_from[idx + 1].min(costs[idx]);
    }

    let mut out = Vec::new();
    let mut counts = vec![0u32; (d - 1) as usize];
    search(g, d, 0, budget, &costs, &min_from, &mut counts, &mut out);
    out.sort_by(|(a, _), (b, _)| {
        (a.total(), a.canonical().counts()).cmp(&(b.total(), b.canonical().counts()))
    });
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: u32,
    d: u32,
    idx: usize,
    remaining: i64,
    costs: &[i64],
    min_from: &[i64],
    counts: &mut Vec<u32>,
    out: &mut Vec<(BranchingDatum, u32)>,
) {
    if idx == costs.len() || remaining < min_from[idx] {
        if remaining % (2 * d as i64) != 0 {
            return;
        }
        let seq = BranchingSequence {
            d,
            counts: counts.clone(),
        };
        if let Some(h) = is_admissible(g, &seq) {
            let datum = canonical_datum(&seq);
            if datum.canonical == seq {
                debug_assert_eq!(h as i64, remaining / (2 * d as i64));
                out.push((datum, h));
            }
        }
        return;
    }
    let cost = costs[idx];
    let max = remaining / cost;
    for n in 0..=max {
        counts[idx] = n as u32;
        search(
            g,
            d,
            idx + 1,
            remaining - n * cost,
            costs,
            min_from,
            counts,
            out,
        );
    }
    counts[idx] = 0;
}

/// Numerical type `(g, d, datum)` of a smooth locus, with derived invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmoothLocus {
    pub g: u32,
    pub d: u32,
    pub datum: BranchingDatum,
    pub h: u32,
    pub k: u32,
    pub dim: i64,
    pub codim: i64,
}

impl SmoothLocus {
    /// The genus-3 hyperelliptic divisor, whose generic involution is a
    /// pseudoreflection.
    pub fn is_pseudoreflection_locus(&self) -> bool {
        (self.g, self.d, self.h, self.k) == (3, 2, 0, 8)
    }

    pub fn label(&self) -> String {
        format!("M_{{{};{},{}}}", self.g, self.d, self.datum)
    }
}

impl fmt::Display for SmoothLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Codimension `3(p-1)(h-1) + k(3(p-1)/2 - 1)` for prime order `p`.
pub fn prime_codimension(p: u32, h: u32, k: u32) -> i64 {
    let (p, h, k) = (p as i64, h as i64, k as i64);
    let twice = 6 * (p - 1) * (h - 1) + k * (3 * (p - 1) - 2);
    debug_assert_eq!(twice % 2, 0);
    twice / 2
}

/// The locus of curves of genus `g` with an automorphism of the given type.
pub fn locus(g: u32, datum: &BranchingDatum) -> Result<SmoothLocus> {
    let seq = datum.canonical();
    let d = seq.d;
    let h = is_admissible(g, seq).ok_or_else(|| Error::Inadmissible {
        g,
        d,
        seq: seq.counts.clone(),
        reason: inadmissibility_reason(g, seq),
    })?;
    let k = seq.total();
    let dim = 3 * (h as i64 - 1) + k as i64;
    let codim = 3 * (g as i64 - 1) - dim;
    if is_prime(d) {
        let closed = prime_codimension(d, h, k);
        if closed != codim {
            return Err(Error::FormulaMismatch {
                g,
                d,
                difference: codim,
                closed,
            });
        }
    }
    Ok(SmoothLocus {
        g,
        d,
        datum: datum.clone(),
        h,
        k,
        dim,
        codim,
    })
}

fn inadmissibility_reason(g: u32, seq: &BranchingSequence) -> String {
    if g < 2 {
        return "genus below 2".into();
    }
    if !check_star(seq) {
        return "sum of i*k_i is not divisible by d".into();
    }
    match quotient_genus(g, seq) {
        None => "quotient genus is not a non-negative integer".into(),
        Some(_) => "local monodromies generate a proper subgroup over a rational quotient".into(),
    }
}

/// Quotient types for which the generic member might carry a larger cyclic
/// automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalCyclicException {
    None,
    /// `h = 2, k = 0`
    Case1,
    /// `h = 1, k = 2`
    Case2,
    /// `h = 0, k = 3 or 4`
    Case3,
}

pub fn maximal_cyclic_exception(h: u32, k: u32) -> MaximalCyclicException {
    match (h, k) {
        (2, 0) => MaximalCyclicException::Case1,
        (1, 2) => MaximalCyclicException::Case2,
        (0, 3) | (0, 4) => MaximalCyclicException::Case3,
        _ => MaximalCyclicException::None,
    }
}
