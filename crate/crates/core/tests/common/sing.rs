//! The interior classification recomputed from the case analysis directly,
//! on the brute-force list of admissible data.

use std::collections::BTreeMap;

use cyclic_covers::sing_smooth::*;

fn monodromies(counts: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    for (idx, &k) in counts.iter().enumerate() {
        out.extend(std::iter::repeat_n(idx as u32 + 1, k as usize));
    }
    out
}

fn min_dim(g: u32, q: u32) -> Option<i64> {
    super::brute_admissible(g, q)
        .iter()
        .filter(|(key, &h)| !(g == 3 && q == 2 && h == 0 && key[0] == 8))
        .map(|(key, &h)| 3 * (h as i64 - 1) + key.iter().sum::<u32>() as i64)
        .min()
}

/// `(verdict, case)` for one locus.
pub fn oracle(g: u32, p: u32, counts: &[u32], h: u32) -> (Verdict, Option<CaseTag>) {
    let k: u32 = counts.iter().sum();
    let dim = 3 * (h as i64 - 1) + k as i64;
    if (g, p, h, k) == (3, 2, 0, 8) {
        return (Verdict::ExcludedPseudoreflection, None);
    }
    let m = monodromies(counts);
    let neg = |x: u32| (p - x) % p;
    // (tag, container dimension or lower bound, container is the excluded divisor)
    let hit: Option<(CaseTag, Option<i64>, bool)> = match (h, k) {
        (2, 0) if p == 2 => Some((CaseTag::Case1, Some(4), false)),
        (2, 0) => {
            let h2 = (p as i64 - 1) / 2;
            Some((CaseTag::Case1, Some(3 * (h2 - 1) + 6), false))
        }
        (1, 2) if p > 2 => {
            let h2 = (p as i64 - 1) / 2;
            Some((CaseTag::Case2, Some(3 * (h2 - 1) + 4), false))
        }
        (0, 4) => {
            let mut minus: Vec<u32> = m.iter().map(|&x| neg(x)).collect();
            minus.sort();
            (minus == m).then(|| (CaseTag::Case3, min_dim(g, 2), false))
        }
        (0, 3) if p >= 5 => {
            let repeated = m[0] == m[1] || m[1] == m[2];
            let cube_roots: Vec<u32> = (2..p).filter(|&x| x * x % p * x % p == 1).collect();
            let z3 = p % 3 == 1
                && (1..p).any(|u| {
                    cube_roots.iter().any(|&w| {
                        let mut t = vec![u, u * w % p, u * w % p * w % p];
                        t.sort();
                        t == m
                    })
                });
            if repeated {
                // hyperelliptic involution, p + 1 fixed points, quotient genus 0
                let excluded = g == 3;
                Some((CaseTag::Case4Z2, Some(p as i64 - 2), excluded))
            } else if z3 {
                Some((CaseTag::Case4Z3, min_dim(g, 3), false))
            } else {
                None
            }
        }
        _ => None,
    };
    match hit {
        None => (Verdict::Component, None),
        Some((tag, Some(c), false)) if c > dim => (Verdict::Redundant, Some(tag)),
        Some((tag, _, _)) => (Verdict::ManualReview, Some(tag)),
    }
}

pub fn library(g: u32) -> BTreeMap<(u32, Vec<u32>), (Verdict, Option<CaseTag>)> {
    decompose_sing(g)
        .unwrap()
        .records()
        .map(|r| {
            let d = r.locus.d;
            (
                (d, super::orbit_key(d, r.locus.datum.canonical().counts())),
                (r.verdict, r.case_tag),
            )
        })
        .collect()
}

pub fn recomputed(g: u32) -> BTreeMap<(u32, Vec<u32>), (Verdict, Option<CaseTag>)> {
    let mut out = BTreeMap::new();
    for p in super::primes(2, 2 * g + 1) {
        for (key, h) in super::brute_admissible(g, p) {
            out.insert((p, key.clone()), oracle(g, p, &key, h));
        }
    }
    out
}
