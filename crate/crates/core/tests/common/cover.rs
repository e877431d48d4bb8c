//! Cover-algebra checks shared by the property tests and the acceptance runner.

use std::collections::BTreeMap;

use cyclic_covers::cover_algebra::*;
use cyclic_covers::picard::{DivisorClass, ElementOrder, PicardModel};
use proptest::prelude::*;

/// Carry cocycle `eps(chi, xi) + eps(chi + xi, psi) = eps(xi, psi) + eps(chi, xi + psi)`
/// and the overflow reading of each carry, for every residue.
pub fn carries_hold(d_max: u32) -> Result<(), String> {
    for d in 2..=d_max {
        for chi in 0..d {
            for xi in 0..d {
                let eps = mult_section_exponents(d, chi, xi);
                for i in 1..d {
                    let (a, b) = (chi * i % d, xi * i % d);
                    let e = eps[(i - 1) as usize];
                    if a + b != (a + b) % d + d * e || e != carry(d, a, b) {
                        return Err(format!("carry d={d} ({chi},{xi}) i={i}"));
                    }
                }
                for psi in 0..d {
                    let b = mult_section_exponents(d, (chi + xi) % d, psi);
                    let c = mult_section_exponents(d, xi, psi);
                    let e = mult_section_exponents(d, chi, (xi + psi) % d);
                    for i in 0..(d - 1) as usize {
                        if eps[i] + b[i] != c[i] + e[i] {
                            return Err(format!("cocycle d={d} ({chi},{xi},{psi}) i={}", i + 1));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `d L_chi = sum ((chi i) mod d) D_i` for every `chi`.
pub fn eigensheaf_identity(ba: &BranchAssignment) -> Result<(), String> {
    let d = ba.d();
    let pic = ba.picard();
    for chi in 0..d {
        let l = l_chi(ba, chi).map_err(|e| e.to_string())?;
        let lhs = pic.scale(d as i64, &l);
        let rhs = ba.weighted_branch(|i| ((chi * i) % d) as i64);
        if lhs != rhs {
            return Err(format!("chi={chi}: {lhs:?} != {rhs:?}"));
        }
    }
    Ok(())
}

/// One prime divisor per residue in `support`; the first residue absorbs the
/// remainder so that `d L = sum i D_i`.
fn build(
    d: u32,
    pic: &PicardModel,
    support: &[u32],
    classes: &[DivisorClass],
    l: DivisorClass,
) -> Option<BranchAssignment> {
    let first = support[0];
    let mut divisors: BTreeMap<u32, BTreeMap<String, DivisorClass>> = BTreeMap::new();
    let mut rest = pic.scale(d as i64, &l);
    for (n, (&i, c)) in support.iter().zip(classes).enumerate().skip(1) {
        divisors
            .entry(i)
            .or_default()
            .insert(format!("p{n}"), c.clone());
        rest = pic.sub(&rest, &pic.scale(i as i64, c));
    }
    let x = solve(pic, first, &rest)?;
    divisors.entry(first).or_default().insert("p0".into(), x);
    BranchAssignment::new(d, pic.clone(), divisors, l).ok()
}

/// Some `X` with `a X = target`, by search over torsion coordinates.
fn solve(pic: &PicardModel, a: u32, target: &DivisorClass) -> Option<DivisorClass> {
    if target.free.iter().any(|&x| x % a as i64 != 0) {
        return None;
    }
    let free: Vec<i64> = target.free.iter().map(|&x| x / a as i64).collect();
    let factors = pic.torsion_factors().to_vec();
    let mut torsion = vec![0i64; factors.len()];
    for (idx, &n) in factors.iter().enumerate() {
        let n = n as i64;
        torsion[idx] =
            (0..n).find(|&t| (t * a as i64 - target.torsion[idx] as i64).rem_euclid(n) == 0)?;
    }
    pic.class(free, torsion).ok()
}

fn model() -> impl Strategy<Value = PicardModel> {
    prop_oneof![
        Just(PicardModel::integers()),
        Just(PicardModel::new(2, vec![]).unwrap()),
        Just(PicardModel::new(1, vec![2]).unwrap()),
        Just(PicardModel::new(1, vec![2, 6]).unwrap()),
        Just(PicardModel::new(0, vec![12]).unwrap()),
    ]
}

type Seed = (u32, i64, i64, i64, i64);

/// Random branch assignments of order `2..=9` over a few Picard models;
/// `None` when the sampled classes admit no solution for the first residue.
pub fn assignments() -> impl Strategy<Value = Option<BranchAssignment>> {
    (
        2u32..=9,
        model(),
        proptest::collection::vec((1u32..9, -6i64..=6, -6i64..=6, 0i64..12, 0i64..12), 1..5),
        (1u32..2, -6i64..=6, -6i64..=6, 0i64..12, 0i64..12),
    )
        .prop_map(
            |(d, pic, seeds, lseed): (u32, PicardModel, Vec<Seed>, Seed)| {
                let mk = |s: &Seed| {
                    let free = [s.1, s.2][..pic.free_rank()].to_vec();
                    let torsion = [s.3, s.4][..pic.torsion_factors().len()].to_vec();
                    pic.class(free, torsion).unwrap()
                };
                let mut seen = std::collections::BTreeSet::new();
                let support: Vec<u32> = seeds
                    .iter()
                    .map(|s| s.0 % (d - 1) + 1)
                    .filter(|i| seen.insert(*i))
                    .collect();
                let classes: Vec<DivisorClass> = seeds.iter().map(mk).collect();
                let l = mk(&lseed);
                build(d, &pic, &support, &classes, l.clone()).or_else(|| {
                    // residue 1 always divides
                    let mut s = vec![1];
                    s.extend(support.iter().copied().filter(|&i| i != 1));
                    build(d, &pic, &s, &classes, l)
                })
            },
        )
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every assignment over `Z/n` (n in 2, 3, 4, 6) with `d <= d_max` and at most
/// three nonempty residues: the irreducibility verdict, `m` and the order of
/// `L'` against the component count. Returns the number of instances.
pub fn irreducibility_exhaustive(d_max: u32) -> Result<usize, String> {
    let mut checked = 0;
    for d in 2..=d_max {
        for n in [2u64, 3, 4, 6] {
            let pic = PicardModel::new(0, vec![n]).unwrap();
            for mask in 1u32..(1 << (d - 1)) {
                let support: Vec<u32> = (1..d).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                if support.len() > 3 {
                    continue;
                }
                let slots = support.len() + 1;
                for code in 0..(n as usize).pow(slots as u32) {
                    let digits: Vec<i64> = (0..slots)
                        .map(|s| (code / (n as usize).pow(s as u32) % n as usize) as i64)
                        .collect();
                    let l = pic.class(vec![], vec![digits[0]]).unwrap();
                    let mut divisors: BTreeMap<u32, BTreeMap<String, DivisorClass>> =
                        BTreeMap::new();
                    for (s, &i) in support.iter().enumerate() {
                        let c = pic.class(vec![], vec![digits[s + 1]]).unwrap();
                        divisors.entry(i).or_default().insert(format!("x{i}"), c);
                    }
                    let Ok(ba) = BranchAssignment::new(d, pic.clone(), divisors, l) else {
                        continue;
                    };
                    let w = is_irreducible(&ba);
                    let m = support.iter().fold(d, |a, &i| gcd(a, i));
                    // L' = (d/m) L - sum (i/m) D_i
                    let t: i64 = (d / m) as i64 * digits[0]
                        - support
                            .iter()
                            .enumerate()
                            .map(|(s, &i)| (i / m) as i64 * digits[s + 1])
                            .sum::<i64>();
                    let e =
                        super::brute_order(&[], &[t.rem_euclid(n as i64) as u64], &[n]).unwrap();
                    let count = component_count_oracle(d, &support, e as u32);
                    let here = format!("d={d} n={n} support={support:?} classes={digits:?}");
                    if w.m != m || m as u64 % e != 0 || count as u64 != m as u64 / e {
                        return Err(format!("{here}: m={} e={e} count={count}", w.m));
                    }
                    if w.irreducible != (count == 1) {
                        return Err(format!(
                            "{here}: verdict {} but {count} components",
                            w.irreducible
                        ));
                    }
                    if m > 1 && w.order != Some(ElementOrder::Finite(e)) {
                        return Err(format!("{here}: order {:?}, expected {e}", w.order));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
