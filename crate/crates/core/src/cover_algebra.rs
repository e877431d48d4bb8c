//! Bookkeeping for the algebra of a normal cyclic cover `w^d = f` over a
//! factorial base.
//!
//! After normalization the cover is `z^d = prod_i delta_i^i` with reduced,
//! pairwise coprime `delta_i` cutting out divisors `D_i`. The direct image of
//! the structure sheaf splits into eigensheaves `O(-L_chi)` indexed by the
//! characters `chi` of `Z/d`, and multiplication `L_chi x L_xi -> L_{chi+xi}`
//! is given by the section `prod_i delta_i^{eps_i}` where `eps_i` is the carry
//! produced when adding the residues `chi i` and `xi i` mod `d`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::picard::{DivisorClass, ElementOrder, PicardModel};

/// A rational function written by its prime factorization: symbol to
/// exponent, positive for numerator primes and negative for denominator
/// primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub d: u32,
    pub factors: BTreeMap<String, i64>,
}

impl RootDatum {
    pub fn new(d: u32, factors: BTreeMap<String, i64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::OrderTooSmall(d));
        }
        if let Some((s, _)) = factors.iter().find(|(_, &e)| e == 0) {
            return Err(Error::Assignment(format!("factor {s} has exponent 0")));
        }
        Ok(Self { d, factors })
    }
}

/// Group the prime factors of `w^d = f` by the residue of their exponent.
///
/// Replacing `w` by `w * prod sigma^{-a} tau^{b}` shifts every exponent by a
/// multiple of `d`, so only `e mod d` matters; factors with `e = 0 mod d`
/// disappear. The symbols at residue `i` make up `D_i`.
pub fn normalize_root(rd: &RootDatum) -> BTreeMap<u32, BTreeSet<String>> {
    let d = rd.d as i64;
    let mut out: BTreeMap<u32, BTreeSet<String>> = BTreeMap::new();
    for (symbol, &e) in &rd.factors {
        let r = e.rem_euclid(d) as u32;
        if r != 0 {
            out.entry(r).or_default().insert(symbol.clone());
        }
    }
    out
}

/// `1` when adding the reduced residues `a` and `b` overflows `d`.
pub fn carry(d: u32, a: u32, b: u32) -> u32 {
    debug_assert!(a < d && b < d);
    u32::from(a + b >= d)
}

/// Exponents `eps_i` of the multiplication section for characters `chi, xi`,
/// indexed by `i = 1..d`.
pub fn mult_section_exponents(d: u32, chi: u32, xi: u32) -> Vec<u32> {
    (1..d).map(|i| carry(d, chi * i % d, xi * i % d)).collect()
}

/// Branch divisors `D_1, ..., D_{d-1}` (as sets of prime divisors with their
/// classes) together with a class `L` satisfying `d L = sum_i i D_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAssignment")]
pub struct BranchAssignment {
    d: u32,
    picard: PicardModel,
    divisors: BTreeMap<u32, BTreeMap<String, DivisorClass>>,
    l: DivisorClass,
}

#[derive(Deserialize)]
struct RawAssignment {
    d: u32,
    picard: PicardModel,
    #[serde(default)]
    divisors: BTreeMap<u32, BTreeMap<String, DivisorClass>>,
    l: DivisorClass,
}

impl TryFrom<RawAssignment> for BranchAssignment {
    type Error = Error;

    fn try_from(raw: RawAssignment) -> Result<Self> {
        BranchAssignment::new(raw.d, raw.picard, raw.divisors, raw.l)
    }
}

impl BranchAssignment {
    pub fn new(
        d: u32,
        picard: PicardModel,
        divisors: BTreeMap<u32, BTreeMap<String, DivisorClass>>,
        l: DivisorClass,
    ) -> Result<Self> {
        if d < 2 {
            return Err(Error::OrderTooSmall(d));
        }
        let mut seen = BTreeSet::new();
        for (&i, prime_divisors) in &divisors {
            if i == 0 || i >= d {
                return Err(Error::Assignment(format!("residue {i} is outside 1..{d}")));
            }
            for (symbol, class) in prime_divisors {
                if !seen.insert(symbol.as_str()) {
                    return Err(Error::Assignment(format!(
                        "prime divisor {symbol} appears in two branch divisors"
                    )));
                }
                picard.check(class)?;
            }
        }
        picard.check(&l)?;
        let divisors: BTreeMap<_, _> = divisors
            .into_iter()
            .filter(|(_, s)| !s.is_empty())
            .collect();
        let ba = Self {
            d,
            picard,
            divisors,
            l,
        };
        let lhs = ba.picard.scale(d as i64, &ba.l);
        let rhs = ba.weighted_branch(|i| i as i64);
        if lhs != rhs {
            return Err(Error::Assignment(format!(
                "d L = {lhs} differs from sum i D_i = {rhs}"
            )));
        }
        Ok(ba)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn picard(&self) -> &PicardModel {
        &self.picard
    }

    pub fn l(&self) -> &DivisorClass {
        &self.l
    }

    pub fn divisors(&self) -> &BTreeMap<u32, BTreeMap<String, DivisorClass>> {
        &self.divisors
    }

    /// Class of `D_i` (zero when empty).
    pub fn divisor_class(&self, i: u32) -> DivisorClass {
        match self.divisors.get(&i) {
            None => self.picard.zero(),
            Some(parts) => parts
                .values()
                .fold(self.picard.zero(), |acc, c| self.picard.add(&acc, c)),
        }
    }

    /// Residues `i` with `D_i` nonempty.
    pub fn support(&self) -> Vec<u32> {
        self.divisors.keys().copied().collect()
    }

    /// `sum_i w(i) [D_i]`.
    pub fn weighted_branch(&self, w: impl Fn(u32) -> i64) -> DivisorClass {
        (1..self.d).fold(self.picard.zero(), |acc, i| {
            self.picard.combine(1, &acc, w(i), &self.divisor_class(i))
        })
    }
}

/// `L_chi`, from `L_0 = 0` and `L_{chi+1} = L_chi + L - sum_i eps_i(chi, 1) D_i`.
pub fn l_chi(ba: &BranchAssignment, chi: u32) -> Result<DivisorClass> {
    let d = ba.d;
    if chi >= d {
        return Err(Error::CharacterOutOfRange { chi, d });
    }
    let pic = &ba.picard;
    let mut current = pic.zero();
    for c in 0..chi {
        let carries = mult_section_exponents(d, c, 1);
        let correction = ba.weighted_branch(|i| carries[(i - 1) as usize] as i64);
        current = pic.sub(&pic.add(&current, &ba.l), &correction);
    }
    Ok(current)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// `gcd(d, i : D_i nonempty)`, the order of the unramified part.
    pub m: u32,
    /// Order of `L' = (d/m) L - sum (i/m) D_i`; absent when `m = 1`.
    pub order: Option<ElementOrder>,
}

/// The cover is irreducible iff `m = 1` or the class `L'` has order exactly `m`.
pub fn is_irreducible(ba: &BranchAssignment) -> Irreducibility {
    let d = ba.d;
    let m = ba
        .support()
        .into_iter()
        .fold(d as u64, |acc, i| gcd(acc, i as u64)) as u32;
    if m == 1 {
        return Irreducibility {
            irreducible: true,
            m,
            order: None,
        };
    }
    let pic = &ba.picard;
    let scaled_l = pic.scale((d / m) as i64, &ba.l);
    let l_prime = pic.sub(&scaled_l, &ba.weighted_branch(|i| (i / m) as i64));
    let order = pic.order(&l_prime);
    Irreducibility {
        irreducible: order == ElementOrder::Finite(m as u64),
        m,
        order: Some(order),
    }
}

/// Number of connected components of a `Z/d` cover from monodromy data.
///
/// `I` is the subgroup generated by the local monodromies. The unramified part
/// is a cyclic subgroup of `(Z/d)/I` of order `etale_index`; the total
/// monodromy group is its preimage `H = {x : etale_index * x in I}`, and the
/// cover has `d / |H|` components.
pub fn component_count_oracle(d: u32, monodromy_images: &[u32], etale_index: u32) -> u32 {
    let mut inertia = vec![false; d as usize];
    inertia[0] = true;
    let mut frontier = vec![0u32];
    while let Some(x) = frontier.pop() {
        for &g in monodromy_images {
            let y = (x + g % d) % d;
            if !inertia[y as usize] {
                inertia[y as usize] = true;
                frontier.push(y);
            }
        }
    }
    let h = (0..d)
        .filter(|&x| inertia[((etale_index as u64 * x as u64) % d as u64) as usize])
        .count() as u32;
    d / h
}
