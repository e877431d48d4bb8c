//! Finitely generated abelian groups `Z^r + Z/t_1 + ... + Z/t_s` standing in
//! for Picard groups, and their elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct PicardModel {
    free_rank: usize,
    torsion_factors: Vec<u64>,
}

#[derive(Deserialize)]
struct RawModel {
    free_rank: usize,
    #[serde(default)]
    torsion_factors: Vec<u64>,
}

impl TryFrom<RawModel> for PicardModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        PicardModel::new(raw.free_rank, raw.torsion_factors)
    }
}

/// A class in a [`PicardModel`]; torsion coordinates are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub free: Vec<i64>,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl PicardModel {
    /// Torsion factors must satisfy `t_1 | t_2 | ...` with every `t_i >= 2`.
    pub fn new(free_rank: usize, torsion_factors: Vec<u64>) -> Result<Self> {
        if let Some(t) = torsion_factors.iter().find(|&&t| t < 2) {
            return Err(Error::Picard(format!("torsion factor {t} is below 2")));
        }
        for w in torsion_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Picard(format!(
                    "torsion factors {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            free_rank,
            torsion_factors,
        })
    }

    /// `Z`, the Picard group of the projective line up to degree.
    pub fn integers() -> Self {
        Self {
            free_rank: 1,
            torsion_factors: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_factors(&self) -> &[u64] {
        &self.torsion_factors
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_factors.len()],
        }
    }

    /// Build a class, reducing the torsion coordinates.
    pub fn class(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<DivisorClass> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_factors.len() {
            return Err(Error::Picard(format!(
                "class has shape ({}, {}), model has ({}, {})",
                free.len(),
                torsion.len(),
                self.free_rank,
                self.torsion_factors.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion_factors)
            .map(|(&x, &t)| x.rem_euclid(t as i64) as u64)
            .collect();
        Ok(DivisorClass { free, torsion })
    }

    /// Check that `c` has the right shape and reduced torsion coordinates.
    pub fn check(&self, c: &DivisorClass) -> Result<()> {
        if c.free.len() != self.free_rank || c.torsion.len() != self.torsion_factors.len() {
            return Err(Error::Picard(format!(
                "class {c} does not belong to a model of shape ({}, {})",
                self.free_rank,
                self.torsion_factors.len()
            )));
        }
        if c.torsion
            .iter()
            .zip(&self.torsion_factors)
            .any(|(&x, &t)| x >= t)
        {
            return Err(Error::Picard(format!("class {c} has unreduced torsion")));
        }
        Ok(())
    }

    pub fn add(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        self.combine(1, a, 1, b)
    }

    pub fn sub(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        self.combine(1, a, -1, b)
    }

    pub fn scale(&self, n: i64, a: &DivisorClass) -> DivisorClass {
        self.combine(n, a, 0, &self.zero())
    }

    /// `x * a + y * b`.
    pub fn combine(&self, x: i64, a: &DivisorClass, y: i64, b: &DivisorClass) -> DivisorClass {
        let free = a
            .free
            .iter()
            .zip(&b.free)
            .map(|(&u, &v)| x * u + y * v)
            .collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion_factors)
            .map(|((&u, &v), &t)| {
                let t = t as i128;
                ((x as i128 * u as i128 + y as i128 * v as i128).rem_euclid(t)) as u64
            })
            .collect();
        DivisorClass { free, torsion }
    }

    pub fn order(&self, a: &DivisorClass) -> ElementOrder {
        if a.free.iter().any(|&x| x != 0) {
            return ElementOrder::Infinite;
        }
        let n = a
            .torsion
            .iter()
            .zip(&self.torsion_factors)
            .fold(1, |acc, (&x, &t)| lcm(acc, t / gcd(t, x)));
        ElementOrder::Finite(n)
    }
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "({}; {})",
            join(self.free.iter().map(ToString::to_string).collect()),
            join(self.torsion.iter().map(ToString::to_string).collect())
        )
    }
}
