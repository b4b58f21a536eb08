use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SpaceSpec;
use crate::fp;
use crate::{Error, Result};

/// A point of `P^{a_1} x ... x P^{a_n}` over `F_p`, one coordinate vector per
/// block. Coordinates are stored as given; [`ProjPoint::normalized`] gives
/// the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "PointRepr", try_from = "PointRepr")]
pub struct ProjPoint {
    modulus: u64,
    coords: Vec<u64>,
    block_lens: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    modulus: u64,
    blocks: Vec<Vec<u64>>,
}

impl From<ProjPoint> for PointRepr {
    fn from(p: ProjPoint) -> Self {
        PointRepr {
            modulus: p.modulus,
            blocks: p.blocks().map(|b| b.to_vec()).collect(),
        }
    }
}

impl TryFrom<PointRepr> for ProjPoint {
    type Error = Error;
    fn try_from(r: PointRepr) -> Result<Self> {
        let dims = r.blocks.iter().map(|b| b.len().saturating_sub(1)).collect();
        let space = SpaceSpec::new(dims)?;
        ProjPoint::new(&space, r.modulus, r.blocks)
    }
}

impl ProjPoint {
    pub fn new(space: &SpaceSpec, modulus: u64, blocks: Vec<Vec<u64>>) -> Result<Self> {
        if !fp::is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        if blocks.len() != space.n_factors() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {} factors",
                blocks.len(),
                space.n_factors()
            )));
        }
        let mut coords = Vec::with_capacity(space.n_vars());
        let mut block_lens = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.into_iter().enumerate() {
            if b.len() != space.factor_dims()[i] + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "block {i} has {} coordinates, expected {}",
                    b.len(),
                    space.factor_dims()[i] + 1
                )));
            }
            if b.iter().all(|&x| x % modulus == 0) {
                return Err(Error::DimensionMismatch(format!("block {i} is the zero vector")));
            }
            block_lens.push(b.len());
            coords.extend(b.into_iter().map(|x| x % modulus));
        }
        Ok(ProjPoint {
            modulus,
            coords,
            block_lens,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// All coordinates, blocks concatenated.
    pub fn coordinates(&self) -> &[u64] {
        &self.coords
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[u64]> {
        let mut start = 0;
        self.block_lens.iter().map(move |&l| {
            let b = &self.coords[start..start + l];
            start += l;
            b
        })
    }

    /// Scale every block so its first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        let p = self.modulus;
        let mut coords = Vec::with_capacity(self.coords.len());
        for b in self.blocks() {
            let lead = *b.iter().find(|&&x| x != 0).expect("blocks are nonzero");
            let inv = fp::inv_mod(lead, p).unwrap();
            coords.extend(b.iter().map(|&x| fp::mul_mod(x, inv, p)));
        }
        ProjPoint {
            modulus: p,
            coords,
            block_lens: self.block_lens.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.blocks().all(|b| b.iter().find(|&&x| x != 0) == Some(&1))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(":"))?;
        }
        write!(f, " mod {}", self.modulus)
    }
}

/// `|P^a(F_q)| = (q^{a+1} - 1) / (q - 1)`.
pub fn projective_count(a: usize, q: u64) -> u128 {
    (0..=a as u32).map(|i| (q as u128).pow(i)).sum()
}

/// `prod |P^{a_i}(F_q)|`.
pub fn point_count(space: &SpaceSpec, q: u64) -> u128 {
    space
        .factor_dims()
        .iter()
        .map(|&a| projective_count(a, q))
        .product()
}

/// Indexed view of all normalized `F_q`-points, so sweeps can be split into
/// disjoint index ranges.
#[derive(Clone, Debug)]
pub struct PointGrid {
    space: SpaceSpec,
    q: u64,
    block_counts: Vec<u128>,
    len: u128,
}

impl PointGrid {
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// The `idx`-th point; the first block is the most significant digit.
    pub fn point(&self, mut idx: u128) -> ProjPoint {
        assert!(idx < self.len, "point index out of range");
        let n = self.block_counts.len();
        let mut digits = vec![0u128; n];
        for i in (0..n).rev() {
            digits[i] = idx % self.block_counts[i];
            idx /= self.block_counts[i];
        }
        let mut coords = Vec::with_capacity(self.space.n_vars());
        let mut block_lens = Vec::with_capacity(n);
        for (i, &a) in self.space.factor_dims().iter().enumerate() {
            coords.extend(block_point(a, self.q, digits[i]));
            block_lens.push(a + 1);
        }
        ProjPoint {
            modulus: self.q,
            coords,
            block_lens,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        (0..self.len).map(move |i| self.point(i))
    }
}

/// Normalized point of `P^a(F_q)` with index `idx`: points whose leading 1
/// sits at position `j` come before those with leading 1 at `j + 1`.
fn block_point(a: usize, q: u64, mut idx: u128) -> Vec<u64> {
    let mut v = vec![0u64; a + 1];
    for lead in 0..=a {
        let free = a - lead;
        let count = (q as u128).pow(free as u32);
        if idx < count {
            v[lead] = 1;
            for slot in (lead + 1..=a).rev() {
                v[slot] = (idx % q as u128) as u64;
                idx /= q as u128;
            }
            return v;
        }
        idx -= count;
    }
    unreachable!("block index out of range")
}

/// All normalized points of `space` over `F_q`, refusing grids above `cap`.
pub fn enumerate_points(space: &SpaceSpec, q: u64, cap: u128) -> Result<PointGrid> {
    if !fp::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let len = point_count(space, q);
    if len > cap {
        return Err(Error::CapExceeded { count: len, cap });
    }
    Ok(PointGrid {
        space: space.clone(),
        q,
        block_counts: space
            .factor_dims()
            .iter()
            .map(|&a| projective_count(a, q))
            .collect(),
        len,
    })
}

/// Uniform random point over `F_p`, normalized.
pub fn sample_point<R: Rng + ?Sized>(space: &SpaceSpec, p: u64, rng: &mut R) -> ProjPoint {
    let mut coords = Vec::with_capacity(space.n_vars());
    let mut block_lens = Vec::with_capacity(space.n_factors());
    for &a in space.factor_dims() {
        loop {
            let b: Vec<u64> = (0..=a).map(|_| rng.random_range(0..p)).collect();
            if b.iter().any(|&x| x != 0) {
                coords.extend(b);
                break;
            }
        }
        block_lens.push(a + 1);
    }
    ProjPoint {
        modulus: p,
        coords,
        block_lens,
    }
    .normalized()
}
