use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{binomial, MultiDegree, SpaceSpec};

/// Exponent vector over all homogeneous coordinates of a [`SpaceSpec`],
/// blocks concatenated in factor order.
///
/// The derived `Ord` is lexicographic on the exponent vector, so a larger
/// exponent on an earlier variable makes a larger monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn multidegree(&self, space: &SpaceSpec) -> MultiDegree {
        MultiDegree(
            (0..space.n_factors())
                .map(|i| self.0[space.block(i)].iter().map(|&e| e as i64).sum())
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All exponent vectors of length `len` summing to `d`, largest first.
fn block_exponents(len: usize, d: u16) -> Vec<Vec<u16>> {
    fn rec(len: usize, d: u16, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if len == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(len - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, d, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Monomials of multidegree `d`, in descending lexicographic order on the
/// concatenated exponent vector (the first block is most significant).
///
/// Empty when some component of `d` is negative.
pub fn monomial_basis(space: &SpaceSpec, d: &MultiDegree) -> Vec<Monomial> {
    assert_eq!(d.len(), space.n_factors(), "multidegree length mismatch");
    if d.components().iter().any(|&c| c < 0) {
        return Vec::new();
    }
    let blocks: Vec<Vec<Vec<u16>>> = space
        .factor_dims()
        .iter()
        .zip(d.components())
        .map(|(&a, &di)| block_exponents(a + 1, di as u16))
        .collect();
    let mut out: Vec<Vec<u16>> = vec![Vec::with_capacity(space.n_vars())];
    for block in &blocks {
        let mut next = Vec::with_capacity(out.len() * block.len());
        for prefix in &out {
            for b in block {
                let mut v = prefix.clone();
                v.extend_from_slice(b);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial).collect()
}

/// `prod C(a_i + d_i, a_i)`, the size of [`monomial_basis`].
pub fn monomial_basis_len(space: &SpaceSpec, d: &MultiDegree) -> BigInt {
    space
        .factor_dims()
        .iter()
        .zip(d.components())
        .map(|(&a, &di)| {
            if di < 0 {
                BigInt::from(0)
            } else {
                binomial(a as i64 + di, a as i64)
            }
        })
        .product()
}
