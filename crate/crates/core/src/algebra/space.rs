use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `X = P^{a_1} x ... x P^{a_n}`, stored by its factor dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct SpaceSpec {
    factor_dims: Vec<usize>,
    offsets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    factor_dims: Vec<usize>,
}

impl TryFrom<SpaceRepr> for SpaceSpec {
    type Error = Error;
    fn try_from(r: SpaceRepr) -> Result<Self> {
        SpaceSpec::new(r.factor_dims)
    }
}

impl From<SpaceSpec> for SpaceRepr {
    fn from(s: SpaceSpec) -> Self {
        SpaceRepr { factor_dims: s.factor_dims }
    }
}

impl SpaceSpec {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::InvalidSpace("no factors".into()));
        }
        if factor_dims.iter().any(|&a| a == 0) {
            return Err(Error::InvalidSpace(format!(
                "factor dimensions must be positive: {factor_dims:?}"
            )));
        }
        let mut offsets = Vec::with_capacity(factor_dims.len() + 1);
        let mut acc = 0;
        for &a in &factor_dims {
            offsets.push(acc);
            acc += a + 1;
        }
        offsets.push(acc);
        Ok(SpaceSpec { factor_dims, offsets })
    }

    /// Single projective space `P^a`.
    pub fn projective(a: usize) -> Result<Self> {
        Self::new(vec![a])
    }

    /// `m` copies of `P^a`.
    pub fn power(a: usize, m: usize) -> Result<Self> {
        Self::new(vec![a; m])
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn n_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.factor_dims.iter().sum()
    }

    /// Total number of homogeneous coordinates, `sum (a_i + 1)`.
    pub fn n_vars(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Variable index range of block `i`.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Build a multidegree, checking its length against the factor count.
    pub fn degree(&self, components: Vec<i64>) -> Result<MultiDegree> {
        if components.len() != self.n_factors() {
            return Err(Error::DegreeLength {
                expected: self.n_factors(),
                got: components.len(),
            });
        }
        Ok(MultiDegree(components))
    }

    pub fn zero_degree(&self) -> MultiDegree {
        MultiDegree(vec![0; self.n_factors()])
    }

    pub fn check_degree(&self, d: &MultiDegree) -> Result<()> {
        if d.len() != self.n_factors() {
            return Err(Error::DegreeLength {
                expected: self.n_factors(),
                got: d.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|a| format!("P^{a}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An element of `Pic(X) = Z^n`: degrees, twists and polarization weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_ample(&self) -> bool {
        self.0.iter().all(|&c| c >= 1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), other.len(), "multidegree length mismatch");
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * s).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
