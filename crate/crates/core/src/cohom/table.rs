use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{binomial, MultiDegree, SpaceSpec};
use crate::bigser;
use crate::{Error, Result};

/// A cohomology dimension known exactly (`lo == hi`) or only up to an
/// interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomDim {
    lo: BigInt,
    hi: BigInt,
}

impl CohomDim {
    pub fn exact(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        CohomDim { lo: v.clone(), hi: v }
    }

    pub fn interval(lo: BigInt, hi: BigInt) -> Self {
        assert!(lo <= hi && !lo.is_negative(), "invalid interval [{lo}, {hi}]");
        CohomDim { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The value when exact.
    pub fn value(&self) -> Option<&BigInt> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }
}

#[derive(Serialize, Deserialize)]
struct DimRepr {
    #[serde(with = "bigser::int")]
    lo: BigInt,
    #[serde(with = "bigser::int")]
    hi: BigInt,
    exact: bool,
}

impl Serialize for CohomDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DimRepr {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            exact: self.is_exact(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CohomDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DimRepr::deserialize(d)?;
        if r.lo > r.hi || r.lo.is_negative() || r.exact != (r.lo == r.hi) {
            return Err(serde::de::Error::custom("inconsistent cohomology interval"));
        }
        Ok(CohomDim { lo: r.lo, hi: r.hi })
    }
}

/// `h^0 .. h^{dim X}` of a sheaf, possibly with a twist label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomTable {
    pub degree: Option<MultiDegree>,
    pub dims: Vec<CohomDim>,
}

impl CohomTable {
    pub fn zero(dim: usize) -> Self {
        CohomTable {
            degree: None,
            dims: vec![CohomDim::exact(0); dim + 1],
        }
    }

    /// Exact table from integer values.
    pub fn from_values(degree: Option<MultiDegree>, values: Vec<BigInt>) -> Self {
        CohomTable {
            degree,
            dims: values.into_iter().map(CohomDim::exact).collect(),
        }
    }

    pub fn h(&self, i: usize) -> &CohomDim {
        &self.dims[i]
    }

    pub fn is_exact(&self) -> bool {
        self.dims.iter().all(CohomDim::is_exact)
    }

    /// Exact values, or `None` if some entry is an interval.
    pub fn values(&self) -> Option<Vec<BigInt>> {
        self.dims.iter().map(|d| d.value().cloned()).collect()
    }

    fn exact_at(&self, i: usize) -> BigInt {
        self.dims
            .get(i)
            .map(|d| d.value().expect("exact table").clone())
            .unwrap_or_default()
    }

    /// Alternating sum; `None` when not exact.
    pub fn euler(&self) -> Option<BigInt> {
        let v = self.values()?;
        Some(v.iter().enumerate().fold(BigInt::zero(), |acc, (i, h)| if i % 2 == 0 { acc + h } else { acc - h }))
    }
}

/// Cohomology of `O(d)` on `P^n`.
pub fn bott(n: usize, d: i64) -> CohomTable {
    assert!(n >= 1, "P^0 is not a factor");
    let n_i = n as i64;
    let mut v = vec![BigInt::zero(); n + 1];
    if d >= 0 {
        v[0] = binomial(n_i + d, n_i);
    }
    if d <= -n_i - 1 {
        v[n] = binomial(-d - 1, n_i);
    }
    CohomTable::from_values(Some(MultiDegree(vec![d])), v)
}

/// Cohomology of `O(d)` on a product, by convolving the factor tables.
pub fn kunneth(space: &SpaceSpec, d: &MultiDegree) -> Result<CohomTable> {
    space.check_degree(d)?;
    let mut acc = vec![BigInt::from(1)];
    for (&a, &di) in space.factor_dims().iter().zip(d.components()) {
        let f = bott(a, di);
        let mut next = vec![BigInt::zero(); acc.len() + a];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..=a {
                let y = f.exact_at(j);
                if !y.is_zero() {
                    next[i + j] += x * y;
                }
            }
        }
        acc = next;
    }
    Ok(CohomTable::from_values(Some(d.clone()), acc))
}

/// `O(d_1)^{m_1} + ... + O(d_r)^{m_r}`, degrees distinct and multiplicities
/// positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleSum {
    space: SpaceSpec,
    summands: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Summand {
    degree: MultiDegree,
    #[serde(with = "bigser::int")]
    multiplicity: BigInt,
}

impl LineBundleSum {
    pub fn new(space: &SpaceSpec, summands: impl IntoIterator<Item = (MultiDegree, BigInt)>) -> Result<Self> {
        let mut out: Vec<Summand> = Vec::new();
        for (d, m) in summands {
            space.check_degree(&d)?;
            if m.is_negative() {
                return Err(Error::InvalidSpec(format!("negative multiplicity {m} for O{d}")));
            }
            if m.is_zero() {
                continue;
            }
            match out.iter_mut().find(|s| s.degree == d) {
                Some(s) => s.multiplicity += m,
                None => out.push(Summand { degree: d, multiplicity: m }),
            }
        }
        Ok(LineBundleSum {
            space: space.clone(),
            summands: out,
        })
    }

    /// `O(d)^m`.
    pub fn single(space: &SpaceSpec, d: MultiDegree, m: impl Into<BigInt>) -> Result<Self> {
        Self::new(space, [(d, m.into())])
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn summands(&self) -> impl Iterator<Item = (&MultiDegree, &BigInt)> {
        self.summands.iter().map(|s| (&s.degree, &s.multiplicity))
    }

    pub fn rank(&self) -> BigInt {
        self.summands.iter().map(|s| &s.multiplicity).sum()
    }

    /// Tensor with `O(t)`.
    pub fn twist(&self, t: &MultiDegree) -> Result<Self> {
        self.space.check_degree(t)?;
        Ok(LineBundleSum {
            space: self.space.clone(),
            summands: self
                .summands
                .iter()
                .map(|s| Summand {
                    degree: s.degree.add(t),
                    multiplicity: s.multiplicity.clone(),
                })
                .collect(),
        })
    }

    /// The only degree, when there is exactly one summand.
    pub fn single_degree(&self) -> Option<&MultiDegree> {
        match self.summands.as_slice() {
            [s] => Some(&s.degree),
            _ => None,
        }
    }
}

pub fn cohom_sum(l: &LineBundleSum) -> Result<CohomTable> {
    let dim = l.space.dim();
    let mut acc = vec![BigInt::zero(); dim + 1];
    for s in &l.summands {
        let t = kunneth(&l.space, &s.degree)?;
        for (i, a) in acc.iter_mut().enumerate() {
            *a += &s.multiplicity * t.exact_at(i);
        }
    }
    Ok(CohomTable::from_values(None, acc))
}

pub fn euler_char(l: &LineBundleSum) -> Result<BigInt> {
    Ok(cohom_sum(l)?.euler().expect("sums of line bundles have exact tables"))
}
