use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, MultiDegree, ProjPoint, SpaceSpec};
use crate::fp;
use crate::{Error, Result};

/// Coefficient domain of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Ring {
    Rational,
    Prime(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "QQ"),
            Ring::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;
    fn try_from(s: String) -> Result<Ring> {
        s.parse()
    }
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Ring> {
        if s == "QQ" {
            return Ok(Ring::Rational);
        }
        let p = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
        Ring::prime(p)
    }
}

impl Ring {
    pub fn prime(p: u64) -> Result<Ring> {
        if p >= 1 << 63 || !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Prime(p))
    }

    /// Canonical representative of `c` in this ring.
    fn normalize(&self, c: BigRational) -> Result<BigRational> {
        match self {
            Ring::Rational => Ok(c),
            Ring::Prime(p) => Ok(BigRational::from_integer(BigInt::from(rational_mod(&c, *p)?))),
        }
    }
}

/// Image of a rational number in `F_p`.
pub(crate) fn rational_mod(c: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = c.numer().mod_floor(&pb).to_u64().unwrap();
    let den = c.denom().mod_floor(&pb).to_u64().unwrap();
    let inv = fp::inv_mod(den, p)
        .ok_or_else(|| Error::FieldMismatch(format!("denominator of {c} vanishes mod {p}")))?;
    Ok(fp::mul_mod(num, inv, p))
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    n_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ring: Ring, n_vars: usize) -> Self {
        Polynomial {
            ring,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, n_vars: usize, c: BigRational) -> Result<Self> {
        Self::term(ring, Monomial::one(n_vars), c)
    }

    pub fn var(ring: Ring, n_vars: usize, i: usize) -> Self {
        Self::term(ring, Monomial::var(n_vars, i), BigRational::one()).unwrap()
    }

    pub fn term(ring: Ring, m: Monomial, c: BigRational) -> Result<Self> {
        let mut p = Polynomial::zero(ring, m.n_vars());
        let c = ring.normalize(c)?;
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    /// Monomial with integer coefficient, the common case for matrix entries.
    pub fn monomial(ring: Ring, m: Monomial, c: i64) -> Self {
        Self::term(ring, m, BigRational::from_integer(BigInt::from(c)))
            .expect("integer coefficients embed in every ring")
    }

    pub fn from_terms(
        ring: Ring,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(ring, n_vars);
        for (m, c) in terms {
            if m.n_vars() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial has {} variables, ring has {n_vars}",
                    m.n_vars()
                )));
            }
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) -> Result<()> {
        let old = self.terms.remove(&m).unwrap_or_else(BigRational::zero);
        let sum = self.ring.normalize(old + c)?;
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.n_vars, other.n_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry = self.ring.normalize(&*entry + c)?;
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.ring, self.n_vars);
        for (m, c) in &self.terms {
            let v = self.ring.normalize(-c).expect("negation keeps denominators");
            out.terms.insert(m.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero);
                *e += c1 * c2;
            }
        }
        let mut out = Polynomial::zero(self.ring, self.n_vars);
        for (m, c) in acc {
            let c = self.ring.normalize(c)?;
            if !c.is_zero() {
                out.terms.insert(m, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &BigRational) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ring, self.n_vars);
        for (m, c) in &self.terms {
            let v = self.ring.normalize(c * s)?;
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    /// Multidegree when the polynomial is nonzero and homogeneous.
    pub fn multidegree(&self, space: &SpaceSpec) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|m| m.multidegree(space));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, space: &SpaceSpec, d: &MultiDegree) -> bool {
        self.terms.keys().all(|m| &m.multidegree(space) == d)
    }

    /// Substitute variable `i` by `images[i]`; the images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.n_vars
            )));
        }
        let target = images
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no variables".into()))?;
        let mut out = Polynomial::zero(self.ring, target.n_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.ring, target.n_vars, c.clone())?;
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Value at a point over `F_p`.
    pub fn evaluate(&self, pt: &ProjPoint) -> Result<u64> {
        let p = pt.modulus();
        if let Ring::Prime(r) = self.ring {
            if r != p {
                return Err(Error::FieldMismatch(format!(
                    "coefficients in GF({r}), point over GF({p})"
                )));
            }
        }
        let coords = pt.coordinates();
        if coords.len() != self.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                coords.len(),
                self.n_vars
            )));
        }
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = rational_mod(c, p)?;
            for (x, &e) in coords.iter().zip(m.exponents()) {
                if e > 0 {
                    v = fp::mul_mod(v, fp::pow_mod(*x, e as u64, p), p);
                }
            }
            acc = fp::add_mod(acc, v, p);
        }
        Ok(acc)
    }

    /// Integer coefficient of `m`, for building integer section matrices.
    pub fn integer_coefficients(&self) -> Result<Vec<(&Monomial, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if !c.is_integer() {
                    return Err(Error::NonIntegral(c.to_string()));
                }
                let v = c
                    .numer()
                    .to_i64()
                    .ok_or_else(|| Error::NonIntegral(c.to_string()))?;
                Ok((m, v))
            })
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
