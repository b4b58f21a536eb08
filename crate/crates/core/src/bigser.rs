//! Serde helpers for exact numbers.
//!
//! Integers are written as JSON numbers while they fit in 64 bits and as
//! decimal strings beyond that. Rationals are always strings (`"-2/3"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrString {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        if let Some(x) = v.to_i64() {
            x.serialize(s)
        } else if let Some(x) = v.to_u64() {
            x.serialize(s)
        } else {
            v.to_string().serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match NumOrString::deserialize(d)? {
            NumOrString::Signed(x) => Ok(BigInt::from(x)),
            NumOrString::Unsigned(x) => Ok(BigInt::from(x)),
            NumOrString::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}

pub mod int_vec {
    use super::*;

    #[derive(Serialize)]
    struct Ser<'a>(#[serde(with = "super::int")] &'a BigInt);

    #[derive(Deserialize)]
    struct De(#[serde(with = "super::int")] BigInt);

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Ser))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<De>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).map_err(de::Error::custom)
    }
}

/// Parse `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(t: &str) -> Result<BigRational, String> {
    let t = t.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| format!("{t}: {e}"))?;
            let d: BigInt = d.trim().parse().map_err(|e| format!("{t}: {e}"))?;
            if d == BigInt::from(0) {
                return Err(format!("{t}: zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|e| format!("{t}: {e}"))?;
            Ok(BigRational::from_integer(n))
        }
    }
}
