use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiDegree, SpaceSpec};
use crate::bigser;
use crate::monad::MonadSpec;
use crate::{Error, Result};

/// Ample class `L = sum w_i g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MultiDegree", into = "MultiDegree")]
pub struct Polarization(MultiDegree);

impl TryFrom<MultiDegree> for Polarization {
    type Error = Error;
    fn try_from(w: MultiDegree) -> Result<Self> {
        Polarization::new(w)
    }
}

impl From<Polarization> for MultiDegree {
    fn from(p: Polarization) -> Self {
        p.0
    }
}

impl Polarization {
    pub fn new(weights: MultiDegree) -> Result<Self> {
        if !weights.is_ample() {
            return Err(Error::NonAmple(weights.components().to_vec()));
        }
        Ok(Polarization(weights))
    }

    pub fn weights(&self) -> &MultiDegree {
        &self.0
    }
}

/// Coefficient of `prod g_i^{a_i}` in `prod_k (sum_i c_{k,i} g_i)` with
/// `g_i^{a_i + 1} = 0`.
pub fn intersection_number(space: &SpaceSpec, classes: &[MultiDegree]) -> Result<BigInt> {
    if classes.len() != space.dim() {
        return Err(Error::DegreeMismatch {
            expected: space.dim(),
            got: classes.len(),
        });
    }
    let dims = space.factor_dims();
    let mut states: HashMap<Vec<usize>, BigInt> = HashMap::from([(vec![0; dims.len()], BigInt::from(1))]);
    for c in classes {
        space.check_degree(c)?;
        let mut next: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for (e, v) in &states {
            for (i, &ci) in c.components().iter().enumerate() {
                if ci != 0 && e[i] < dims[i] {
                    let mut f = e.clone();
                    f[i] += 1;
                    *next.entry(f).or_default() += v * ci;
                }
            }
        }
        states = next;
    }
    Ok(states.remove(dims).unwrap_or_default())
}

/// `deg_L O(B) = B . L^{dim - 1}`.
pub fn delta_l(space: &SpaceSpec, pol: &Polarization, b: &MultiDegree) -> Result<BigInt> {
    let mut classes = vec![pol.weights().clone(); space.dim() - 1];
    classes.push(b.clone());
    intersection_number(space, &classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleNumerics {
    pub c1: MultiDegree,
    pub rank: usize,
    #[serde(with = "bigser::int")]
    pub deg: BigInt,
    #[serde(with = "bigser::rational")]
    pub slope: BigRational,
    /// `d = deg_L O(1, 0, ..., 0)`.
    #[serde(with = "bigser::int")]
    pub d: BigInt,
    /// `ceil(slope / d)`; `E(-k_norm, 0, ..., 0)` is the normalization.
    pub k_norm: i64,
}

impl BundleNumerics {
    /// `deg_L E(-k, 0, ..., 0) = deg - k d rank`.
    pub fn twisted_degree(&self, k: i64) -> BigInt {
        &self.deg - BigInt::from(k) * &self.d * BigInt::from(self.rank)
    }
}

/// Degree, slope and normalization of a bundle with first Chern class `c1`.
pub fn bundle_numerics(space: &SpaceSpec, pol: &Polarization, c1: &MultiDegree, rank: usize) -> Result<BundleNumerics> {
    if rank == 0 {
        return Err(Error::NonpositiveRank { bundle: "bundle", rank: 0 });
    }
    let deg = delta_l(space, pol, c1)?;
    let mut e1 = vec![0; space.n_factors()];
    e1[0] = 1;
    let d = delta_l(space, pol, &MultiDegree(e1))?;
    let slope = BigRational::new(deg.clone(), BigInt::from(rank));
    let k = (&slope / BigRational::from_integer(d.clone())).ceil().to_integer();
    let k_norm = k.to_i64().ok_or_else(|| Error::InvalidSpec(format!("normalization twist {k} out of range")))?;
    Ok(BundleNumerics {
        c1: c1.clone(),
        rank,
        deg,
        slope,
        d,
        k_norm,
    })
}

/// Numerics of `T = ker(O^beta -> O(w)^gamma)`: `c1 = -gamma w`, rank
/// `beta - gamma`.
pub fn kernel_numerics(spec: &MonadSpec, pol: &Polarization) -> Result<BundleNumerics> {
    if spec.beta() <= spec.gamma() {
        return Err(Error::NonpositiveRank {
            bundle: "T",
            rank: spec.beta() as i64 - spec.gamma() as i64,
        });
    }
    let c1 = spec.weights().scale(-(spec.gamma() as i64));
    bundle_numerics(spec.space(), pol, &c1, spec.beta() - spec.gamma())
}

/// Twists entering the Hoppe test for `Λ^q` of a bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCandidates {
    /// `B >= 0` with `delta_L(B) < -q mu`.
    pub strict: Vec<MultiDegree>,
    /// `B >= 0` with `delta_L(B) = -q mu`.
    pub boundary: Vec<MultiDegree>,
}

/// All `B >= 0` (componentwise) with `delta_L(B) <= -q mu`, split by
/// strictness. Twists with a negative component need no test: the ambient
/// `H^0(Λ^q O^beta (B))` already vanishes.
pub fn candidate_twists(space: &SpaceSpec, pol: &Polarization, num: &BundleNumerics, q: usize) -> Result<TwistCandidates> {
    if !num.deg.is_negative() {
        return Err(Error::NonnegativeSlope(num.slope.to_string()));
    }
    // delta(B) * rank <= q * (-deg)
    let bound = BigInt::from(q) * -&num.deg;
    let rank = BigInt::from(num.rank);
    let unit: Vec<BigInt> = (0..space.n_factors())
        .map(|i| {
            let mut e = vec![0; space.n_factors()];
            e[i] = 1;
            delta_l(space, pol, &MultiDegree(e))
        })
        .collect::<Result<_>>()?;
    let mut out = TwistCandidates {
        strict: Vec::new(),
        boundary: Vec::new(),
    };
    let mut cur = vec![0i64; unit.len()];
    walk(&unit, &rank, &bound, 0, &BigInt::zero(), &mut cur, &mut out);
    out.strict.sort();
    out.boundary.sort();
    Ok(out)
}

fn walk(
    unit: &[BigInt],
    rank: &BigInt,
    bound: &BigInt,
    i: usize,
    acc: &BigInt,
    cur: &mut Vec<i64>,
    out: &mut TwistCandidates,
) {
    if i == unit.len() {
        let lhs = acc * rank;
        if &lhs < bound {
            out.strict.push(MultiDegree(cur.clone()));
        } else if &lhs == bound {
            out.boundary.push(MultiDegree(cur.clone()));
        }
        return;
    }
    let mut b = 0i64;
    loop {
        let next = acc + &unit[i] * BigInt::from(b);
        if &(&next * rank) > bound {
            break;
        }
        cur[i] = b;
        walk(unit, rank, bound, i + 1, &next, cur, out);
        b += 1;
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn md(v: &[i64]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    fn sp(v: &[usize]) -> SpaceSpec {
        SpaceSpec::new(v.to_vec()).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_number(&sp(&[1, 1]), &[md(&[1, 1]), md(&[1, 1])]).unwrap(), BigInt::from(2));
        assert_eq!(intersection_number(&sp(&[1, 1, 1]), &vec![md(&[1, 1, 1]); 3]).unwrap(), BigInt::from(6));
        assert_eq!(intersection_number(&sp(&[3, 3]), &vec![md(&[1, 1]); 6]).unwrap(), BigInt::from(20));
        assert!(matches!(
            intersection_number(&sp(&[1, 1]), &[md(&[1, 1])]),
            Err(Error::DegreeMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn delta_examples() {
        let l = Polarization::new(md(&[1, 1])).unwrap();
        assert_eq!(delta_l(&sp(&[1, 1]), &l, &md(&[2, -1])).unwrap(), BigInt::from(1));
        assert_eq!(delta_l(&sp(&[1, 1]), &l, &md(&[0, 0])).unwrap(), BigInt::from(0));
        assert_eq!(delta_l(&sp(&[3, 3]), &l, &md(&[1, 0])).unwrap(), BigInt::from(10));
        assert!(Polarization::new(md(&[1, 0])).is_err());
    }

    #[test]
    fn kernel_numerics_examples() {
        let l = Polarization::new(md(&[1, 1])).unwrap();
        let n = kernel_numerics(&MonadSpec::type_i(0, 2, 1, 4, 1).unwrap(), &l).unwrap();
        assert_eq!(n.c1, md(&[-1, -1]));
        assert_eq!((n.deg.clone(), n.rank, n.k_norm), (BigInt::from(-2), 3, 0));
        assert_eq!(n.slope, BigRational::new((-2).into(), 3.into()));
        let n = kernel_numerics(&MonadSpec::type_i(1, 2, 1, 16, 1).unwrap(), &l).unwrap();
        assert_eq!(n.deg, BigInt::from(-20));
        assert_eq!(n.slope, BigRational::new((-4).into(), 3.into()));
        let s = MonadSpec::type_ii(sp(&[1, 2]), md(&[1, 2]), 1, 30, 2).unwrap();
        let n = kernel_numerics(&s, &Polarization::new(md(&[1, 2])).unwrap()).unwrap();
        assert_eq!(n.c1, md(&[-2, -4]));
    }

    #[test]
    fn candidate_examples() {
        let l = Polarization::new(md(&[1, 1])).unwrap();
        let n = kernel_numerics(&MonadSpec::type_i(0, 2, 1, 4, 1).unwrap(), &l).unwrap();
        let s = sp(&[1, 1]);
        assert_eq!(candidate_twists(&s, &l, &n, 1).unwrap().strict, vec![md(&[0, 0])]);
        assert_eq!(candidate_twists(&s, &l, &n, 2).unwrap().strict, vec![md(&[0, 0]), md(&[0, 1]), md(&[1, 0])]);
        let n = kernel_numerics(&MonadSpec::type_i(1, 2, 1, 16, 1).unwrap(), &l).unwrap();
        let c = candidate_twists(&sp(&[3, 3]), &l, &n, 1).unwrap();
        assert_eq!(c.strict, vec![md(&[0, 0])]);
        assert!(c.boundary.is_empty());
        // rank 3, deg -6 on (P^1)^3, q = 1: delta(e_i) = 2 lies exactly on the threshold
        let s3 = sp(&[1, 1, 1]);
        let l3 = Polarization::new(md(&[1, 1, 1])).unwrap();
        let n = bundle_numerics(&s3, &l3, &md(&[-1, -1, -1]), 3).unwrap();
        let c = candidate_twists(&s3, &l3, &n, 1).unwrap();
        assert_eq!(c.strict, vec![md(&[0, 0, 0])]);
        assert_eq!(c.boundary, vec![md(&[0, 0, 1]), md(&[0, 1, 0]), md(&[1, 0, 0])]);
        let pos = bundle_numerics(&s3, &l3, &md(&[1, 0, 0]), 2).unwrap();
        assert!(matches!(candidate_twists(&s3, &l3, &pos, 1), Err(Error::NonnegativeSlope(_))));
    }

    proptest! {
        #[test]
        fn delta_is_linear(dims in prop::collection::vec(1usize..4, 1..4), w in prop::collection::vec(1i64..4, 3),
                           b1 in prop::collection::vec(-5i64..6, 3), b2 in prop::collection::vec(-5i64..6, 3)) {
            let n = dims.len();
            let s = SpaceSpec::new(dims).unwrap();
            let l = Polarization::new(MultiDegree(w[..n].to_vec())).unwrap();
            let (x, y) = (MultiDegree(b1[..n].to_vec()), MultiDegree(b2[..n].to_vec()));
            prop_assert_eq!(
                delta_l(&s, &l, &x.add(&y)).unwrap(),
                delta_l(&s, &l, &x).unwrap() + delta_l(&s, &l, &y).unwrap()
            );
        }

        #[test]
        fn intersection_is_symmetric_and_multilinear(
            perm_seed in 0usize..6,
            cs in prop::collection::vec(prop::collection::vec(-3i64..4, 2), 3),
            extra in prop::collection::vec(-3i64..4, 2),
        ) {
            let s = sp(&[1, 2]);
            let classes: Vec<MultiDegree> = cs.iter().map(|c| MultiDegree(c.clone())).collect();
            let base = intersection_number(&s, &classes).unwrap();
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let p = perms[perm_seed];
            let permuted: Vec<MultiDegree> = p.iter().map(|&i| classes[i].clone()).collect();
            prop_assert_eq!(intersection_number(&s, &permuted).unwrap(), base.clone());
            let e = MultiDegree(extra);
            let mut summed = classes.clone();
            summed[0] = summed[0].add(&e);
            let mut only = classes.clone();
            only[0] = e;
            prop_assert_eq!(intersection_number(&s, &summed).unwrap(), base + intersection_number(&s, &only).unwrap());
        }

        #[test]
        fn normalization_window(dims in prop::collection::vec(1usize..4, 1..4), w in prop::collection::vec(1i64..4, 3),
                                c in prop::collection::vec(-20i64..21, 3), rank in 1usize..12) {
            let n = dims.len();
            let s = SpaceSpec::new(dims).unwrap();
            let l = Polarization::new(MultiDegree(w[..n].to_vec())).unwrap();
            let num = bundle_numerics(&s, &l, &MultiDegree(c[..n].to_vec()), rank).unwrap();
            let v = num.twisted_degree(num.k_norm);
            let dr = &num.d * BigInt::from(rank);
            prop_assert!(BigInt::from(1) - &dr <= v && v <= BigInt::zero());
        }
    }
}
