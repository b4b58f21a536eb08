use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiDegree, SpaceSpec};
use crate::cohom::{cohom_sum, CohomDim, CohomTable, LineBundleSum};
use crate::linmat::{global_sections_map, rank_rational, LinMatrix};
use crate::{Error, Result};

/// `0 -> S1 -> S2 -> V -> 0` with `S1`, `S2` sums of line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTermResolution {
    s1: LineBundleSum,
    s2: LineBundleSum,
    map: Option<LinMatrix>,
    target: String,
}

impl TwoTermResolution {
    pub fn new(s1: LineBundleSum, s2: LineBundleSum, map: Option<LinMatrix>, target: impl Into<String>) -> Result<Self> {
        if s1.space() != s2.space() {
            return Err(Error::DimensionMismatch("resolution terms on different spaces".into()));
        }
        if let Some(m) = &map {
            let (Some(d1), Some(d2)) = (s1.single_degree(), s2.single_degree()) else {
                return Err(Error::InvalidSpec("a map needs single-degree terms".into()));
            };
            if m.space() != s1.space()
                || BigInt::from(m.cols()) != s1.rank()
                || BigInt::from(m.rows()) != s2.rank()
                || &d1.add(m.entry_degree()) != d2
            {
                return Err(Error::ShapeMismatch(format!(
                    "{}x{} map of degree {} does not fit O{d1}^{} -> O{d2}^{}",
                    m.rows(),
                    m.cols(),
                    m.entry_degree(),
                    s1.rank(),
                    s2.rank()
                )));
            }
        }
        Ok(TwoTermResolution {
            s1,
            s2,
            map,
            target: target.into(),
        })
    }

    /// `0 -> O(-w)^gamma -> O^beta -> T* -> 0`, the dual of the sequence
    /// defining `T = ker B`, without the map.
    pub fn kernel_dual(space: &SpaceSpec, w: &MultiDegree, beta: usize, gamma: usize) -> Result<Self> {
        let s1 = LineBundleSum::single(space, w.scale(-1), gamma)?;
        let s2 = LineBundleSum::single(space, space.zero_degree(), beta)?;
        Self::new(s1, s2, None, "T*")
    }

    /// Same as [`TwoTermResolution::kernel_dual`] with the map `B^T`.
    pub fn kernel_dual_of(b: &LinMatrix) -> Result<Self> {
        let space = b.space();
        let s1 = LineBundleSum::single(space, b.entry_degree().scale(-1), b.rows())?;
        let s2 = LineBundleSum::single(space, space.zero_degree(), b.cols())?;
        Self::new(s1, s2, Some(b.transpose()), "T*")
    }

    pub fn s1(&self) -> &LineBundleSum {
        &self.s1
    }

    pub fn s2(&self) -> &LineBundleSum {
        &self.s2
    }

    pub fn target(&self) -> &str {
        &self.target
    }
}

/// Cohomology of `V(t)` from the long exact sequence of
/// `0 -> S1(t) -> S2(t) -> V(t) -> 0`.
///
/// With `r_i` the rank of `H^i(S1) -> H^i(S2)`,
/// `h^i(V) = h^i(S2) - r_i + h^{i+1}(S1) - r_{i+1}`. `r_0 = h^0(S1)` by left
/// exactness (or the rank of the section map when a map is given, which
/// must then be injective); each other `r_i` is only known to lie in
/// `[0, min(h^i(S1), h^i(S2))]`, so the entries touching it become
/// intervals unless that range is a single point.
pub fn les_cohom(res: &TwoTermResolution, twist: &MultiDegree) -> Result<CohomTable> {
    let dim = res.s1.space().dim();
    let s1 = res.s1.twist(twist)?;
    let a = cohom_sum(&s1)?.values().expect("exact");
    let b = cohom_sum(&res.s2.twist(twist)?)?.values().expect("exact");
    let zero = BigInt::zero();
    let at = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);

    let r0 = match (&res.map, s1.single_degree()) {
        (Some(m), Some(d1)) if !a[0].is_zero() => {
            let r = BigInt::from(rank_rational(&global_sections_map(m, d1)?));
            if r != a[0] {
                return Err(Error::InvalidSpec(format!(
                    "map of {} is not injective on global sections at twist {twist}",
                    res.target
                )));
            }
            r
        }
        _ => a[0].clone(),
    };
    let mut rlo = vec![zero.clone(); dim + 2];
    let mut rhi = vec![zero.clone(); dim + 2];
    rlo[0] = r0.clone();
    rhi[0] = r0;
    for i in 1..=dim {
        rhi[i] = a[i].clone().min(b[i].clone());
    }
    let mut dims: Vec<CohomDim> = (0..=dim)
        .map(|i| {
            let base = &b[i] + at(&a, i + 1);
            let hi = &base - &rlo[i] - &rlo[i + 1];
            let lo = (&base - &rhi[i] - &rhi[i + 1]).max(zero.clone());
            CohomDim::interval(lo, hi)
        })
        .collect();

    let chi = |v: &[BigInt]| {
        v.iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, x)| if i % 2 == 0 { acc + x } else { acc - x })
    };
    tighten_by_euler(&mut dims, &(chi(&b) - chi(&a)));
    Ok(CohomTable {
        degree: Some(twist.clone()),
        dims,
    })
}

/// Intersect each interval with the range allowed by
/// `sum (-1)^i h^i = chi` and the other intervals, until nothing changes.
fn tighten_by_euler(dims: &mut [CohomDim], chi: &BigInt) {
    loop {
        let mut changed = false;
        for k in 0..dims.len() {
            // (-1)^k h^k = chi - sum_{i != k} (-1)^i h^i
            let (mut lo, mut hi) = (chi.clone(), chi.clone());
            for (i, d) in dims.iter().enumerate().filter(|&(i, _)| i != k) {
                if i % 2 == 0 {
                    lo -= d.hi();
                    hi -= d.lo();
                } else {
                    lo += d.lo();
                    hi += d.hi();
                }
            }
            let (lo, hi) = if k % 2 == 0 { (lo, hi) } else { (-hi, -lo) };
            let new_lo = lo.max(dims[k].lo().clone());
            let new_hi = hi.min(dims[k].hi().clone());
            if new_lo > new_hi {
                // inconsistent inputs cannot come from an exact sequence
                unreachable!("Euler characteristic contradicts the long exact sequence");
            }
            if &new_lo != dims[k].lo() || &new_hi != dims[k].hi() {
                dims[k] = CohomDim::interval(new_lo, new_hi);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{build_floystad, build_monad, MonadSpec};

    fn vals(t: &CohomTable) -> Vec<i64> {
        t.values().unwrap().iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn dual_kernel_on_p3() {
        let s = SpaceSpec::projective(3).unwrap();
        let r = TwoTermResolution::kernel_dual(&s, &MultiDegree(vec![1]), 4, 1).unwrap();
        let t = les_cohom(&r, &MultiDegree(vec![-1])).unwrap();
        assert!(t.h(0).is_zero() && t.h(1).is_zero());
        let with_map = TwoTermResolution::kernel_dual_of(build_floystad(1, 1).unwrap().b()).unwrap();
        assert_eq!(les_cohom(&with_map, &MultiDegree(vec![-1])).unwrap(), t);
        // h^0(T*) = 4 - 0 and h^0(T*(1)) = 16 - 1 use the section map
        assert_eq!(vals(&les_cohom(&with_map, &MultiDegree(vec![0])).unwrap()), [4, 0, 0, 0]);
        assert_eq!(vals(&les_cohom(&with_map, &MultiDegree(vec![1])).unwrap()), [15, 0, 0, 0]);
    }

    #[test]
    fn dual_kernel_on_p3_squared() {
        let s = SpaceSpec::new(vec![3, 3]).unwrap();
        let r = TwoTermResolution::kernel_dual(&s, &MultiDegree(vec![1, 1]), 16, 1).unwrap();
        let t = les_cohom(&r, &MultiDegree(vec![-1, -1])).unwrap();
        assert!(t.h(0).is_zero() && t.h(1).is_zero());
    }

    #[test]
    fn dual_kernel_on_p1_squared_has_h1() {
        let s = SpaceSpec::new(vec![1, 1]).unwrap();
        let r = TwoTermResolution::kernel_dual(&s, &MultiDegree(vec![1, 1]), 4, 1).unwrap();
        let t = les_cohom(&r, &MultiDegree(vec![-1, -1])).unwrap();
        assert_eq!(vals(&t), [0, 1, 0]);
    }

    #[test]
    fn intervals_when_ranks_unknown() {
        // 0 -> O(-2)^2 -> O(-2)^3 -> V -> 0 on P^1: r_1 in [0, 2]
        let s = SpaceSpec::projective(1).unwrap();
        let s1 = LineBundleSum::single(&s, MultiDegree(vec![-2]), 2).unwrap();
        let s2 = LineBundleSum::single(&s, MultiDegree(vec![-2]), 3).unwrap();
        let t = les_cohom(&TwoTermResolution::new(s1, s2, None, "V").unwrap(), &MultiDegree(vec![0])).unwrap();
        assert_eq!((t.h(0).lo(), t.h(0).hi()), (&BigInt::from(0), &BigInt::from(2)));
        assert_eq!((t.h(1).lo(), t.h(1).hi()), (&BigInt::from(1), &BigInt::from(3)));
    }

    #[test]
    fn euler_tightening() {
        let mut dims = vec![
            CohomDim::interval(BigInt::from(0), BigInt::from(5)),
            CohomDim::exact(2),
            CohomDim::interval(BigInt::from(0), BigInt::from(9)),
        ];
        // h0 - 2 + h2 = 1 with h2 <= 9 and h0 <= 5 gives h2 >= 0 and h0 <= 3
        tighten_by_euler(&mut dims, &BigInt::from(1));
        assert_eq!(dims[0], CohomDim::interval(BigInt::from(0), BigInt::from(3)));
        assert_eq!(dims[2], CohomDim::interval(BigInt::from(0), BigInt::from(3)));
        let mut one_open = vec![CohomDim::exact(1), CohomDim::interval(BigInt::from(0), BigInt::from(4))];
        tighten_by_euler(&mut one_open, &BigInt::from(-2));
        assert_eq!(one_open[1], CohomDim::exact(3));
    }

    #[test]
    fn rejects_non_injective_map() {
        let inst = build_monad(&MonadSpec::p1_power(2, 1).unwrap(), 0).unwrap();
        let zero = LinMatrix::zeros(inst.b().space(), inst.b().ring(), 4, 1, MultiDegree(vec![1, 1])).unwrap();
        let s = inst.b().space().clone();
        let r = TwoTermResolution::new(
            LineBundleSum::single(&s, MultiDegree(vec![-1, -1]), 1).unwrap(),
            LineBundleSum::single(&s, MultiDegree(vec![0, 0]), 4).unwrap(),
            Some(zero),
            "T*",
        )
        .unwrap();
        assert!(les_cohom(&r, &MultiDegree(vec![1, 1])).is_err());
    }
}
