use serde::{Deserialize, Serialize};

use crate::algebra::{MultiDegree, SpaceSpec};
use crate::monad::segre_dimension;
use crate::{Error, Result};

/// Which of the two sufficient conditions holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `beta >= 2 gamma + N - 1` and `beta >= alpha + gamma`.
    #[serde(rename = "a")]
    A,
    /// `beta >= alpha + gamma + N`.
    #[serde(rename = "b")]
    B,
}

/// First condition that holds, if any.
pub fn which_condition(alpha: u64, beta: u64, gamma: u64, n: u64) -> Option<Condition> {
    if beta + 1 >= 2 * gamma + n && beta >= alpha + gamma {
        Some(Condition::A)
    } else if beta >= alpha + gamma + n {
        Some(Condition::B)
    } else {
        None
    }
}

/// Existence of a linear monad with ranks `(alpha, beta, gamma)` on `P^N`.
pub fn exists_monad(alpha: u64, beta: u64, gamma: u64, n: u64) -> bool {
    which_condition(alpha, beta, gamma, n).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flavor {
    /// Copies of `P^{2n+1}` polarized by `O(1,...,1)`.
    TypeI,
    /// Any product with any ample polarization.
    TypeII,
    /// `m` copies of `P^1`, with `alpha = gamma = k` and `beta = 2^m - 2 + 2k`,
    /// lifted from the band monad on `P^{2^m - 1}`.
    P1Power { m: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct MonadSpec {
    space: SpaceSpec,
    weights: MultiDegree,
    alpha: usize,
    beta: usize,
    gamma: usize,
    flavor: Flavor,
    segre_dim: usize,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    space: SpaceSpec,
    weights: MultiDegree,
    alpha: usize,
    beta: usize,
    gamma: usize,
    flavor: Flavor,
}

impl TryFrom<SpecRepr> for MonadSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        MonadSpec::new(r.space, r.weights, r.alpha, r.beta, r.gamma, r.flavor)
    }
}

impl From<MonadSpec> for SpecRepr {
    fn from(s: MonadSpec) -> Self {
        SpecRepr {
            space: s.space,
            weights: s.weights,
            alpha: s.alpha,
            beta: s.beta,
            gamma: s.gamma,
            flavor: s.flavor,
        }
    }
}

impl MonadSpec {
    pub fn new(
        space: SpaceSpec,
        weights: MultiDegree,
        alpha: usize,
        beta: usize,
        gamma: usize,
        flavor: Flavor,
    ) -> Result<Self> {
        if alpha == 0 || beta == 0 || gamma == 0 {
            return Err(Error::InvalidSpec(format!(
                "ranks must be positive: ({alpha}, {beta}, {gamma})"
            )));
        }
        space.check_degree(&weights)?;
        let segre_dim = segre_dimension(&space, &weights)?;
        let all_ones = weights.components().iter().all(|&w| w == 1);
        match flavor {
            Flavor::TypeI => {
                let a = space.factor_dims()[0];
                if !all_ones || a % 2 == 0 || space.factor_dims().iter().any(|&x| x != a) {
                    return Err(Error::InvalidSpec(
                        "type I needs equal odd factor dimensions and weights (1,...,1)".into(),
                    ));
                }
            }
            Flavor::TypeII => {}
            Flavor::P1Power { m, k } => {
                if m == 0 || k == 0 || m >= 32 {
                    return Err(Error::InvalidSpec(format!("need 1 <= m < 32 and k >= 1, got m={m}, k={k}")));
                }
                let expect_beta = (1usize << m) - 2 + 2 * k;
                if space.factor_dims() != vec![1; m].as_slice()
                    || !all_ones
                    || alpha != k
                    || gamma != k
                    || beta != expect_beta
                {
                    return Err(Error::InvalidSpec(format!(
                        "p1power(m={m}, k={k}) needs (P^1)^{m}, weights (1,...,1) and ranks ({k}, {expect_beta}, {k})"
                    )));
                }
            }
        }
        Ok(MonadSpec {
            space,
            weights,
            alpha,
            beta,
            gamma,
            flavor,
            segre_dim,
        })
    }

    /// Type I on `m` copies of `P^{2n+1}`.
    pub fn type_i(n: usize, m: usize, alpha: usize, beta: usize, gamma: usize) -> Result<Self> {
        let space = SpaceSpec::power(2 * n + 1, m)?;
        let w = MultiDegree(vec![1; m]);
        Self::new(space, w, alpha, beta, gamma, Flavor::TypeI)
    }

    pub fn type_ii(space: SpaceSpec, weights: MultiDegree, alpha: usize, beta: usize, gamma: usize) -> Result<Self> {
        Self::new(space, weights, alpha, beta, gamma, Flavor::TypeII)
    }

    /// The lifted band monad on `(P^1)^m`.
    pub fn p1_power(m: usize, k: usize) -> Result<Self> {
        if m == 0 || m >= 32 {
            return Err(Error::InvalidSpec(format!("need 1 <= m < 32, got {m}")));
        }
        let space = SpaceSpec::power(1, m)?;
        let beta = ((1usize << m) - 2) + 2 * k;
        Self::new(space, MultiDegree(vec![1; m]), k, beta, k, Flavor::P1Power { m, k })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn weights(&self) -> &MultiDegree {
        &self.weights
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `N`, the dimension of the Segre target `P(H^0(O(w)))`.
    pub fn segre_dim(&self) -> usize {
        self.segre_dim
    }

    pub fn condition(&self) -> Option<Condition> {
        which_condition(self.alpha as u64, self.beta as u64, self.gamma as u64, self.segre_dim as u64)
    }

    pub fn exists(&self) -> bool {
        self.condition().is_some()
    }
}

/// Ranks of the bundles in the display of a monad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplayRanks {
    /// Kernel of `B`.
    pub t: i64,
    /// Cohomology `ker B / im A`.
    pub e: i64,
    /// Cokernel of `A`.
    pub q: i64,
    /// Same as `q`; the Schwarzenberger bundle for the band family.
    pub s: i64,
}

pub fn display_ranks(spec: &MonadSpec) -> Result<DisplayRanks> {
    let (a, b, g) = (spec.alpha as i64, spec.beta as i64, spec.gamma as i64);
    let r = DisplayRanks {
        t: b - g,
        e: b - a - g,
        q: b - a,
        s: b - a,
    };
    for (bundle, rank) in [("T", r.t), ("E", r.e), ("Q", r.q)] {
        if rank <= 0 {
            return Err(Error::NonpositiveRank { bundle, rank });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn existence_examples() {
        assert_eq!(which_condition(1, 4, 1, 3), Some(Condition::A));
        assert!(!exists_monad(1, 3, 1, 3));
        for n in 1..=6u64 {
            for k in 1..=6u64 {
                assert_eq!(which_condition(k, 2 * n + 2 * k, k, 2 * n + 1), Some(Condition::A));
            }
        }
        assert_eq!(which_condition(1, 9, 5, 3), Some(Condition::B));
        assert_eq!(which_condition(1, 12, 5, 3), Some(Condition::A));
    }

    proptest! {
        #[test]
        fn existence_is_monotone_in_beta(a in 1u64..8, b in 1u64..40, g in 1u64..8, n in 1u64..25) {
            if exists_monad(a, b, g, n) {
                prop_assert!(exists_monad(a, b + 1, g, n));
            }
        }

        #[test]
        fn display_identities(a in 1usize..6, g in 1usize..6, extra in 1usize..10) {
            let s = MonadSpec::type_ii(SpaceSpec::projective(3).unwrap(), MultiDegree(vec![1]), a, a + g + extra, g).unwrap();
            let r = display_ranks(&s).unwrap();
            prop_assert_eq!(r.t, r.e + a as i64);
            prop_assert_eq!(r.q, r.e + g as i64);
        }
    }

    #[test]
    fn display_examples() {
        let s = MonadSpec::type_i(1, 1, 1, 4, 1).unwrap();
        assert_eq!(display_ranks(&s).unwrap(), DisplayRanks { t: 3, e: 2, q: 3, s: 3 });
        for n in 1..4usize {
            for k in 1..4usize {
                let s = MonadSpec::type_i(n, 1, k, 2 * n + 2 * k, k).unwrap();
                assert_eq!(display_ranks(&s).unwrap().s, (2 * n + k) as i64);
            }
        }
        let s = MonadSpec::type_i(1, 2, 1, 16, 1).unwrap();
        assert_eq!(display_ranks(&s).unwrap().e, 14);
        let s = MonadSpec::type_i(1, 1, 2, 3, 1).unwrap();
        assert!(matches!(display_ranks(&s), Err(Error::NonpositiveRank { bundle: "E", rank: 0 })));
    }

    #[test]
    fn flavor_validation() {
        assert!(MonadSpec::new(SpaceSpec::power(2, 2).unwrap(), MultiDegree(vec![1, 1]), 1, 4, 1, Flavor::TypeI).is_err());
        assert!(MonadSpec::type_i(1, 2, 1, 16, 1).is_ok());
        let p = MonadSpec::p1_power(3, 2).unwrap();
        assert_eq!((p.alpha(), p.beta(), p.gamma(), p.segre_dim()), (2, 10, 2, 7));
        assert!(MonadSpec::new(SpaceSpec::power(1, 2).unwrap(), MultiDegree(vec![1, 1]), 1, 5, 1, Flavor::P1Power { m: 2, k: 1 }).is_err());
        assert!(MonadSpec::type_ii(SpaceSpec::new(vec![1, 2]).unwrap(), MultiDegree(vec![1, 0]), 1, 20, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = MonadSpec::type_ii(SpaceSpec::new(vec![1, 2]).unwrap(), MultiDegree(vec![1, 2]), 1, 24, 2).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        let back: MonadSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.segre_dim(), 11);
    }
}
