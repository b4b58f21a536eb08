use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_points, sample_point, ProjPoint, Ring};
use crate::linmat::LinMatrix;
use crate::{Error, Result};

/// Largest exhaustive grid swept by default.
pub const DEFAULT_POINT_CAP: u128 = 2_000_000;

/// Witness points kept in a report.
const MAX_WITNESSES: usize = 16;

const CHUNK: u128 = 2048;

/// How points are chosen for a fiberwise rank check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankStrategy {
    /// Every rational point over each listed prime field.
    Exhaustive { fields: Vec<u64> },
    /// `count` points drawn with ChaCha8 from `seed`, over `F_modulus`.
    Sampled { count: u64, modulus: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub expected_rank: usize,
    pub strategy: RankStrategy,
    pub points_checked: u64,
    pub failure_count: u64,
    /// Smallest failing points in canonical order, at most 16.
    pub failures: Vec<ProjPoint>,
    pub verdict: RankVerdict,
    pub monte_carlo: bool,
    pub caveat: String,
}

/// Check that `m` has rank at least `expected` at the chosen points.
pub fn fiberwise_rank_check(m: &LinMatrix, expected: usize, strategy: &RankStrategy) -> Result<RankReport> {
    fiberwise_rank_check_with_cap(m, expected, strategy, DEFAULT_POINT_CAP)
}

pub fn fiberwise_rank_check_with_cap(
    m: &LinMatrix,
    expected: usize,
    strategy: &RankStrategy,
    cap: u128,
) -> Result<RankReport> {
    if expected > m.rows().min(m.cols()) {
        return Err(Error::ShapeMismatch(format!(
            "expected rank {expected} exceeds min of {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let check_field = |p: u64| match m.ring() {
        Ring::Prime(r) if r != p => Err(Error::FieldMismatch(format!(
            "matrix over GF({r}), points over GF({p})"
        ))),
        _ => Ok(()),
    };
    let mut tally = Tally::default();
    match strategy {
        RankStrategy::Exhaustive { fields } => {
            if fields.is_empty() {
                return Err(Error::EmptyFieldList);
            }
            // validate all grids before sweeping any of them
            let grids = fields
                .iter()
                .map(|&q| {
                    check_field(q)?;
                    enumerate_points(m.space(), q, cap)
                })
                .collect::<Result<Vec<_>>>()?;
            for grid in &grids {
                let chunks: Vec<Range<u128>> = (0..grid.len().div_ceil(CHUNK))
                    .map(|c| c * CHUNK..((c + 1) * CHUNK).min(grid.len()))
                    .collect();
                let parts = chunks
                    .into_par_iter()
                    .map(|r| Tally::sweep(m, expected, r.map(|i| grid.point(i))))
                    .collect::<Result<Vec<_>>>()?;
                parts.into_iter().for_each(|t| tally.merge(t));
            }
        }
        RankStrategy::Sampled { count, modulus, seed } => {
            check_field(*modulus)?;
            if !crate::fp::is_prime(*modulus) {
                return Err(Error::NotPrime(*modulus));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let pts: Vec<ProjPoint> = (0..*count).map(|_| sample_point(m.space(), *modulus, &mut rng)).collect();
            let parts = pts
                .par_chunks(CHUNK as usize)
                .map(|c| Tally::sweep(m, expected, c.iter().cloned()))
                .collect::<Result<Vec<_>>>()?;
            parts.into_iter().for_each(|t| tally.merge(t));
        }
    }
    let monte_carlo = matches!(strategy, RankStrategy::Sampled { .. });
    let verdict = if tally.failure_count > 0 {
        RankVerdict::Fail
    } else if tally.checked == 0 {
        RankVerdict::Inconclusive
    } else {
        RankVerdict::Pass
    };
    let caveat = if monte_carlo {
        "Monte-Carlo: maximal rank at randomly sampled rational points; the degeneracy locus may still be nonempty"
    } else {
        "maximal rank at all tested rational points; not a proof over the algebraic closure"
    };
    Ok(RankReport {
        expected_rank: expected,
        strategy: strategy.clone(),
        points_checked: tally.checked,
        failure_count: tally.failure_count,
        failures: tally.witnesses,
        verdict,
        monte_carlo,
        caveat: caveat.to_string(),
    })
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failure_count: u64,
    witnesses: Vec<ProjPoint>,
}

impl Tally {
    fn sweep(m: &LinMatrix, expected: usize, pts: impl Iterator<Item = ProjPoint>) -> Result<Tally> {
        let mut t = Tally::default();
        for pt in pts {
            t.checked += 1;
            if m.rank_at_point(&pt)? < expected {
                t.failure_count += 1;
                t.witnesses.push(pt);
            }
        }
        t.witnesses.sort();
        t.witnesses.truncate(MAX_WITNESSES);
        Ok(t)
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort();
        self.witnesses.dedup();
        self.witnesses.truncate(MAX_WITNESSES);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{monomial_basis, Monomial, MultiDegree, Polynomial, SpaceSpec};

    fn p1p1() -> SpaceSpec {
        SpaceSpec::new(vec![1, 1]).unwrap()
    }

    fn row(monos: &[Monomial]) -> LinMatrix {
        let entries = monos
            .iter()
            .map(|m| Polynomial::monomial(Ring::Rational, m.clone(), 1))
            .collect();
        LinMatrix::from_entries(&p1p1(), Ring::Rational, 1, monos.len(), MultiDegree(vec![1, 1]), entries).unwrap()
    }

    #[test]
    fn all_bidegree_one_monomials_never_vanish_together() {
        let b = row(&monomial_basis(&p1p1(), &MultiDegree(vec![1, 1])));
        let rep = fiberwise_rank_check(&b, 1, &RankStrategy::Exhaustive { fields: vec![3, 5, 7] }).unwrap();
        assert_eq!(rep.points_checked, 16 + 36 + 64);
        assert_eq!(rep.verdict, RankVerdict::Pass);
        assert!(!rep.monte_carlo);
    }

    #[test]
    fn common_factor_fails_on_its_zero_locus() {
        let b = row(&[Monomial(vec![1, 0, 1, 0]), Monomial(vec![1, 0, 0, 1])]);
        let rep = fiberwise_rank_check(&b, 1, &RankStrategy::Exhaustive { fields: vec![3] }).unwrap();
        assert_eq!(rep.verdict, RankVerdict::Fail);
        assert_eq!(rep.failure_count, 4);
        assert!(rep.failures.iter().all(|p| p.blocks().next().unwrap() == [0, 1]));
    }

    #[test]
    fn sampled_is_reproducible_and_labelled() {
        let b = row(&monomial_basis(&p1p1(), &MultiDegree(vec![1, 1])));
        let s = RankStrategy::Sampled { count: 500, modulus: crate::fp::SAMPLING_PRIME, seed: 9 };
        let r1 = fiberwise_rank_check(&b, 1, &s).unwrap();
        let r2 = fiberwise_rank_check(&b, 1, &s).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.monte_carlo);
        assert_eq!(r1.verdict, RankVerdict::Pass);
    }

    #[test]
    fn errors() {
        let b = row(&[Monomial(vec![1, 0, 1, 0])]);
        assert!(matches!(
            fiberwise_rank_check(&b, 1, &RankStrategy::Exhaustive { fields: vec![] }),
            Err(Error::EmptyFieldList)
        ));
        assert!(matches!(
            fiberwise_rank_check_with_cap(&b, 1, &RankStrategy::Exhaustive { fields: vec![5] }, 10),
            Err(Error::CapExceeded { count: 36, cap: 10 })
        ));
        assert!(fiberwise_rank_check(&b, 2, &RankStrategy::Exhaustive { fields: vec![3] }).is_err());
    }
}
