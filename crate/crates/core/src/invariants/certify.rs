use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::MultiDegree;
use crate::certificate::{Certificate, Step, StepStatus, Verdict};
use crate::cohom::{h0_wedge_kernel, les_cohom, wedge_domain_dim, TwoTermResolution};
use crate::invariants::{candidate_twists, kernel_numerics, Polarization};
use crate::monad::{display_ranks, MonadInstance};
use crate::Result;

/// Largest `C(beta, q) h^0(O(B))` computed per cell by default.
pub const DEFAULT_CELL_CAP: u64 = 100_000;

const HOPPE: &str = "generalized Hoppe criterion";
const NORMALIZATION: &str = "degree, slope and L-normalization via intersection numbers";
const WEDGE: &str = "exterior power sequence of a kernel bundle; left exactness of global sections";

enum CellValue {
    Computed(usize),
    Skipped(BigInt),
}

struct Cell {
    q: usize,
    twist: MultiDegree,
    boundary: bool,
    value: CellValue,
}

impl Cell {
    fn json(&self) -> Value {
        match &self.value {
            CellValue::Computed(h) => json!({"q": self.q, "twist": self.twist, "h0": h}),
            CellValue::Skipped(n) => json!({"q": self.q, "twist": self.twist, "skipped": true, "domain_dim": n.to_string()}),
        }
    }
}

pub fn stability_certificate(inst: &MonadInstance, pol: &Polarization) -> Result<Certificate> {
    stability_certificate_with_cap(inst, pol, DEFAULT_CELL_CAP)
}

/// Certificate that `T = ker B` is stable: `deg_L T < 0`, then
/// `h^0(Λ^q T ⊗ O(B)) = 0` for every `1 <= q < rank T` and every
/// `B >= 0` with `delta_L(B) < -q mu_L(T)`, then Hoppe's criterion.
///
/// Cells whose section space exceeds `cap` are skipped and make the
/// verdict inconclusive. Threshold cells (`delta_L(B) = -q mu_L(T)`) are
/// computed and reported for the semistability form of the criterion but
/// do not affect the verdict.
pub fn stability_certificate_with_cap(inst: &MonadInstance, pol: &Polarization, cap: u64) -> Result<Certificate> {
    let spec = inst.spec();
    let space = spec.space();
    let num = kernel_numerics(spec, pol)?;
    let negative = num.deg < BigInt::from(0);
    let mut steps = vec![Step::exact(
        "deg_L T < 0",
        NORMALIZATION,
        json!({"polarization": pol.weights(), "gamma": spec.gamma(), "beta": spec.beta()}),
        json!({"numerics": num, "normalized": num.k_norm == 0}),
        if negative { StepStatus::Pass } else { StepStatus::Fail },
    )];

    let mut jobs = Vec::new();
    if negative {
        for q in 1..num.rank {
            let c = candidate_twists(space, pol, &num, q)?;
            jobs.extend(c.strict.into_iter().map(|t| (q, t, false)));
            jobs.extend(c.boundary.into_iter().map(|t| (q, t, true)));
        }
    }
    let cap = BigInt::from(cap);
    let cells = jobs
        .into_par_iter()
        .map(|(q, twist, boundary)| {
            let n = wedge_domain_dim(space, spec.beta(), q, &twist);
            let value = if n > cap {
                CellValue::Skipped(n)
            } else {
                CellValue::Computed(h0_wedge_kernel(inst.b(), q, &twist)?)
            };
            Ok(Cell { q, twist, boundary, value })
        })
        .collect::<Result<Vec<_>>>()?;

    let (strict, boundary): (Vec<&Cell>, Vec<&Cell>) = cells.iter().partition(|c| !c.boundary);
    let status = if !negative {
        StepStatus::Inconclusive
    } else if strict.iter().any(|c| matches!(c.value, CellValue::Computed(h) if h > 0)) {
        StepStatus::Fail
    } else if strict.iter().any(|c| matches!(c.value, CellValue::Skipped(_))) {
        StepStatus::Inconclusive
    } else {
        StepStatus::Pass
    };
    steps.push(Step::exact(
        "h^0(Λ^q T ⊗ O(B)) = 0 for 1 <= q < rank T and B >= 0 with delta_L(B) < -q mu_L(T)",
        WEDGE,
        json!({"cap": cap.to_string(), "excluded": "twists with a negative component: H^0(Λ^q O^beta (B)) = 0 already"}),
        Value::Array(strict.iter().map(|c| c.json()).collect()),
        status,
    ));
    let semistable = boundary.iter().all(|c| matches!(c.value, CellValue::Computed(0)));
    steps.push(Step::exact(
        "threshold cells delta_L(B) = -q mu_L(T) computed (semistability form; does not affect the verdict)",
        WEDGE,
        json!({}),
        json!({"cells": boundary.iter().map(|c| c.json()).collect::<Vec<_>>(), "all_zero": semistable}),
        StepStatus::Pass,
    ));
    let premise = steps.iter().all(|s| s.status == StepStatus::Pass);
    steps.push(Step::implication(
        "T is stable with respect to L",
        HOPPE,
        json!({"premises": "steps 1 and 2"}),
        if premise { StepStatus::Pass } else { StepStatus::Inconclusive },
    ));
    let subject = json!({"spec": spec, "polarization": pol.weights(), "bundle": "T = ker B"});
    Ok(Certificate::from_steps("the kernel bundle T is stable", subject, steps, Verdict::Stable))
}

/// Certificate that the cohomology bundle `E` is simple.
///
/// Step 1 needs stability of `T`: pass a stability certificate to use its
/// verdict, or `None` to cite the stability theorem for these kernels.
pub fn simplicity_certificate(
    inst: &MonadInstance,
    pol: &Polarization,
    stability: Option<&Certificate>,
) -> Result<Certificate> {
    let spec = inst.spec();
    let ranks = display_ranks(spec)?;
    let w = spec.weights();
    let (status1, source) = match stability {
        None => (StepStatus::Pass, json!("cited: stability of kernels of linear monads (generalized Hoppe criterion)")),
        Some(c) => {
            let s = match c.verdict {
                Verdict::Stable => StepStatus::Pass,
                Verdict::RefutedStep => StepStatus::Fail,
                _ => StepStatus::Inconclusive,
            };
            (s, json!({"certificate_verdict": c.verdict}))
        }
    };
    let mut steps = vec![Step::implication(
        "T stable implies T simple: h^0(T ⊗ T*) = 1",
        "stable bundles are simple",
        json!({"stability": source}),
        status1,
    )];

    let twist = w.scale(-1);
    let table = les_cohom(&TwoTermResolution::kernel_dual_of(inst.b())?, &twist)?;
    let vanish = table.h(0).is_zero() && table.h(1).is_zero();
    let status2 = if vanish {
        StepStatus::Pass
    } else if table.h(0).is_exact() && table.h(1).is_exact() {
        StepStatus::Fail
    } else {
        StepStatus::Inconclusive
    };
    steps.push(Step::exact(
        "h^0(T*(-w)) = 0 and h^1(T*(-w)) = 0",
        "Bott formula, Kunneth formula, long exact sequence of 0 -> O(-w)^gamma -> O^beta -> T* -> 0",
        json!({"twist": twist}),
        serde_json::to_value(&table)?,
        status2,
    ));
    let ok2 = status2 == StepStatus::Pass;
    let follows = |ok: bool| if ok { StepStatus::Pass } else { StepStatus::Inconclusive };
    steps.push(Step::implication(
        "h^0(T ⊗ T*) = h^0(E ⊗ T*)",
        "long exact sequence of 0 -> O(-w)^alpha -> T -> E -> 0 tensored with T*",
        json!({"uses": "step 2"}),
        follows(ok2),
    ));
    steps.push(Step::implication(
        "h^0(E ⊗ E*) <= h^0(E ⊗ T*)",
        "left exactness of global sections on 0 -> E* -> T* -> O(w)^alpha -> 0 tensored with E",
        json!({}),
        StepStatus::Pass,
    ));
    let chain = ok2 && status1 == StepStatus::Pass;
    steps.push(Step::implication(
        "h^0(E ⊗ E*) = 1",
        "1 <= h^0(E ⊗ E*) <= h^0(E ⊗ T*) = h^0(T ⊗ T*) = 1",
        json!({"rank_E": ranks.e}),
        follows(chain),
    ));
    let subject = json!({"spec": spec, "polarization": pol.weights(), "bundle": "E = ker B / im A"});
    Ok(Certificate::from_steps("the cohomology bundle E is simple", subject, steps, Verdict::Simple))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linmat::{global_sections_map, kernel_dim};
    use crate::linmat::LinMatrix;
    use crate::monad::{build_floystad, build_monad, Construction, MonadSpec};

    fn pol(v: &[i64]) -> Polarization {
        Polarization::new(MultiDegree(v.to_vec())).unwrap()
    }

    #[test]
    fn p1_square_is_stable() {
        let inst = build_monad(&MonadSpec::p1_power(2, 1).unwrap(), 0).unwrap();
        let c = stability_certificate(&inst, &pol(&[1, 1])).unwrap();
        assert_eq!(c.verdict, Verdict::Stable);
        assert_eq!(c.steps[1].value.as_array().unwrap().len(), 4);
    }

    #[test]
    fn p3_is_stable() {
        let c = stability_certificate(&build_floystad(1, 1).unwrap(), &pol(&[1])).unwrap();
        assert_eq!(c.verdict, Verdict::Stable);
    }

    #[test]
    fn repeated_column_refutes() {
        let inst = build_floystad(1, 1).unwrap();
        let b: LinMatrix = inst.b().with_duplicated_column(0);
        let a = inst.a().clone();
        let s = inst.spec();
        let spec = MonadSpec::type_ii(s.space().clone(), MultiDegree(vec![1]), 1, 5, 1).unwrap();
        let mut a5 = LinMatrix::zeros(s.space(), a.ring(), 5, 1, MultiDegree(vec![1])).unwrap();
        for r in 0..4 {
            a5.set(r, 0, a.get(r, 0).clone()).unwrap();
        }
        let doctored = MonadInstance::new(spec, Construction::Band { n1: 1, n2: 1 }, a5, b).unwrap();
        let c = stability_certificate(&doctored, &pol(&[1])).unwrap();
        assert_eq!(c.verdict, Verdict::RefutedStep);
    }

    #[test]
    fn first_cell_is_section_kernel() {
        let inst = build_monad(&MonadSpec::p1_power(2, 1).unwrap(), 0).unwrap();
        let c = stability_certificate(&inst, &pol(&[1, 1])).unwrap();
        let zero = MultiDegree(vec![0, 0]);
        let cell = c.steps[1]
            .value
            .as_array()
            .unwrap()
            .iter()
            .find(|v| v["q"] == json!(1) && v["twist"] == json!(zero))
            .unwrap()
            .clone();
        let m = global_sections_map(inst.b(), &zero).unwrap();
        assert_eq!(cell["h0"], json!(kernel_dim(&m)));
    }

    #[test]
    fn cap_makes_it_inconclusive() {
        let inst = build_monad(&MonadSpec::p1_power(2, 1).unwrap(), 0).unwrap();
        let c = stability_certificate_with_cap(&inst, &pol(&[1, 1]), 3).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn simplicity_examples() {
        let p3 = build_floystad(1, 1).unwrap();
        let st = stability_certificate(&p3, &pol(&[1])).unwrap();
        let c = simplicity_certificate(&p3, &pol(&[1]), Some(&st)).unwrap();
        assert_eq!(c.verdict, Verdict::Simple);

        let big = build_monad(&MonadSpec::type_i(1, 2, 1, 16, 1).unwrap(), 0).unwrap();
        let c = simplicity_certificate(&big, &pol(&[1, 1]), None).unwrap();
        assert_eq!(c.verdict, Verdict::Simple);

        let sq = build_monad(&MonadSpec::p1_power(2, 1).unwrap(), 0).unwrap();
        let c = simplicity_certificate(&sq, &pol(&[1, 1]), None).unwrap();
        assert_eq!(c.verdict, Verdict::RefutedStep);
        assert_eq!(c.steps[1].status, StepStatus::Fail);
        assert_eq!(c.steps[1].value["dims"][1]["lo"], json!(1));
    }

    #[test]
    fn failed_stability_blocks_simplicity() {
        let p3 = build_floystad(1, 1).unwrap();
        let mut st = stability_certificate(&p3, &pol(&[1])).unwrap();
        st.verdict = Verdict::RefutedStep;
        let c = simplicity_certificate(&p3, &pol(&[1]), Some(&st)).unwrap();
        assert_eq!(c.verdict, Verdict::RefutedStep);
    }
}
