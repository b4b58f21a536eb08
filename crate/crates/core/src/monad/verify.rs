use serde_json::json;

use crate::certificate::{Certificate, Step, StepStatus, Verdict};
use crate::linmat::{fiberwise_rank_check_with_cap, mat_mul, RankStrategy, RankVerdict, DEFAULT_POINT_CAP};
use crate::monad::MonadInstance;
use crate::{Error, Result};

const CITATION: &str = "definition of a monad: A injective and B surjective on fibers, BA = 0";

/// Check `BA = 0` symbolically and the fiberwise ranks of `B` and `A`.
pub fn verify_monad(inst: &MonadInstance, strategy: &RankStrategy) -> Result<Certificate> {
    verify_monad_with_cap(inst, strategy, DEFAULT_POINT_CAP)
}

pub fn verify_monad_with_cap(inst: &MonadInstance, strategy: &RankStrategy, cap: u128) -> Result<Certificate> {
    let spec = inst.spec();
    let ba = mat_mul(inst.b(), inst.a())?;
    let nonzero = (0..ba.rows())
        .flat_map(|r| (0..ba.cols()).map(move |c| (r, c)))
        .filter(|&(r, c)| !ba.get(r, c).is_zero())
        .map(|(r, c)| json!({"row": r, "col": c, "entry": ba.get(r, c).to_string()}))
        .collect::<Vec<_>>();
    let status = if nonzero.is_empty() { StepStatus::Pass } else { StepStatus::Fail };
    let mut steps = vec![Step::exact(
        "BA = 0",
        CITATION,
        json!({"shape": [ba.rows(), ba.cols()]}),
        json!({"nonzero_entries": nonzero}),
        status,
    )];
    for (claim, m, expected) in [
        ("B has rank gamma at every tested point", inst.b(), spec.gamma()),
        ("A has rank alpha at every tested point", inst.a(), spec.alpha()),
    ] {
        let step = match fiberwise_rank_check_with_cap(m, expected, strategy, cap) {
            Ok(report) => {
                let status = match report.verdict {
                    RankVerdict::Pass => StepStatus::Pass,
                    RankVerdict::Fail => StepStatus::Fail,
                    RankVerdict::Inconclusive => StepStatus::Inconclusive,
                };
                Step::exact(claim, CITATION, json!({"expected_rank": expected}), serde_json::to_value(&report)?, status)
            }
            Err(e @ Error::CapExceeded { .. }) => Step::exact(
                claim,
                CITATION,
                json!({"expected_rank": expected, "strategy": strategy}),
                json!({"skipped": e.to_string()}),
                StepStatus::Inconclusive,
            ),
            Err(e) => return Err(e),
        };
        steps.push(step);
    }
    let subject = json!({"spec": spec, "construction": inst.construction()});
    Ok(Certificate::from_steps("the matrices define a monad", subject, steps, Verdict::Pass))
}
