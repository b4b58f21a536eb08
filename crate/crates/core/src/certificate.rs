//! Machine-checkable certificates: an ordered list of exact computations
//! and cited implications, with a verdict derived from the steps.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactComputation,
    RecordedImplication,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    Pass,
    Fail,
    /// Not decided, e.g. skipped because of a resource cap.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub claim: String,
    pub method: Method,
    pub citation: String,
    pub inputs: Value,
    pub value: Value,
    pub status: StepStatus,
}

impl Step {
    pub fn exact(claim: impl Into<String>, citation: impl Into<String>, inputs: Value, value: Value, status: StepStatus) -> Step {
        Step {
            claim: claim.into(),
            method: Method::ExactComputation,
            citation: citation.into(),
            inputs,
            value,
            status,
        }
    }

    pub fn implication(claim: impl Into<String>, citation: impl Into<String>, inputs: Value, status: StepStatus) -> Step {
        Step {
            claim: claim.into(),
            method: Method::RecordedImplication,
            citation: citation.into(),
            inputs,
            value: Value::Null,
            status,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Stable,
    Simple,
    RefutedStep,
    Inconclusive,
}

impl Verdict {
    /// Exit-code class: 0 for a positive verdict, 3 refuted, 4 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Stable | Verdict::Simple => 0,
            Verdict::RefutedStep => 3,
            Verdict::Inconclusive => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub claim: String,
    pub subject: Value,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl Certificate {
    /// Assemble a certificate; any failed step refutes, otherwise any
    /// inconclusive step makes the verdict inconclusive, otherwise `success`.
    pub fn from_steps(claim: impl Into<String>, subject: Value, steps: Vec<Step>, success: Verdict) -> Certificate {
        let verdict = if steps.iter().any(|s| s.status == StepStatus::Fail) {
            Verdict::RefutedStep
        } else if steps.iter().any(|s| s.status == StepStatus::Inconclusive) {
            Verdict::Inconclusive
        } else {
            success
        };
        Certificate {
            schema: crate::SCHEMA.to_string(),
            claim: claim.into(),
            subject,
            steps,
            verdict,
        }
    }

    pub fn step(&self, claim_prefix: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.claim.starts_with(claim_prefix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn step(status: StepStatus) -> Step {
        Step::exact("x", "none", json!({}), json!(0), status)
    }

    #[test]
    fn verdict_follows_steps() {
        let c = Certificate::from_steps("c", json!(null), vec![step(StepStatus::Pass)], Verdict::Stable);
        assert_eq!(c.verdict, Verdict::Stable);
        let c = Certificate::from_steps(
            "c",
            json!(null),
            vec![step(StepStatus::Inconclusive), step(StepStatus::Fail)],
            Verdict::Stable,
        );
        assert_eq!(c.verdict, Verdict::RefutedStep);
        let c = Certificate::from_steps("c", json!(null), vec![step(StepStatus::Inconclusive)], Verdict::Simple);
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(serde_json::to_value(Verdict::RefutedStep).unwrap(), json!("refuted-step"));
    }
}
