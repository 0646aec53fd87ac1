//! Check reports: per-condition verdicts with re-checkable witnesses.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<String>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub conditions: Vec<ConditionResult>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { verdict: Verdict::Pass, conditions: Vec::new() }
    }

    pub fn push(&mut self, cond: ConditionResult) {
        if cond.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
        self.conditions.push(cond);
    }

    pub fn condition(
        &mut self,
        id: &str,
        violations: Vec<Violation>,
        info: Option<String>,
    ) {
        let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
        self.push(ConditionResult { id: id.to_string(), verdict, info, violations });
    }

    /// Informational entry that never affects the overall verdict.
    pub fn note(&mut self, id: &str, info: String) {
        self.conditions.push(ConditionResult {
            id: id.to_string(),
            verdict: Verdict::Pass,
            info: Some(info),
            violations: Vec::new(),
        });
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn merge(&mut self, other: CheckReport) {
        for c in other.conditions {
            self.push(c);
        }
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.conditions.iter().flat_map(|c| c.violations.iter()).next()
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        Self::new()
    }
}

pub fn violation(condition: &str, witness: &[&str], detail: &str) -> Violation {
    Violation {
        condition: condition.to_string(),
        witness: witness.iter().map(|s| s.to_string()).collect(),
        detail: detail.to_string(),
    }
}
