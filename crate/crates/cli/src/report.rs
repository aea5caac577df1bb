use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    SkippedSlow,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// `cNN.…`, where `NN` is the acceptance criterion the check belongs to.
    pub id: String,
    /// The claim being checked, in words.
    pub claim: String,
    pub status: Status,
    pub payload: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, claim: impl Into<String>, ok: bool, payload: Value) -> Self {
        Check { id: id.into(), claim: claim.into(), status: Status::from_bool(ok), payload }
    }

    pub fn skipped(id: impl Into<String>, claim: impl Into<String>) -> Self {
        Check { id: id.into(), claim: claim.into(), status: Status::SkippedSlow, payload: Value::Null }
    }

    /// Criterion number parsed from the id prefix.
    pub fn criterion(&self) -> Option<u32> {
        self.id.strip_prefix('c')?.split('.').next()?.parse().ok()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub slow: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, slow: bool, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport { suite: suite.to_string(), seed, slow, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Status of one criterion: failing if any of its checks fails,
    /// skipped if all of them were skipped.
    pub fn criterion_status(&self, n: u32) -> Option<Status> {
        let checks: Vec<&Check> = self.checks.iter().filter(|c| c.criterion() == Some(n)).collect();
        if checks.is_empty() {
            return None;
        }
        if checks.iter().any(|c| c.status == Status::Fail) {
            Some(Status::Fail)
        } else if checks.iter().all(|c| c.status == Status::SkippedSlow) {
            Some(Status::SkippedSlow)
        } else {
            Some(Status::Pass)
        }
    }

    pub fn failing(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }
}

/// Pretty JSON with object keys in sorted order.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report values serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values print");
    s.push('\n');
    s
}
