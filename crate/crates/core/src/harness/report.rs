use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::config::ExperimentConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Homological degrees the check asserts something about.
    pub degrees_checked: Vec<i64>,
    /// Vertices (or other items) examined.
    pub checked: usize,
    /// Vertices left out because the window truncates their links.
    pub skipped_boundary: usize,
    /// Numbers tracked by the stability sweep.
    pub metrics: BTreeMap<String, i64>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl CheckRecord {
    pub fn new(name: &str, pass: bool) -> Self {
        CheckRecord {
            name: name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            degrees_checked: Vec::new(),
            checked: 0,
            skipped_boundary: 0,
            metrics: BTreeMap::new(),
            details: Value::Null,
            wall_ms: None,
        }
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        CheckRecord {
            status: Status::Skipped,
            details: serde_json::json!({ "reason": reason }),
            ..CheckRecord::new(name, true)
        }
    }

    pub fn failed(name: &str, error: &str) -> Self {
        CheckRecord {
            details: serde_json::json!({ "error": error }),
            ..CheckRecord::new(name, false)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionStats {
    pub vertices: usize,
    pub cubes: Vec<usize>,
    pub interior_vertices: usize,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: ExperimentConfig,
    /// Resolved region parameters.
    pub region_spec: Value,
    pub seeds: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionStats>,
    /// Set when the region could not be built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region_error: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.region_error.is_none() && self.summary.failed == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

pub fn summarise(checks: &[CheckRecord]) -> Summary {
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Summary {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
    }
}
