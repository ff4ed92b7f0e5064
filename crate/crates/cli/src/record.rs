use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// One JSONL line of `exact` or `bound` output.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: u32,
    /// Canonical code of the instance.
    pub id: String,
    /// 1-based position in the input.
    pub record: usize,
    pub line: usize,
    pub n: usize,
    pub k: usize,
    pub bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma2d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap_exceeded: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor_set: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub used_fallback: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anomalies: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}
