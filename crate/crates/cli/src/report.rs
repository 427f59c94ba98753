//! Report records and their serialization (one JSON object per line).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One cell of a run. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    pub evidence: String,
    pub flags: Vec<String>,
    pub summary: String,
    pub witnesses: Vec<String>,
    /// Wall-clock milliseconds; `null` when timing is disabled.
    pub timing_ms: Option<u64>,
}

impl CheckReport {
    pub fn sort_key(&self) -> (String, Vec<(String, String)>) {
        (
            self.check.clone(),
            self.parameters.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        )
    }
}

pub fn to_jsonl(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

pub fn from_jsonl(text: &str) -> serde_json::Result<Vec<CheckReport>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

/// Write to `path`, or to stdout for `-`.
pub fn write_report(path: &Path, reports: &[CheckReport]) -> std::io::Result<()> {
    let text = to_jsonl(reports);
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::fs::write(path, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip() {
        let r = CheckReport {
            check: "c".into(),
            anchor: "a".into(),
            parameters: [("lambda".to_string(), "(1,1)".to_string())].into_iter().collect(),
            status: Status::Fail,
            evidence: "exact".into(),
            flags: vec![],
            summary: String::new(),
            witnesses: vec!["w".into()],
            timing_ms: None,
        };
        let text = to_jsonl(&[r.clone(), r.clone()]);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("{\"check\":\"c\",\"anchor\":\"a\",\"parameters\""));
        assert!(text.contains("\"status\":\"fail\""));
        assert_eq!(from_jsonl(&text).unwrap(), vec![r.clone(), r]);
    }
}
