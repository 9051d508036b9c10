//! The JSON document every subcommand emits.
//!
//! Payloads are built as `serde_json::Value`, whose objects keep their keys
//! sorted, so a document parsed back from its own output re-serializes to the
//! same bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub command: String,
    /// Semantic inputs only; thread counts and cache paths are left out.
    pub params: Value,
    pub result: Value,
    pub tool_version: String,
}

impl ReportDocument {
    pub fn new(command: &str, params: Value, result: Value) -> ReportDocument {
        ReportDocument {
            command: command.to_string(),
            params,
            result,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn parse(text: &str) -> serde_json::Result<ReportDocument> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("Value always serializes");
        out.push('\n');
        out
    }
}
