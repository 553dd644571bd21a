//! Machine-readable reports with a stable schema: `command`, `parameters`,
//! `verified`, `cleared_is_zero`, `term_counts`, `timing_ms`. Timing is the
//! only nondeterministic field and is excluded from golden comparisons.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub verified: bool,
    pub cleared_is_zero: bool,
    pub term_counts: Vec<usize>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            parameters: Map::new(),
            verified: false,
            cleared_is_zero: false,
            term_counts: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}
