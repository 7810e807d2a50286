//! JSON reports for verification runs. Every number that is not a count is
//! written as an exact fraction string.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl Inputs {
    pub fn new(n: Option<usize>, g: Option<usize>) -> Self {
        Inputs {
            n,
            g,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Values stated in the source text.
    #[serde(rename = "paper")]
    Stated,
    /// Values obtained by an independent computation or a short argument.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub source: Source,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub values: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim_id: String,
    pub inputs: Inputs,
    pub computed: Value,
    pub expected: Expected,
    pub pass: bool,
    pub wall_time_ms: u64,
}

/// Builds a report, timing from `started`.
pub fn report(claim_id: &str, inputs: Inputs, computed: Value, expected: Expected, pass: bool, started: Instant) -> Report {
    Report {
        claim_id: claim_id.to_string(),
        inputs,
        computed,
        expected,
        pass,
        wall_time_ms: started.elapsed().as_millis() as u64,
    }
}

pub fn stated(values: Value) -> Expected {
    Expected {
        source: Source::Stated,
        values,
    }
}

pub fn derived(values: Value) -> Expected {
    Expected {
        source: Source::Derived,
        values,
    }
}
