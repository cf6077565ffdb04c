//! The JSONL report schema: one experiment per line, every field optional
//! except `command`.
//!
//! Fields are declared (and therefore serialized) in alphabetical order so
//! that a report line survives a parse-and-reserialize cycle through generic
//! JSON tooling byte-for-byte — `serde_json`'s maps sort their keys.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Default, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    /// Mean pairwise distance as an exact fraction "p/q".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_distance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_distance_float: Option<f64>,
    /// Certified lower bound on the returned set size, as "p/q".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_float: Option<f64>,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<usize>,
    /// Candidate sets the exact search tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explored: Option<u64>,
    /// Input path, or a generator descriptor for built-in instances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    /// Average-distance floor sqrt(6n / avg); display-only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jensen_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Copy count L of a gadget instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_file: Option<String>,
    /// Layerwise-independent set left after conflict pruning.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pruned_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    /// "clique" or "independent_set" for the diameter-2 extraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    /// Wall-clock per phase in milliseconds; only present with --timings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    /// Vertices of the failing pair or triple when verification said no.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), ..Report::default() }
    }

    /// One JSONL line, newline included.
    pub fn to_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("report serialization cannot fail");
        line.push('\n');
        line
    }
}
