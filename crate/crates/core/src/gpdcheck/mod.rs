//! Exhaustive verification of finite topological groupoids.
//!
//! Every check is total: failures become report entries with the first
//! counterexample found, never panics or errors.

mod algebra;
mod identifications;
mod pointset;
mod topology;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub use algebra::check_algebraic_axioms;
pub use identifications::{check_subspace_identifications, simply_connected_iso};
pub use pointset::point_set_report;
pub use topology::{check_local_trivial_etale, check_r_times_s, check_topological};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_evaluated: Vec<String>,
    #[serde(flatten)]
    pub facts: BTreeMap<String, Value>,
}

impl CheckReport {
    pub(crate) fn new() -> Self {
        CheckReport { pass: true, witness: None, not_evaluated: Vec::new(), facts: BTreeMap::new() }
    }

    /// Records a failed property; the first witness is kept.
    pub(crate) fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }

    pub(crate) fn fact(&mut self, key: &str, value: impl Into<Value>) {
        self.facts.insert(key.to_string(), value.into());
    }

    /// Records a boolean property, failing the report with `witness` when
    /// it is false and `required`.
    pub(crate) fn property(&mut self, key: &str, holds: bool, required: bool, witness: Option<String>) {
        self.fact(key, holds);
        if !holds && required {
            self.fail(witness.unwrap_or_else(|| format!("{key} fails")));
        }
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        self.facts.get(key).and_then(Value::as_bool)
    }
}
