//! Machine-readable verification records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded finding; never fails a run.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Short identifier of the property being checked, e.g. `acceptance-3`
    /// or `associativity`.
    pub tag: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input_digest: Option<String>,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Default for Report {
    fn default() -> Self {
        Report::new()
    }
}

impl Report {
    pub fn new() -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            input_digest: None,
            config: BTreeMap::new(),
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn set_config(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    pub fn check(&mut self, name: impl Into<String>, tag: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            tag: tag.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witness: Value::Null,
        })
    }

    pub fn info(&mut self, name: impl Into<String>, tag: impl Into<String>, detail: impl Into<String>) -> &mut Check {
        self.push(Check { name: name.into(), tag: tag.into(), status: Status::Info, detail: detail.into(), witness: Value::Null })
    }

    pub fn push(&mut self, check: Check) -> &mut Check {
        self.checks.push(check);
        self.checks.last_mut().unwrap()
    }

    pub fn table(&mut self, table: Table) {
        self.tables.push(table);
    }

    /// Appends the checks and tables of `other`, prefixing check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.checks.push(c);
        }
        self.tables.extend(other.tables);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check, for terminals.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out.push_str(&format!("{mark} {} ({}): {}\n", c.name, c.tag, c.detail));
        }
        out
    }
}

impl Check {
    pub fn with_witness(&mut self, witness: Value) -> &mut Self {
        self.witness = witness;
        self
    }
}
