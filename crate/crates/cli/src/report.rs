//! Machine-readable reports. Every report carries the schema tag so that
//! consumers can detect format changes.

use serde::{Deserialize, Serialize};

use crate::suites::{PropertyCheck, RingSuiteOutcome};
use crate::sweep::SweepOutcome;

pub const SCHEMA: &str = "bredon-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelValue {
    pub level: u64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// `MATCH`, `MISMATCH` or `UNREACHABLE`.
    pub status: String,
    pub detail: String,
    pub levels: Vec<LevelValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub grading: String,
    pub fixed_dims: Vec<(u64, i64)>,
    pub classification: Option<String>,
    pub group: Option<String>,
    pub mackey: Option<String>,
    pub summary: String,
    pub oracle: Option<OracleCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub schema: String,
    pub n: u64,
    pub coefficients: String,
    pub rows: Vec<CohomologyRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingProductReport {
    pub schema: String,
    pub n: u64,
    pub left: String,
    pub right: String,
    pub grading: String,
    pub group: String,
    pub value: String,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSuiteReport {
    pub schema: String,
    pub n: u64,
    pub seed: u64,
    pub outcome: RingSuiteOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: String,
    pub n: u64,
    pub coefficients: String,
    pub max_factors: usize,
    pub spheres: usize,
    pub outcome: SweepOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertiesReport {
    pub schema: String,
    pub n: u64,
    pub seed: u64,
    pub gradings: usize,
    pub checks: Vec<PropertyCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessRow {
    pub label: String,
    pub grading: String,
    pub isotropy: u64,
    pub dims_direct: Vec<(u64, i64)>,
    pub dims_floor: Vec<(u64, i64)>,
    pub mismatch: bool,
    /// Whether this cell is below every later cell in the order.
    pub below_later: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub schema: String,
    pub kind: String,
    pub n: u64,
    pub passes: bool,
    pub odd_cells: Vec<usize>,
    pub offending_pairs: Vec<(usize, usize)>,
    pub basis_size: usize,
    pub rows: Vec<FreenessRow>,
}

/// Any report the CLI emits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum Report {
    Cohomology(CohomologyReport),
    RingProduct(RingProductReport),
    RingSuite(RingSuiteReport),
    Oracle(OracleReport),
    Properties(PropertiesReport),
    Freeness(FreenessReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(src: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(src)
    }
}
