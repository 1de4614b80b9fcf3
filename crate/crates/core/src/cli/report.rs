use std::fmt::Write as _;

use serde::Serialize;

use crate::branches::BranchReport;
use crate::cone::{SingularPointReport, Verdict};
use crate::subvariety::SubvarietyReport;

pub const SCHEMA_VERSION: u32 = 1;

/// The structured output of one analysis. Every key is always present, in this
/// order; keys that do not apply to a command are `null`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub field: String,
    pub vars: Vec<String>,
    pub multiplicity: Option<u64>,
    pub embedding_dimension: Option<u64>,
    pub essential_rank: Option<usize>,
    pub tangent_count: Option<usize>,
    pub ordinary: Option<Verdict>,
    pub graded_reduced_base: Option<bool>,
    pub graded_reduced_geometric: Option<bool>,
    pub seminormal: Option<bool>,
    pub tangents: Option<Vec<String>>,
    pub tangent_cone: Option<Vec<String>>,
    pub branches: Option<BranchesJson>,
    pub generic_position: Option<bool>,
    pub hilbert_function: Option<Vec<u64>>,
    pub subvariety: Option<SubvarietyJson>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BranchesJson {
    pub complete: bool,
    pub count: usize,
    pub total_order: u64,
    pub ordinary: Option<bool>,
    pub data: Vec<BranchJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BranchJson {
    pub order: u32,
    pub tangent: String,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SubvarietyJson {
    pub defining_vars: Vec<String>,
    pub free_vars: Vec<String>,
    pub e_subvariety: u32,
    pub ordinary_subvariety: Verdict,
    pub exceptional_locus: Option<String>,
    pub open_set: Option<String>,
    pub samples: usize,
    pub sampling_consistent: Option<bool>,
    pub equimultiple_everywhere_sampled: Option<bool>,
    pub closed_point: Option<ClosedPointJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ClosedPointJson {
    pub point: String,
    pub multiplicity: u64,
    pub tangent_count: Option<usize>,
    pub ordinary: Verdict,
    pub normally_flat: bool,
}

impl Report {
    pub fn empty(command: &str, field: &str, vars: Vec<String>) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            field: field.to_string(),
            vars,
            multiplicity: None,
            embedding_dimension: None,
            essential_rank: None,
            tangent_count: None,
            ordinary: None,
            graded_reduced_base: None,
            graded_reduced_geometric: None,
            seminormal: None,
            tangents: None,
            tangent_cone: None,
            branches: None,
            generic_position: None,
            hilbert_function: None,
            subvariety: None,
            notes: Vec::new(),
        }
    }

    pub fn fill_point(&mut self, r: &SingularPointReport) {
        self.multiplicity = Some(r.multiplicity);
        self.embedding_dimension = Some(r.emdim);
        self.essential_rank = r.essential_rank;
        self.tangent_count = r.tangent_count_geometric;
        self.ordinary = Some(r.ordinary);
        self.graded_reduced_base = r.graded_reduced_base;
        self.graded_reduced_geometric = r.graded_reduced_geometric;
        self.seminormal = r.seminormal_flag;
        self.tangents = Some(r.tangent_strings());
        self.tangent_cone = Some(r.tangent_cone.clone());
        self.generic_position = r.tangents_generic_position;
        self.notes.extend(r.notes.iter().cloned());
    }

    pub fn fill_subvariety(&mut self, r: &SubvarietyReport) {
        let locus = r.exceptional_locus.as_ref();
        self.subvariety = Some(SubvarietyJson {
            defining_vars: Vec::new(),
            free_vars: Vec::new(),
            e_subvariety: r.e_subvariety,
            ordinary_subvariety: r.ordinary_subvariety,
            exceptional_locus: locus.map(|l| l.render()),
            open_set: locus.map(|l| l.render_open_set()),
            samples: locus.map_or(0, |l| l.samples.len()),
            sampling_consistent: locus.map(|l| l.sampling_consistent),
            equimultiple_everywhere_sampled: r.equimultiple_everywhere_sampled,
            closed_point: None,
        });
        self.notes.extend(r.notes.iter().cloned());
    }

    /// `key: value` lines in key order.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                if v.is_null() {
                    continue;
                }
                text_entry(&mut out, &k, &v, 0);
            }
        }
        out
    }
}

fn text_entry(out: &mut String, key: &str, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                if !v.is_null() {
                    text_entry(out, k, v, indent + 1);
                }
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for item in items {
                let _ = writeln!(out, "{pad}  - {}", scalar_text(item));
            }
        }
        Value::Array(items) if key == "notes" => {
            for item in items {
                let _ = writeln!(out, "{pad}note: {}", scalar_text(item));
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar_text(v));
        }
    }
}

/// Plain rendering of a JSON value: strings unquoted, lists comma separated.
pub fn scalar_text(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar_text(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

pub(crate) fn branches_json(r: &BranchReport) -> BranchesJson {
    BranchesJson {
        complete: r.complete,
        count: r.branch_count(),
        total_order: r.total_order,
        ordinary: r.ordinary(),
        data: r
            .data
            .iter()
            .map(|d| BranchJson {
                order: d.order,
                tangent: d.tangent_text(&r.vars),
                count: d.geometric_count,
            })
            .collect(),
    }
}
