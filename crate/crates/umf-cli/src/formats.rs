//! JSON schemas for groups, subgroups, flows, morphisms, and witnesses.
//!
//! Data files follow fixed shapes: groups are
//! `{"name", "order", "table", "labels"?}` with the identity at index 0
//! (the loader relabels and warns otherwise), subgroups are
//! `{"group", "elements"}`, flows are
//! `{"group": name-or-inline, "size", "action", "base_point"?}` with one
//! action row per group element, morphisms are `{"map", "checked"}`.
//! Reports carry a `schema_version` field. Serialization is deterministic:
//! struct fields keep declaration order and all maps are ordered.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use umf_core::extension::{ExtensionWitness, InstanceWitness};
use umf_core::flow::Flow;
use umf_core::group::{make_group, Group, GroupError};
use umf_core::report::VerificationReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

impl GroupJson {
    pub fn from_group(g: &Group) -> GroupJson {
        GroupJson {
            name: g.name().to_string(),
            order: g.order(),
            table: g.elements().map(|a| g.row(a).to_vec()).collect(),
            labels: g.labels().map(|l| {
                l.iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect()
            }),
        }
    }

    /// Validate into a [`Group`]; the boolean is true when the identity had
    /// to be relabeled to index 0. Labels survive the trip unless a relabel
    /// made their indices stale, in which case they are dropped.
    pub fn to_group(&self) -> Result<(Group, bool), GroupError> {
        let mut g = make_group(&self.table, &self.name)?;
        let relabeled = g.was_relabeled();
        if let (false, Some(labels)) = (relabeled, &self.labels) {
            let parsed: Result<BTreeMap<usize, String>, _> = labels
                .iter()
                .map(|(k, v)| k.parse::<usize>().map(|i| (i, v.clone())))
                .collect();
            if let Ok(map) = parsed {
                g = g.with_labels(map);
            }
        }
        Ok((g, relabeled))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub group: String,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRefJson {
    Name(String),
    Inline(GroupJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowJson {
    pub group: GroupRefJson,
    pub size: usize,
    pub action: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_point: Option<usize>,
}

impl FlowJson {
    pub fn from_flow(flow: &Flow, inline_group: bool) -> FlowJson {
        let group = if inline_group {
            GroupRefJson::Inline(GroupJson::from_group(flow.group()))
        } else {
            GroupRefJson::Name(flow.group().name().to_string())
        };
        FlowJson {
            group,
            size: flow.size(),
            action: flow
                .group()
                .elements()
                .map(|g| flow.action_row(g).to_vec())
                .collect(),
            base_point: flow.base_point(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismJson {
    pub map: Vec<usize>,
    pub checked: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckJson {
    pub pass: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn checks_to_json(report: &VerificationReport) -> BTreeMap<String, CheckJson> {
    report
        .checks
        .iter()
        .map(|c| {
            (
                c.name.clone(),
                CheckJson {
                    pass: c.pass,
                    cases: c.cases,
                    witness: c.witness.clone(),
                },
            )
        })
        .collect()
}

/// One pipeline witness: everything needed to re-audit the run.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub kind: String,
    pub group: String,
    pub subgroup: Vec<usize>,
    pub section: Vec<usize>,
    pub cocycle: Vec<Vec<usize>>,
    pub twisted_flow: FlowJson,
    pub phi: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_isomorphism: Option<MorphismJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary_form_equivariant: Option<bool>,
    pub pass: bool,
    pub checks: BTreeMap<String, CheckJson>,
}

impl WitnessJson {
    pub fn from_witness(w: &ExtensionWitness) -> WitnessJson {
        let m = w.cocycle.coset_count();
        let cocycle_rows: Vec<Vec<usize>> = w
            .group
            .elements()
            .map(|g| (0..m).map(|c| w.cocycle.value(g, c)).collect())
            .collect();
        WitnessJson {
            kind: w.kind.label().to_string(),
            group: w.group.name().to_string(),
            subgroup: w.subgroup.elements().to_vec(),
            section: w.section.table().to_vec(),
            cocycle: cocycle_rows,
            twisted_flow: FlowJson::from_flow(&w.twisted_flow, false),
            phi: w.phi.map.clone(),
            oracle_isomorphism: w.oracle_confirmation.as_ref().map(|m| MorphismJson {
                map: m.map.clone(),
                checked: m.checked,
            }),
            corollary_form_equivariant: w.corollary_form_equivariant,
            pass: w.passed(),
            checks: checks_to_json(&w.checks),
        }
    }
}

/// A sweep instance pairing both pipelines with the cross-pipeline checks.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceJson {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub policy: String,
    pub pass: bool,
    pub sin: WitnessJson,
    pub by_compact: WitnessJson,
    pub cross_checks: BTreeMap<String, CheckJson>,
}

impl InstanceJson {
    pub fn from_instance(policy: &str, w: &InstanceWitness) -> InstanceJson {
        InstanceJson {
            group: w.sin.group.name().to_string(),
            subgroup: w.sin.subgroup.elements().to_vec(),
            policy: policy.to_string(),
            pass: w.passed(),
            sin: WitnessJson::from_witness(&w.sin),
            by_compact: WitnessJson::from_witness(&w.by_compact),
            cross_checks: checks_to_json(&w.cross_checks),
        }
    }
}

/// Compact per-instance line for sweep reports: pass/fail facts only.
#[derive(Debug, Clone, Serialize)]
pub struct SweepInstanceJson {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub policy: String,
    pub sin_pass: bool,
    pub by_compact_pass: bool,
    pub cross_pass: bool,
    pub pass: bool,
}
