//! Report documents and their text rendering.
//!
//! Every command produces one JSON document (schema_version 1) and a text
//! twin carrying exactly the same pass/fail facts. Reports contain no
//! clocks or machine identifiers: a fixed config yields byte-identical
//! output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::formats::{CheckJson, InstanceJson, MorphismJson, SweepInstanceJson, WitnessJson};

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub abelian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    pub command: String,
    pub groups: Vec<CatalogEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyExtensionReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub policy: String,
    pub instances: Vec<InstanceJson>,
    pub total: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemidirectReport {
    pub schema_version: u32,
    pub command: String,
    pub h: String,
    pub k: String,
    pub theta: String,
    pub pass: bool,
    pub witness: WitnessJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaInstance {
    pub subgroup: Vec<usize>,
    pub pass: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub instances: Vec<LemmaInstance>,
    pub total: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfigJson {
    pub max_order: usize,
    pub policies: Vec<String>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepCounts {
    pub groups: usize,
    pub pairs: usize,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub command: String,
    pub config: SweepConfigJson,
    pub groups: Vec<String>,
    pub instances: Vec<SweepInstanceJson>,
    pub counts: SweepCounts,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerLevelJson {
    pub depth: usize,
    /// Orders are decimal strings; permutation-represented levels can
    /// exceed every fixed-width integer.
    pub order: String,
    pub representation: String,
    pub level1_kernel_order: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub schema_version: u32,
    pub command: String,
    /// The tower computes finite truncations only; it settles nothing
    /// about the automorphism group of the infinite tree.
    pub note: String,
    pub n: usize,
    pub d: usize,
    pub levels: Vec<TowerLevelJson>,
    pub order_formula_ok: bool,
    pub chain: Vec<WitnessJson>,
    pub chain_pass: bool,
    pub consistency: BTreeMap<String, CheckJson>,
    pub consistency_pass: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub schema_version: u32,
    pub command: String,
    pub isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn yn(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn fmt_elements(e: &[usize]) -> String {
    let inner: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn write_checks(out: &mut String, indent: &str, checks: &BTreeMap<String, CheckJson>) {
    for (name, c) in checks {
        let _ = write!(out, "{indent}{} {} (cases={})", name, yn(c.pass), c.cases);
        if let Some(w) = &c.witness {
            let _ = write!(out, " witness: {w}");
        }
        out.push('\n');
    }
}

fn write_witness(out: &mut String, indent: &str, w: &WitnessJson) {
    let _ = writeln!(
        out,
        "{indent}[{}] group={} subgroup={} {}",
        w.kind,
        w.group,
        fmt_elements(&w.subgroup),
        yn(w.pass)
    );
    if let Some(c) = w.corollary_form_equivariant {
        let _ = writeln!(out, "{indent}  corollary_form_equivariant: {c}");
    }
    let deeper = format!("{indent}  ");
    write_checks(out, &deeper, &w.checks);
}

pub fn catalog_text(r: &CatalogReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf catalog report (schema {})", r.schema_version);
    for g in &r.groups {
        let _ = writeln!(
            out,
            "group {} order={} abelian={}",
            g.name, g.order, g.abelian
        );
    }
    let _ = writeln!(out, "total: {}", r.groups.len());
    out
}

pub fn verify_extension_text(r: &VerifyExtensionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf verify-extension report (schema {})", r.schema_version);
    let _ = writeln!(out, "group: {} policy: {}", r.group, r.policy);
    for i in &r.instances {
        let _ = writeln!(
            out,
            "instance subgroup={} policy={} {}",
            fmt_elements(&i.subgroup),
            i.policy,
            yn(i.pass)
        );
        write_witness(&mut out, "  ", &i.sin);
        write_witness(&mut out, "  ", &i.by_compact);
        write_checks(&mut out, "  ", &i.cross_checks);
    }
    let _ = writeln!(out, "summary: instances={} failures={}", r.total, r.failures);
    out
}

pub fn semidirect_text(r: &SemidirectReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf verify-semidirect report (schema {})", r.schema_version);
    let _ = writeln!(out, "h: {} k: {} theta: {} {}", r.h, r.k, r.theta, yn(r.pass));
    write_witness(&mut out, "  ", &r.witness);
    out
}

pub fn lemma_text(r: &LemmaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf verify-lemma-orbits report (schema {})", r.schema_version);
    let _ = writeln!(out, "group: {}", r.group);
    for i in &r.instances {
        let _ = write!(
            out,
            "orbit-space subgroup={} {} (cases={})",
            fmt_elements(&i.subgroup),
            yn(i.pass),
            i.cases
        );
        if let Some(w) = &i.witness {
            let _ = write!(out, " witness: {w}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "summary: instances={} failures={}", r.total, r.failures);
    out
}

pub fn sweep_text(r: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf sweep report (schema {})", r.schema_version);
    let _ = writeln!(
        out,
        "config: max_order={} seed={} policies={}",
        r.config.max_order,
        r.config.seed,
        r.config.policies.join(",")
    );
    for i in &r.instances {
        let _ = writeln!(
            out,
            "instance {} subgroup={} policy={} sin={} by-compact={} cross={} {}",
            i.group,
            fmt_elements(&i.subgroup),
            i.policy,
            yn(i.sin_pass),
            yn(i.by_compact_pass),
            yn(i.cross_pass),
            yn(i.pass)
        );
    }
    let _ = writeln!(
        out,
        "summary: groups={} pairs={} instances={} failures={}",
        r.counts.groups, r.counts.pairs, r.counts.instances, r.counts.failures
    );
    out
}

pub fn tower_text(r: &TowerReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf tower report (schema {})", r.schema_version);
    let _ = writeln!(out, "note: {}", r.note);
    let _ = writeln!(out, "n={} d={}", r.n, r.d);
    for l in &r.levels {
        let _ = writeln!(
            out,
            "level depth={} order={} representation={} level1_kernel_order={}",
            l.depth, l.order, l.representation, l.level1_kernel_order
        );
    }
    let _ = writeln!(out, "order_formula {}", yn(r.order_formula_ok));
    for w in &r.chain {
        write_witness(&mut out, "  ", w);
    }
    let _ = writeln!(out, "chain {}", yn(r.chain_pass));
    write_checks(&mut out, "  ", &r.consistency);
    let _ = writeln!(out, "consistency {}", yn(r.consistency_pass));
    let _ = writeln!(out, "overall {}", yn(r.pass));
    out
}

pub fn iso_text(r: &IsoReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "umf iso report (schema {})", r.schema_version);
    if r.isomorphic {
        let m = r.morphism.as_ref().expect("isomorphic reports carry a morphism");
        let _ = writeln!(out, "isomorphic: true checked={}", m.checked);
        let _ = writeln!(out, "map: {}", fmt_elements(&m.map));
    } else {
        let _ = writeln!(out, "isomorphic: false");
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "witness: {w}");
        }
    }
    out
}
