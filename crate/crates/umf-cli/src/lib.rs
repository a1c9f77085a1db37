//! Command-line driver: catalog listing, single-instance verification,
//! full sweeps, tower exploration, and (de)serialization of groups, flows,
//! and reports.
//!
//! Exit-code contract: 0 when every check passed, 1 when any theorem check
//! failed (a red-alert signal about the implementation, never about the
//! mathematics), 2 for invalid input. Reports are deterministic: a fixed
//! [`RunConfig`] (including the seed) yields byte-identical output; wall
//! clock timings go to stderr only.

pub mod formats;
pub mod reports;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use umf_core::caps::Caps;
use umf_core::extension::{semidirect_flow, verify_instance};
use umf_core::flow::iso::{find_isomorphism, IsoVerdict};
use umf_core::flow::{left_translation_flow, orbit_space_flow, Flow};
use umf_core::group::catalog::{builtin, builtin_names};
use umf_core::group::product::{inversion_action, trivial_action};
use umf_core::group::wreath::wreath_order;
use umf_core::group::{normal_subgroups, Group, SectionPolicy, Subgroup};
use umf_core::tower::{build_tower, decomposition_chain, level_consistency, TowerLevel};

use formats::{checks_to_json, FlowJson, GroupJson, GroupRefJson, InstanceJson, MorphismJson,
    SweepInstanceJson, WitnessJson};
use reports::*;

/// Environment variable naming a directory of extra `<name>.json` group
/// files consulted when a bare group name is not in the built-in catalog.
pub const CATALOG_DIR_ENV: &str = "UMF_CATALOG_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid input: malformed files, unknown names, violated caps.
    /// Mapped to exit code 2.
    #[error("{0}")]
    Input(String),
}

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalRef {
    /// Enumerate all normal subgroups.
    Auto,
    /// An explicit element list.
    Elements(Vec<usize>),
    /// A subgroup JSON file, `{"group": name, "elements": [...]}`.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolicyRef {
    MinIndex,
    SeededRandom,
}

impl PolicyRef {
    fn to_policy(&self, seed: u64) -> SectionPolicy {
        match self {
            PolicyRef::MinIndex => SectionPolicy::MinIndex,
            PolicyRef::SeededRandom => SectionPolicy::SeededRandom(seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandConfig {
    Catalog,
    VerifyExtension {
        group: String,
        normal: NormalRef,
        policy: PolicyRef,
    },
    VerifySemidirect {
        h: String,
        k: String,
        theta: String,
    },
    VerifyLemmaOrbits {
        group: String,
        normal: NormalRef,
    },
    Sweep,
    Tower {
        n: usize,
        d: usize,
    },
    Iso {
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub caps: Caps,
    pub seed: u64,
}

/// A rendered report plus the overall verdict and any loader warnings.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub body: String,
    pub passed: bool,
    pub warnings: Vec<String>,
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

/// Resolve a group reference: `builtin:NAME`, a bare catalog name, a
/// `<name>.json` in the directory named by [`CATALOG_DIR_ENV`], or a file
/// path.
pub fn resolve_group(
    reference: &str,
    caps: &Caps,
    warnings: &mut Vec<String>,
) -> Result<Group, CliError> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return builtin(name, caps).map_err(|e| input_err(format!("builtin {name:?}: {e}")));
    }
    if !reference.contains('/') && !reference.ends_with(".json") {
        if let Ok(g) = builtin(reference, caps) {
            return Ok(g);
        }
        if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
            let candidate = Path::new(&dir).join(format!("{reference}.json"));
            if candidate.exists() {
                return load_group_file(&candidate, warnings);
            }
        }
        return Err(input_err(format!(
            "unknown group {reference:?}: not a builtin and no file found"
        )));
    }
    load_group_file(Path::new(reference), warnings)
}

pub fn load_group_file(path: &Path, warnings: &mut Vec<String>) -> Result<Group, CliError> {
    let data = fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    let parsed: GroupJson = serde_json::from_str(&data)
        .map_err(|e| input_err(format!("{} is not a group file: {e}", path.display())))?;
    let (group, relabeled) = parsed
        .to_group()
        .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    if relabeled {
        warnings.push(format!(
            "{}: identity was not element 0; table relabeled",
            path.display()
        ));
    }
    Ok(group)
}

pub fn load_flow_file(
    path: &Path,
    caps: &Caps,
    warnings: &mut Vec<String>,
) -> Result<Flow, CliError> {
    let data = fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    let parsed: FlowJson = serde_json::from_str(&data)
        .map_err(|e| input_err(format!("{} is not a flow file: {e}", path.display())))?;
    let group = match &parsed.group {
        GroupRefJson::Name(name) => resolve_group(name, caps, warnings)?,
        GroupRefJson::Inline(inline) => {
            let (g, relabeled) = inline
                .to_group()
                .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            if relabeled {
                warnings.push(format!(
                    "{}: inline group identity relabeled to element 0",
                    path.display()
                ));
            }
            g
        }
    };
    Flow::make(&Arc::new(group), &parsed.action, parsed.base_point)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn parse_normal(
    group: &Arc<Group>,
    normal: &NormalRef,
    caps: &Caps,
) -> Result<Vec<Subgroup>, CliError> {
    let explicit = |elements: &[usize]| -> Result<Vec<Subgroup>, CliError> {
        let k = Subgroup::new(group, elements.iter().copied())
            .map_err(|e| input_err(format!("--normal: {e}")))?;
        if !k.is_normal() {
            return Err(input_err(format!(
                "--normal: subgroup {elements:?} is not normal in {}",
                group.name()
            )));
        }
        Ok(vec![k])
    };
    match normal {
        NormalRef::Auto => normal_subgroups(group, caps)
            .map_err(|e| input_err(format!("enumerating normal subgroups: {e}"))),
        NormalRef::Elements(elements) => explicit(elements),
        NormalRef::File(path) => {
            let data = fs::read_to_string(path)
                .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
            let parsed: formats::SubgroupJson = serde_json::from_str(&data)
                .map_err(|e| input_err(format!("{} is not a subgroup file: {e}", path.display())))?;
            if parsed.group != group.name() {
                return Err(input_err(format!(
                    "{}: subgroup belongs to {:?}, not {:?}",
                    path.display(),
                    parsed.group,
                    group.name()
                )));
            }
            explicit(&parsed.elements)
        }
    }
}

fn theta_tables(
    theta: &str,
    h: &Group,
    k: &Group,
) -> Result<(String, Vec<Vec<usize>>), CliError> {
    match theta {
        "inversion" => Ok(("inversion".to_string(), inversion_action(h, k))),
        "trivial" => Ok(("trivial".to_string(), trivial_action(h, k))),
        other => Err(input_err(format!(
            "unknown theta {other:?}: expected inversion or trivial"
        ))),
    }
}

/// Execute a configuration and render its report.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut warnings = Vec::new();
    let caps = &config.caps;
    let (json, text, passed) = match &config.command {
        CommandConfig::Catalog => {
            let report = catalog_report(caps)?;
            (to_json(&report), catalog_text(&report), true)
        }
        CommandConfig::VerifyExtension {
            group,
            normal,
            policy,
        } => {
            let g = Arc::new(resolve_group(group, caps, &mut warnings)?);
            let kernels = parse_normal(&g, normal, caps)?;
            let section_policy = policy.to_policy(config.seed);
            let mut instances = Vec::new();
            for k in &kernels {
                let witness = verify_instance(&g, k, &section_policy, caps)
                    .map_err(|e| input_err(format!("pipeline on {}: {e}", g.name())))?;
                instances.push(InstanceJson::from_instance(&section_policy.label(), &witness));
            }
            let failures = instances.iter().filter(|i| !i.pass).count();
            let report = VerifyExtensionReport {
                schema_version: formats::SCHEMA_VERSION,
                command: "verify-extension".to_string(),
                group: g.name().to_string(),
                policy: section_policy.label(),
                total: instances.len(),
                failures,
                instances,
            };
            let passed = failures == 0;
            (to_json(&report), verify_extension_text(&report), passed)
        }
        CommandConfig::VerifySemidirect { h, k, theta } => {
            let hg = resolve_group(h, caps, &mut warnings)?;
            let kg = resolve_group(k, caps, &mut warnings)?;
            let (theta_name, tables) = theta_tables(theta, &hg, &kg)?;
            let witness = semidirect_flow(&hg, &kg, &tables, caps)
                .map_err(|e| input_err(format!("semidirect pipeline: {e}")))?;
            let pass = witness.passed();
            let report = SemidirectReport {
                schema_version: formats::SCHEMA_VERSION,
                command: "verify-semidirect".to_string(),
                h: hg.name().to_string(),
                k: kg.name().to_string(),
                theta: theta_name,
                pass,
                witness: WitnessJson::from_witness(&witness),
            };
            (to_json(&report), semidirect_text(&report), pass)
        }
        CommandConfig::VerifyLemmaOrbits { group, normal } => {
            let g = Arc::new(resolve_group(group, caps, &mut warnings)?);
            let kernels = parse_normal(&g, normal, caps)?;
            let translation = left_translation_flow(&g);
            let mut instances = Vec::new();
            for k in &kernels {
                let quotient_flow = orbit_space_flow(&translation, k)
                    .map_err(|e| input_err(format!("orbit space: {e}")))?;
                let quotient_translation = left_translation_flow(quotient_flow.group());
                let cases = (quotient_flow.group().order() * quotient_flow.size()) as u64;
                let verdict = find_isomorphism(&quotient_flow, &quotient_translation, caps)
                    .map_err(|e| input_err(format!("isomorphism search: {e}")))?;
                let (pass, witness) = match verdict {
                    IsoVerdict::Isomorphic(_) => (true, None),
                    IsoVerdict::NotIsomorphic(w) => (false, Some(format!("{w:?}"))),
                };
                instances.push(LemmaInstance {
                    subgroup: k.elements().to_vec(),
                    pass,
                    cases,
                    witness,
                });
            }
            let failures = instances.iter().filter(|i| !i.pass).count();
            let report = LemmaReport {
                schema_version: formats::SCHEMA_VERSION,
                command: "verify-lemma-orbits".to_string(),
                group: g.name().to_string(),
                total: instances.len(),
                failures,
                instances,
            };
            let passed = failures == 0;
            (to_json(&report), lemma_text(&report), passed)
        }
        CommandConfig::Sweep => {
            let report = sweep_report(caps, config.seed)?;
            let passed = report.counts.failures == 0;
            (to_json(&report), sweep_text(&report), passed)
        }
        CommandConfig::Tower { n, d } => {
            let report = tower_report(*n, *d, caps)?;
            let passed = report.pass;
            (to_json(&report), tower_text(&report), passed)
        }
        CommandConfig::Iso { a, b } => {
            let fa = load_flow_file(a, caps, &mut warnings)?;
            let fb = load_flow_file(b, caps, &mut warnings)?;
            let verdict = find_isomorphism(&fa, &fb, caps)
                .map_err(|e| input_err(format!("isomorphism search: {e}")))?;
            let report = match verdict {
                IsoVerdict::Isomorphic(m) => IsoReport {
                    schema_version: formats::SCHEMA_VERSION,
                    command: "iso".to_string(),
                    isomorphic: true,
                    morphism: Some(MorphismJson {
                        map: m.map,
                        checked: m.checked,
                    }),
                    witness: None,
                },
                IsoVerdict::NotIsomorphic(w) => IsoReport {
                    schema_version: formats::SCHEMA_VERSION,
                    command: "iso".to_string(),
                    isomorphic: false,
                    morphism: None,
                    witness: Some(format!("{w:?}")),
                },
            };
            // A decided verdict is a successful query either way.
            (to_json(&report), iso_text(&report), true)
        }
    };

    let body = match config.format {
        OutputFormat::Json => json,
        OutputFormat::Text => text,
    };
    Ok(Outcome {
        body,
        passed,
        warnings,
    })
}

fn catalog_report(caps: &Caps) -> Result<CatalogReport, CliError> {
    let mut groups = Vec::new();
    for name in builtin_names() {
        let g = builtin(name, caps).map_err(|e| input_err(format!("catalog {name}: {e}")))?;
        groups.push(CatalogEntry {
            name: name.to_string(),
            order: g.order(),
            abelian: g.is_abelian(),
        });
    }
    Ok(CatalogReport {
        schema_version: formats::SCHEMA_VERSION,
        command: "catalog".to_string(),
        groups,
    })
}

/// The default acceptance sweep: every builtin group within the sweep
/// order cap, every normal subgroup, both section policies, both theorem
/// pipelines plus the cross checks.
pub fn sweep_report(caps: &Caps, seed: u64) -> Result<SweepReport, CliError> {
    let mut groups: Vec<(String, Arc<Group>)> = Vec::new();
    for name in builtin_names() {
        let g = builtin(name, caps).map_err(|e| input_err(format!("catalog {name}: {e}")))?;
        if g.order() <= caps.sweep_order {
            groups.push((name.to_string(), Arc::new(g)));
        }
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));

    let policies = [
        SectionPolicy::MinIndex,
        SectionPolicy::SeededRandom(seed),
    ];
    let mut pairs = 0usize;
    let mut instances: Vec<SweepInstanceJson> = Vec::new();
    for (name, g) in &groups {
        let kernels = normal_subgroups(g, caps)
            .map_err(|e| input_err(format!("normal subgroups of {name}: {e}")))?;
        for k in &kernels {
            pairs += 1;
            for policy in &policies {
                let witness = verify_instance(g, k, policy, caps)
                    .map_err(|e| input_err(format!("sweep instance {name}: {e}")))?;
                instances.push(SweepInstanceJson {
                    group: name.clone(),
                    subgroup: k.elements().to_vec(),
                    policy: policy.label(),
                    sin_pass: witness.sin.passed(),
                    by_compact_pass: witness.by_compact.passed(),
                    cross_pass: witness.cross_checks.all_pass(),
                    pass: witness.passed(),
                });
            }
        }
    }
    instances.sort_by(|a, b| {
        a.group
            .cmp(&b.group)
            .then_with(|| a.subgroup.cmp(&b.subgroup))
            .then_with(|| a.policy.cmp(&b.policy))
    });

    let failures = instances.iter().filter(|i| !i.pass).count();
    Ok(SweepReport {
        schema_version: formats::SCHEMA_VERSION,
        command: "sweep".to_string(),
        config: SweepConfigJson {
            max_order: caps.sweep_order,
            policies: policies.iter().map(|p| p.label()).collect(),
            seed,
        },
        groups: groups.iter().map(|(n, _)| n.clone()).collect(),
        counts: SweepCounts {
            groups: groups.len(),
            pairs,
            instances: instances.len(),
            failures,
        },
        instances,
    })
}

fn tower_report(n: usize, d: usize, caps: &Caps) -> Result<TowerReport, CliError> {
    if n < 2 || d < 1 {
        return Err(input_err("tower needs --n >= 2 and --d >= 1"));
    }
    let tower = build_tower(n, d, caps).map_err(|e| input_err(format!("building tower: {e}")))?;

    let mut order_formula_ok = true;
    let levels: Vec<TowerLevelJson> = tower
        .levels
        .iter()
        .map(|level| {
            let depth = level.depth();
            let formula = wreath_order(n, depth);
            if formula != Some(level.order()) {
                order_formula_ok = false;
            }
            let (representation, kernel_order) = match level {
                TowerLevel::Table(t) => ("table".to_string(), t.kernel.order() as u128),
                TowerLevel::Perm(p) => ("perm".to_string(), p.level1_kernel_order),
            };
            TowerLevelJson {
                depth,
                order: level.order().to_string(),
                representation,
                level1_kernel_order: kernel_order.to_string(),
            }
        })
        .collect();

    let chain = decomposition_chain(&tower, caps)
        .map_err(|e| input_err(format!("decomposition chain: {e}")))?;
    let chain_pass = chain.iter().all(|w| w.passed());
    let consistency = level_consistency(&tower, caps);
    let consistency_pass = consistency.all_pass();
    let pass = order_formula_ok && chain_pass && consistency_pass;

    Ok(TowerReport {
        schema_version: formats::SCHEMA_VERSION,
        command: "tower".to_string(),
        note: "finite-depth truncations only; nothing here decides the infinite-tree question"
            .to_string(),
        n,
        d,
        levels,
        order_formula_ok,
        chain: chain.iter().map(WitnessJson::from_witness).collect(),
        chain_pass,
        consistency: checks_to_json(&consistency),
        consistency_pass,
        pass,
    })
}

/// Parse repeated `key=value` cap overrides.
pub fn apply_cap_overrides(caps: &mut Caps, overrides: &[String]) -> Result<(), CliError> {
    for item in overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| input_err(format!("--caps {item:?}: expected key=value")))?;
        let parsed: usize = value
            .parse()
            .map_err(|_| input_err(format!("--caps {item:?}: value must be an integer")))?;
        if !caps.set(key, parsed) {
            return Err(input_err(format!("--caps {item:?}: unknown cap {key:?}")));
        }
    }
    Ok(())
}

/// Parse a `--normal` argument: `auto`, a comma-separated element list, or
/// a subgroup JSON file path.
pub fn parse_normal_ref(value: &str) -> Result<NormalRef, CliError> {
    if value == "auto" || value == "all-normal" {
        return Ok(NormalRef::Auto);
    }
    if value.ends_with(".json") || value.contains('/') {
        return Ok(NormalRef::File(PathBuf::from(value)));
    }
    let elements: Result<Vec<usize>, _> = value
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect();
    elements.map(NormalRef::Elements).map_err(|_| {
        input_err(format!(
            "--normal {value:?}: expected auto, a list like 0,3,4, or a subgroup file"
        ))
    })
}

/// Parse a `--section` argument.
pub fn parse_policy_ref(value: &str) -> Result<PolicyRef, CliError> {
    match value {
        "min-index" => Ok(PolicyRef::MinIndex),
        "seeded-random" => Ok(PolicyRef::SeededRandom),
        other => Err(input_err(format!(
            "--section {other:?}: expected min-index or seeded-random"
        ))),
    }
}

/// Parse `--format`.
pub fn parse_format(value: &str) -> Result<OutputFormat, CliError> {
    match value {
        "json" => Ok(OutputFormat::Json),
        "text" => Ok(OutputFormat::Text),
        other => Err(input_err(format!("--format {other:?}: expected json or text"))),
    }
}

