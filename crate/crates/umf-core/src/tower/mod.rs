//! Depth-truncated towers of n-ary tree automorphism groups.
//!
//! `W_d`, the automorphism group of the depth-`d` rooted `n`-ary tree, is
//! the finite shadow of the profinite `Aut(T_n)`: compact open subgroups
//! become level kernels, and the product decomposition of the universal
//! minimal flow applies recursively down the tower. This module builds the
//! tower, runs the decomposition at every level, and cross-checks quotient
//! data between levels.
//!
//! Levels small enough for dense tables get the full pipeline; larger
//! levels fall back to a leaf-permutation generator representation where
//! only orders and kernel orders are computed (and checked against the
//! closed-form order). This module explores the tower — it decides nothing
//! about the infinite-tree question that motivates it, and its reports say
//! so.

pub mod portrait;
pub mod schreier;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::extension::{verify_extension_theorem, ExtensionError, ExtensionWitness};
use crate::flow::iso::{find_isomorphism, IsoVerdict};
use crate::flow::{coset_flow, left_translation_flow, orbit_space_flow, Flow};
use crate::group::iso::find_group_isomorphism;
use crate::group::wreath::{wreath_levels, wreath_order, WreathGroup};
use crate::group::{quotient, Group, GroupError, SectionPolicy, Subgroup};
use crate::report::VerificationReport;

pub use portrait::Portrait;
pub use schreier::permutation_group_order;

/// A tower level with a dense table: the wreath group, its level-1 kernel,
/// and the truncation map onto the previous level.
#[derive(Debug, Clone)]
pub struct TableLevel {
    pub wreath: WreathGroup,
    /// The level-1 kernel `(W_{d-1})^n`.
    pub kernel: Subgroup,
    /// Element map `W_d → W_{d-1}` (restriction to depth `d-1`); empty at
    /// depth 1, where the target is trivial.
    pub trunc_to_prev: Vec<usize>,
}

impl TableLevel {
    pub fn group(&self) -> &Arc<Group> {
        &self.wreath.group
    }

    pub fn depth(&self) -> usize {
        self.wreath.depth
    }
}

/// A level too large for tables: leaf-permutation generators plus orders
/// computed by Schreier–Sims and checked against the closed form.
#[derive(Debug, Clone)]
pub struct PermLevel {
    pub depth: usize,
    /// Number of leaves, `n^depth`.
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub order: u128,
    pub level1_kernel_order: u128,
}

#[derive(Debug, Clone)]
pub enum TowerLevel {
    Table(TableLevel),
    Perm(PermLevel),
}

impl TowerLevel {
    pub fn depth(&self) -> usize {
        match self {
            TowerLevel::Table(t) => t.depth(),
            TowerLevel::Perm(p) => p.depth,
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            TowerLevel::Table(t) => t.group().order() as u128,
            TowerLevel::Perm(p) => p.order,
        }
    }

    pub fn as_table(&self) -> Option<&TableLevel> {
        match self {
            TowerLevel::Table(t) => Some(t),
            TowerLevel::Perm(_) => None,
        }
    }
}

/// The tower `W_1 ⋯ W_d` for one branching degree.
#[derive(Debug, Clone)]
pub struct WreathTower {
    pub n: usize,
    pub d: usize,
    pub levels: Vec<TowerLevel>,
}

impl WreathTower {
    pub fn table_levels(&self) -> impl Iterator<Item = &TableLevel> {
        self.levels.iter().filter_map(|l| l.as_table())
    }

    /// The level-`j` kernel of table level `i` (depths, 1-based): elements
    /// acting trivially down to depth `j`, i.e. the kernel of the composed
    /// truncation `W_i → W_j`. For `j = i` this is the trivial subgroup.
    pub fn level_kernel(&self, i: usize, j: usize) -> Result<Subgroup, GroupError> {
        let map = self.truncation_map(i, j)?;
        let level = self.levels[i - 1].as_table().ok_or(GroupError::SizeCapExceeded {
            what: "tower level without table representation",
            requested: i,
            cap: self.levels.len(),
        })?;
        let elements: Vec<usize> = (0..level.group().order())
            .filter(|&g| map[g] == 0)
            .collect();
        Subgroup::new(level.group(), elements)
    }

    /// The composed truncation `W_i → W_j` as an element table, `j ≤ i`.
    pub fn truncation_map(&self, i: usize, j: usize) -> Result<Vec<usize>, GroupError> {
        assert!(1 <= j && j <= i && i <= self.levels.len());
        let level = self.levels[i - 1].as_table().ok_or(GroupError::SizeCapExceeded {
            what: "tower level without table representation",
            requested: i,
            cap: self.levels.len(),
        })?;
        let order = level.group().order();
        let mut map: Vec<usize> = (0..order).collect();
        for depth in (j + 1..=i).rev() {
            let t = &self.levels[depth - 1]
                .as_table()
                .expect("levels below a table level are table levels")
                .trunc_to_prev;
            for v in map.iter_mut() {
                *v = t[*v];
            }
        }
        Ok(map)
    }

    /// Leaf permutation (on `n^depth` leaves) of a table-level element.
    pub fn leaf_permutation(&self, depth: usize, g: usize) -> Vec<usize> {
        let tables: Vec<&TableLevel> = self.table_levels().collect();
        leaf_perm_rec(&tables, depth, g)
    }

    /// Portrait of a table-level element.
    pub fn portrait(&self, depth: usize, g: usize) -> Portrait {
        let tables: Vec<&TableLevel> = self.table_levels().collect();
        let mut nodes = vec![0usize; portrait::internal_node_count(self.n, depth)];
        portrait_rec(&tables, self.n, depth, g, 0, &mut nodes);
        Portrait {
            n: self.n,
            depth,
            nodes,
        }
    }
}

fn leaf_perm_rec(tables: &[&TableLevel], depth: usize, g: usize) -> Vec<usize> {
    let level = tables[depth - 1];
    let n = level.wreath.n;
    let (sigma, parts) = level.wreath.decompose(g);
    let sigma_word = crate::group::perm::lex_unrank(n, sigma);
    if depth == 1 {
        return sigma_word;
    }
    let block = n.pow((depth - 1) as u32);
    let mut out = vec![0usize; n * block];
    for a in 0..n {
        let sub = leaf_perm_rec(tables, depth - 1, parts[a]);
        for r in 0..block {
            out[a * block + r] = sigma_word[a] * block + sub[r];
        }
    }
    out
}

fn portrait_rec(
    tables: &[&TableLevel],
    n: usize,
    depth: usize,
    g: usize,
    v: usize,
    nodes: &mut [usize],
) {
    let level = tables[depth - 1];
    let (sigma, parts) = level.wreath.decompose(g);
    nodes[v] = sigma;
    if depth > 1 {
        for a in 0..n {
            portrait_rec(tables, n, depth - 1, parts[a], n * v + 1 + a, nodes);
        }
    }
}

/// Leaf-permutation generators of `W_d`: the top `S_n` permuting subtree
/// blocks, plus the previous level's generators embedded in subtree 0
/// (conjugation by the top moves them to every subtree).
pub fn wreath_leaf_generators(n: usize, d: usize) -> Vec<Vec<usize>> {
    let top_gens = |degree: usize, block: usize| -> Vec<Vec<usize>> {
        let mut gens = Vec::new();
        // (0 1) on blocks
        let mut swap: Vec<usize> = (0..degree).collect();
        for r in 0..block {
            swap[r] = block + r;
            swap[block + r] = r;
        }
        gens.push(swap);
        if n > 2 {
            // full n-cycle on blocks
            let cycle: Vec<usize> = (0..degree).map(|x| ((x / block + 1) % n) * block + x % block).collect();
            gens.push(cycle);
        }
        gens
    };
    if d == 1 {
        return top_gens(n, 1);
    }
    let block = n.pow((d - 1) as u32);
    let degree = n * block;
    let mut gens = top_gens(degree, block);
    for sub in wreath_leaf_generators(n, d - 1) {
        let mut g: Vec<usize> = (0..degree).collect();
        for (r, slot) in g.iter_mut().take(block).enumerate() {
            *slot = sub[r];
        }
        gens.push(g);
    }
    gens
}

/// Generators of the level-1 kernel `(W_{d-1})^n` as leaf permutations:
/// the previous level's generators embedded in every subtree.
pub fn wreath_kernel_leaf_generators(n: usize, d: usize) -> Vec<Vec<usize>> {
    assert!(d >= 2);
    let block = n.pow((d - 1) as u32);
    let degree = n * block;
    let mut gens = Vec::new();
    for a in 0..n {
        for sub in wreath_leaf_generators(n, d - 1) {
            let mut g: Vec<usize> = (0..degree).collect();
            for (r, &img) in sub.iter().enumerate() {
                g[a * block + r] = a * block + img;
            }
            gens.push(g);
        }
    }
    gens
}

/// Build the tower with dense tables up to the cap and leaf-permutation
/// levels beyond it. Per-level invariants — the order recursion, kernel
/// normality, the `S_n` quotient, and agreement between the truncation map
/// and the semidirect structure — are verified during construction.
pub fn build_tower(n: usize, d: usize, caps: &Caps) -> Result<WreathTower, GroupError> {
    assert!(n >= 2, "build_tower needs branching degree >= 2");
    assert!(d >= 1, "build_tower needs depth >= 1");

    let mut table_depth = 0;
    for i in 1..=d {
        match wreath_order(n, i) {
            Some(o) if o <= caps.table_order as u128 => table_depth = i,
            _ => break,
        }
    }

    let mut levels: Vec<TowerLevel> = Vec::new();
    if table_depth >= 1 {
        let wreaths = wreath_levels(n, table_depth, caps)?;
        for w in wreaths {
            let group = w.group.clone();
            let expected = wreath_order(n, w.depth).expect("within table cap");
            assert_eq!(group.order() as u128, expected, "order recursion violated");
            let kernel = Subgroup::new(&group, w.kernel_elements.iter().copied())?;
            assert!(kernel.is_normal(), "level-1 kernel must be normal");

            let trunc_to_prev: Vec<usize> = if w.depth == 1 {
                Vec::new()
            } else {
                let prev = levels[w.depth - 2]
                    .as_table()
                    .expect("previous level is a table level");
                (0..group.order())
                    .map(|g| {
                        let (sigma, parts) = w.decompose(g);
                        let truncated: Vec<usize> = if w.depth == 2 {
                            vec![0; n]
                        } else {
                            let prev_trunc = &prev.trunc_to_prev;
                            parts.iter().map(|&p| prev_trunc[p]).collect()
                        };
                        prev.wreath.compose(sigma, &truncated)
                    })
                    .collect()
            };
            if w.depth >= 2 {
                let prev = levels[w.depth - 2].as_table().expect("table level");
                let prev_group = prev.group();
                for a in 0..group.order() {
                    for b in 0..group.order() {
                        assert_eq!(
                            trunc_to_prev[group.op(a, b)],
                            prev_group.op(trunc_to_prev[a], trunc_to_prev[b]),
                            "truncation must be a homomorphism"
                        );
                    }
                }
            }
            levels.push(TowerLevel::Table(TableLevel {
                wreath: w,
                kernel,
                trunc_to_prev,
            }));
        }
    }

    for depth in table_depth + 1..=d {
        let formula = wreath_order(n, depth).ok_or(GroupError::SizeCapExceeded {
            what: "wreath tower order (overflows u128)",
            requested: depth,
            cap: d,
        })?;
        let degree = n.pow(depth as u32);
        let generators = wreath_leaf_generators(n, depth);
        let order = permutation_group_order(degree, &generators);
        assert_eq!(order, formula, "Schreier–Sims order must match the closed form");
        let kernel_gens = wreath_kernel_leaf_generators(n, depth);
        let kernel_order = permutation_group_order(degree, &kernel_gens);
        let prev_formula = wreath_order(n, depth - 1).expect("smaller exponent fits");
        assert_eq!(
            kernel_order,
            prev_formula.pow(n as u32),
            "level-1 kernel order must be |W_{{d-1}}|^n"
        );
        levels.push(TowerLevel::Perm(PermLevel {
            depth,
            degree,
            generators,
            order,
            level1_kernel_order: kernel_order,
        }));
    }

    Ok(WreathTower { n, d, levels })
}

/// Apply the product decomposition at every table level of depth ≥ 2:
/// `W_i` over its level-1 kernel, full pipeline, one witness per level.
pub fn decomposition_chain(
    tower: &WreathTower,
    caps: &Caps,
) -> Result<Vec<ExtensionWitness>, ExtensionError> {
    let mut chain = Vec::new();
    for level in tower.table_levels() {
        if level.depth() < 2 {
            continue;
        }
        let witness = verify_extension_theorem(
            level.group(),
            &level.kernel,
            &SectionPolicy::MinIndex,
            caps,
        )?;
        chain.push(witness);
    }
    Ok(chain)
}

fn record_iso(
    report: &mut VerificationReport,
    name: &str,
    a: &Flow,
    b: &Flow,
    caps: &Caps,
) {
    let cases = (a.group().order() * a.size()) as u64;
    match find_isomorphism(a, b, caps) {
        Ok(IsoVerdict::Isomorphic(_)) => report.pass(name, cases),
        Ok(IsoVerdict::NotIsomorphic(w)) => report.fail(name, cases, format!("{w:?}")),
        Err(e) => report.fail(name, cases, format!("{e}")),
    }
}

/// Cross-level consistency of the tower, modelling the compatibility of the
/// inverse system of finite quotients: for every table level `i` and every
/// `j ≤ i`, the level-`j` kernel is normal, the quotient is the level-`j`
/// group, the orbit-space flow of translation matches the quotient's
/// translation flow, and the coset flow matches the flow induced by the
/// truncation map.
pub fn level_consistency(tower: &WreathTower, caps: &Caps) -> VerificationReport {
    let mut report = VerificationReport::new();
    for (li, level) in tower.levels.iter().enumerate() {
        let i = li + 1;
        let Some(table) = level.as_table() else {
            continue;
        };
        let group = table.group();
        for j in 1..=i {
            let prefix = format!("level{i}_kernel{j}");
            let kernel = match tower.level_kernel(i, j) {
                Ok(k) => k,
                Err(e) => {
                    report.fail(&prefix, 0, format!("{e}"));
                    continue;
                }
            };
            report.record(
                &format!("{prefix}_normal"),
                kernel.is_normal(),
                (group.order() * kernel.order()) as u64,
                None,
            );

            let target = tower.levels[j - 1]
                .as_table()
                .expect("levels at or below a table level have tables");
            let cs = match quotient(group, &kernel) {
                Ok(cs) => Arc::new(cs),
                Err(e) => {
                    report.fail(&format!("{prefix}_quotient"), 0, format!("{e}"));
                    continue;
                }
            };
            match cs.quotient_group() {
                None => report.fail(
                    &format!("{prefix}_quotient_is_level_group"),
                    0,
                    String::from("no quotient group"),
                ),
                Some(q) => {
                    let iso = find_group_isomorphism(q, target.group());
                    report.record(
                        &format!("{prefix}_quotient_is_level_group"),
                        iso.is_some(),
                        (q.order() * q.order()) as u64,
                        iso.is_none().then(|| String::from("no group isomorphism found")),
                    );
                }
            }

            let translation = left_translation_flow(group);
            match orbit_space_flow(&translation, &kernel) {
                Err(e) => report.fail(&format!("{prefix}_orbit_space"), 0, format!("{e}")),
                Ok(quotient_flow) => {
                    let quotient_translation = left_translation_flow(quotient_flow.group());
                    record_iso(
                        &mut report,
                        &format!("{prefix}_orbit_space_isomorphic"),
                        &quotient_flow,
                        &quotient_translation,
                        caps,
                    );
                }
            }

            // Coset flow vs. the flow induced by the truncation map onto
            // the level-j group.
            match (coset_flow(group, &kernel), tower.truncation_map(i, j)) {
                (Ok(cflow), Ok(trunc)) => {
                    let rows: Vec<Vec<usize>> = (0..group.order())
                        .map(|g| {
                            (0..target.group().order())
                                .map(|x| target.group().op(trunc[g], x))
                                .collect()
                        })
                        .collect();
                    match Flow::make(group, &rows, Some(0)) {
                        Ok(projected) => record_iso(
                            &mut report,
                            &format!("{prefix}_coset_flow_matches_projection"),
                            &cflow,
                            &projected,
                            caps,
                        ),
                        Err(e) => report.fail(
                            &format!("{prefix}_coset_flow_matches_projection"),
                            0,
                            format!("{e}"),
                        ),
                    }
                }
                (Err(e), _) => report.fail(&format!("{prefix}_coset_flow"), 0, format!("{e}")),
                (_, Err(e)) => report.fail(&format!("{prefix}_truncation"), 0, format!("{e}")),
            }
        }
    }
    report
}
