//! Finite groups as validated Cayley tables, with subgroup machinery,
//! quotients, and cross sections.
//!
//! A [`Group`] is a multiplication table over element indices `0..order`
//! whose identity sits at index `0`. Construction checks every axiom
//! exhaustively — the validator *is* the constructor, and every other
//! constructor in this crate funnels through it.

pub mod catalog;
pub mod iso;
pub mod perm;
pub mod product;
pub mod wreath;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::caps::Caps;

/// Validation and construction failures for groups and related structures.
///
/// Each variant names the first failing element or triple found by the
/// exhaustive scan, so a failure is always a concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed table: {detail}")]
    MalformedTable { detail: String },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} is not invertible (row or column {element} is not a permutation)")]
    NotInvertible { element: usize },
    #[error("associativity fails at ({a},{b},{c}): ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{what} = {requested} exceeds cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("set is not a subgroup: {detail}")]
    NotASubgroup { detail: String },
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("explicit table is not a section: coset {coset} mapped to element {element} outside it")]
    NotASection { coset: usize, element: usize },
    #[error("theta({h}) is not an automorphism of the base group")]
    NotAnAutomorphism { h: usize },
    #[error("theta is not a homomorphism: fails at pair ({a},{b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("structures belong to different parent groups")]
    GroupMismatch,
}

/// A finite group: a validated Cayley table with identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    order: usize,
    op: Vec<usize>,
    inverse: Vec<usize>,
    labels: Option<BTreeMap<usize, String>>,
    relabeled: bool,
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The identity element index, by convention always 0.
    pub fn identity(&self) -> usize {
        0
    }

    /// `g · x · g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.op(self.op(g, x), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.op(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.op(a, b) != self.op(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `make_group` had to move the identity to index 0.
    pub fn was_relabeled(&self) -> bool {
        self.relabeled
    }

    pub fn labels(&self) -> Option<&BTreeMap<usize, String>> {
        self.labels.as_ref()
    }

    pub fn with_name(mut self, name: &str) -> Group {
        self.name = name.to_string();
        self
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Group {
        self.labels = Some(labels);
        self
    }

    /// The raw table row for element `a`, in row-major element order.
    pub fn row(&self, a: usize) -> &[usize] {
        &self.op[a * self.order..(a + 1) * self.order]
    }
}

/// Two groups are interchangeable as action domains when their tables agree.
pub(crate) fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || (a.order == b.order && a.op == b.op)
}

/// Validate a multiplication table and build a [`Group`].
///
/// The identity is located and, if necessary, relabeled to index 0 (the swap
/// is recorded on the result). Checks run in a fixed order — shape, identity,
/// Latin square, associativity, inverses — and the first failure wins.
pub fn make_group(table: &[Vec<usize>], name: &str) -> Result<Group, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::MalformedTable {
            detail: "empty table".to_string(),
        });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::MalformedTable {
                detail: format!("row {i} has length {} in a table of size {n}", row.len()),
            });
        }
        for (j, &x) in row.iter().enumerate() {
            if x >= n {
                return Err(GroupError::MalformedTable {
                    detail: format!("entry ({i},{j}) = {x} out of range 0..{n}"),
                });
            }
        }
    }

    // Locate the two-sided identity.
    let mut identity = None;
    'outer: for e in 0..n {
        for x in 0..n {
            if table[e][x] != x || table[x][e] != x {
                continue 'outer;
            }
        }
        identity = Some(e);
        break;
    }
    let e = identity.ok_or(GroupError::NoIdentity)?;

    // Relabel so the identity is element 0.
    let relabeled = e != 0;
    let relab = |x: usize| -> usize {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut op = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            op[relab(a) * n + relab(b)] = relab(table[a][b]);
        }
    }

    // Latin square: every row and column is a permutation.
    for a in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for b in 0..n {
            let r = op[a * n + b];
            let c = op[b * n + a];
            if row_seen[r] || col_seen[c] {
                return Err(GroupError::NotInvertible { element: a });
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }

    for a in 0..n {
        for b in 0..n {
            let ab = op[a * n + b];
            for c in 0..n {
                if op[ab * n + c] != op[a * n + op[b * n + c]] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }

    let mut inverse = vec![0usize; n];
    for a in 0..n {
        let b = (0..n)
            .find(|&b| op[a * n + b] == 0)
            .ok_or(GroupError::NotInvertible { element: a })?;
        if op[b * n + a] != 0 {
            return Err(GroupError::NotInvertible { element: a });
        }
        inverse[a] = b;
    }

    Ok(Group {
        name: name.to_string(),
        order: n,
        op,
        inverse,
        labels: None,
        relabeled,
    })
}

/// A validated subgroup: a sorted element set containing the identity,
/// closed under the parent operation and inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: Arc<Group>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(
        group: &Arc<Group>,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        let elements: Vec<usize> = set.into_iter().collect();
        if let Some(&bad) = elements.iter().find(|&&x| x >= group.order()) {
            return Err(GroupError::NotASubgroup {
                detail: format!("element {bad} out of range"),
            });
        }
        if !elements.contains(&0) {
            return Err(GroupError::NotASubgroup {
                detail: "missing the identity".to_string(),
            });
        }
        for &a in &elements {
            if elements.binary_search(&group.inv(a)).is_err() {
                return Err(GroupError::NotASubgroup {
                    detail: format!("not closed under inversion at {a}"),
                });
            }
            for &b in &elements {
                let ab = group.op(a, b);
                if elements.binary_search(&ab).is_err() {
                    return Err(GroupError::NotASubgroup {
                        detail: format!("not closed under product at ({a},{b})"),
                    });
                }
            }
        }
        Ok(Subgroup {
            group: group.clone(),
            elements,
        })
    }

    pub fn trivial(group: &Arc<Group>) -> Subgroup {
        Subgroup {
            group: group.clone(),
            elements: vec![0],
        }
    }

    pub fn full(group: &Arc<Group>) -> Subgroup {
        Subgroup {
            group: group.clone(),
            elements: (0..group.order()).collect(),
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Rank of `x` in the sorted element list; the rank is the phase
    /// coordinate used by twisted product flows.
    pub fn rank_of(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    /// `gKg⁻¹ = K` for every `g` in the parent.
    pub fn is_normal(&self) -> bool {
        for g in self.group.elements() {
            for &k in &self.elements {
                if !self.contains(self.group.conjugate(g, k)) {
                    return false;
                }
            }
        }
        true
    }

    /// A greedy generating sequence for the subgroup, as parent elements:
    /// repeatedly adjoin the smallest member outside the running closure.
    pub fn generating_elements(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = alloc::vec![0usize];
        while closure.len() < self.elements.len() {
            let next = self
                .elements
                .iter()
                .copied()
                .find(|x| closure.binary_search(x).is_err())
                .expect("closure is a proper subset");
            gens.push(next);
            closure = closure_bitset(&self.group, &gens);
        }
        gens
    }

    /// Extract the subgroup as a standalone [`Group`] on ranks `0..order`,
    /// rank 0 being the identity.
    pub fn as_group(&self, name: &str) -> Result<Group, GroupError> {
        let k = self.elements.len();
        let mut table = vec![vec![0usize; k]; k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i][j] = self
                    .rank_of(self.group.op(a, b))
                    .expect("subgroup closure validated at construction");
            }
        }
        make_group(&table, name)
    }
}

/// `true` iff `gKg⁻¹ = K` for all `g`.
pub fn is_normal(k: &Subgroup) -> bool {
    k.is_normal()
}

fn closure_bitset(group: &Group, seed: &[usize]) -> Vec<usize> {
    let n = group.order();
    let mut in_set = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let add = |x: usize,
               in_set: &mut Vec<bool>,
               members: &mut Vec<usize>,
               queue: &mut Vec<usize>| {
        if !in_set[x] {
            in_set[x] = true;
            members.push(x);
            queue.push(x);
        }
    };
    add(0, &mut in_set, &mut members, &mut queue);
    for &s in seed {
        add(s, &mut in_set, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop() {
        add(group.inv(x), &mut in_set, &mut members, &mut queue);
        let snapshot: Vec<usize> = members.clone();
        for &y in &snapshot {
            add(group.op(x, y), &mut in_set, &mut members, &mut queue);
            add(group.op(y, x), &mut in_set, &mut members, &mut queue);
        }
    }
    members.sort_unstable();
    members
}

/// Complete subgroup enumeration, sorted by (order, elements).
///
/// Works by closing the lattice upward: every subgroup is the closure of a
/// smaller one plus a single element, so breadth-first closure from the
/// trivial subgroup finds them all.
pub fn subgroups(group: &Arc<Group>, caps: &Caps) -> Result<Vec<Subgroup>, GroupError> {
    let n = group.order();
    if n > caps.subgroup_order {
        return Err(GroupError::SizeCapExceeded {
            what: "subgroup enumeration order",
            requested: n,
            cap: caps.subgroup_order,
        });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial = vec![0usize];
    found.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in 1..n {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(g);
            let c = closure_bitset(group, &seed);
            if found.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    let mut list: Vec<Vec<usize>> = found.into_iter().collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(list
        .into_iter()
        .map(|elements| Subgroup {
            group: group.clone(),
            elements,
        })
        .collect())
}

/// The normal subgroups, in the same order as [`subgroups`].
pub fn normal_subgroups(group: &Arc<Group>, caps: &Caps) -> Result<Vec<Subgroup>, GroupError> {
    Ok(subgroups(group, caps)?
        .into_iter()
        .filter(|s| s.is_normal())
        .collect())
}

/// The left cosets `gK` of a subgroup, indexed by minimal member, with the
/// minimal member as canonical representative. When the subgroup is normal
/// the quotient group is built (and fully re-validated) as well.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    group: Arc<Group>,
    subgroup: Subgroup,
    coset_of: Vec<usize>,
    representatives: Vec<usize>,
    members: Vec<Vec<usize>>,
    quotient: Option<Arc<Group>>,
}

impl CosetSpace {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    /// Present iff the subgroup is normal.
    pub fn quotient_group(&self) -> Option<&Arc<Group>> {
        self.quotient.as_ref()
    }

    /// The coset action `g · (hK) = (gh)K`.
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.coset_of[self.group.op(g, self.representatives[c])]
    }
}

/// Partition a group into left cosets of `k`.
///
/// Never fails: a non-normal subgroup simply yields a coset partition
/// without a quotient group.
pub fn quotient(group: &Arc<Group>, k: &Subgroup) -> Result<CosetSpace, GroupError> {
    if !same_group(group, k.group()) {
        return Err(GroupError::GroupMismatch);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(g);
        let mut row: Vec<usize> = k.elements().iter().map(|&x| group.op(g, x)).collect();
        row.sort_unstable();
        for &m in &row {
            coset_of[m] = c;
        }
        members.push(row);
    }

    let quotient = if k.is_normal() {
        let m = representatives.len();
        let mut table = vec![vec![0usize; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = coset_of[group.op(representatives[a], representatives[b])];
            }
        }
        let name = format!("{}/K{}", group.name(), k.order());
        let q = make_group(&table, &name)?;
        // The quotient map must be a homomorphism on all elements, not just
        // on representatives.
        for a in 0..n {
            for b in 0..n {
                debug_assert_eq!(
                    coset_of[group.op(a, b)],
                    q.op(coset_of[a], coset_of[b]),
                    "quotient map is not a homomorphism at ({a},{b})"
                );
            }
        }
        Some(Arc::new(q))
    } else {
        None
    };

    Ok(CosetSpace {
        group: group.clone(),
        subgroup: k.clone(),
        coset_of,
        representatives,
        members,
        quotient,
    })
}

/// How to choose coset representatives for a cross section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionPolicy {
    /// The canonical representative (minimal element index) of each coset.
    MinIndex,
    /// A uniformly random member per coset, drawn from a ChaCha stream
    /// seeded with the given value; fully deterministic per seed.
    SeededRandom(u64),
    /// An explicit table, coset index → element.
    Explicit(Vec<usize>),
}

impl SectionPolicy {
    pub fn label(&self) -> String {
        match self {
            SectionPolicy::MinIndex => "min-index".to_string(),
            SectionPolicy::SeededRandom(seed) => format!("seeded-random({seed})"),
            SectionPolicy::Explicit(_) => "explicit".to_string(),
        }
    }
}

/// A cross section of a coset space: one representative per coset, with the
/// identity coset pinned to the identity element.
#[derive(Debug, Clone)]
pub struct CrossSection {
    cosets: Arc<CosetSpace>,
    section: Vec<usize>,
    policy: String,
}

impl CrossSection {
    pub fn cosets(&self) -> &Arc<CosetSpace> {
        &self.cosets
    }

    pub fn group(&self) -> &Arc<Group> {
        self.cosets.group()
    }

    pub fn value(&self, c: usize) -> usize {
        self.section[c]
    }

    pub fn table(&self) -> &[usize] {
        &self.section
    }

    pub fn policy(&self) -> &str {
        &self.policy
    }
}

/// Choose a section of the quotient map under the given policy.
///
/// Any raw choice is normalized by right-shifting with the inverse of the
/// identity coset's pick, which stays inside each coset and pins the
/// identity coset to the identity element.
pub fn cross_section(
    cosets: &Arc<CosetSpace>,
    policy: &SectionPolicy,
) -> Result<CrossSection, GroupError> {
    let group = cosets.group();
    let m = cosets.count();
    let mut raw: Vec<usize> = match policy {
        SectionPolicy::MinIndex => (0..m).map(|c| cosets.representative(c)).collect(),
        SectionPolicy::SeededRandom(seed) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            (0..m)
                .map(|c| {
                    let row = cosets.members(c);
                    row[(rng.next_u64() % row.len() as u64) as usize]
                })
                .collect()
        }
        SectionPolicy::Explicit(table) => {
            if table.len() != m {
                return Err(GroupError::MalformedTable {
                    detail: format!("section table has {} entries for {m} cosets", table.len()),
                });
            }
            for (c, &g) in table.iter().enumerate() {
                if g >= group.order() || cosets.coset_of(g) != c {
                    return Err(GroupError::NotASection { coset: c, element: g });
                }
            }
            table.clone()
        }
    };

    // Normalize: s(c) ← s(c) · s(K)⁻¹. The shift factor lies in the
    // subgroup, so it preserves every left coset.
    let shift = group.inv(raw[0]);
    for v in raw.iter_mut() {
        *v = group.op(*v, shift);
    }
    debug_assert_eq!(raw[0], 0);
    debug_assert!((0..m).all(|c| cosets.coset_of(raw[c]) == c));

    Ok(CrossSection {
        cosets: cosets.clone(),
        section: raw,
        policy: policy.label(),
    })
}
