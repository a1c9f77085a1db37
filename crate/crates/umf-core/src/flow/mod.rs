//! Finite flows: validated left actions of a finite group on a finite
//! phase set, with orbits, minimality, freeness, ambits, and quotient
//! (orbit-space) flows.
//!
//! For a finite group every flow-theoretic notion collapses to something
//! checkable: "dense orbit" means full orbit, minimal subflows are exactly
//! the orbits, and the universal minimal flow and greatest ambit both equal
//! the group translating itself.

pub mod iso;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::group::{quotient, same_group, Group, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("malformed action table: {detail}")]
    MalformedAction { detail: String },
    #[error("identity moves point {point}")]
    IdentityActsNontrivially { point: usize },
    #[error("action law fails: (g={g})·((h={h})·{x}) != (g·h)·{x}")]
    ActionLawViolated { g: usize, h: usize, x: usize },
    #[error("base point {base} does not have a full orbit")]
    BasePointOrbitNotFull { base: usize },
    #[error("flows or structures belong to different groups")]
    GroupMismatch,
    #[error("subgroup is not normal; orbit-space flow needs a quotient group")]
    SubgroupNotNormal,
    #[error("quotient action ill-defined at (g={g}, x={x})")]
    IllDefinedQuotientAction { g: usize, x: usize },
    #[error("{what} = {requested} exceeds cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A validated left action of a finite group on `size` phase points.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow {
    group: Arc<Group>,
    size: usize,
    action: Vec<usize>,
    base_point: Option<usize>,
}

impl Flow {
    /// Validate an action table (one row per group element) and build a
    /// flow. Errors name the first violated axiom with witnesses.
    pub fn make(
        group: &Arc<Group>,
        action: &[Vec<usize>],
        base_point: Option<usize>,
    ) -> Result<Flow, FlowError> {
        let n = group.order();
        if action.len() != n {
            return Err(FlowError::MalformedAction {
                detail: format!("{} rows for group of order {n}", action.len()),
            });
        }
        let size = action.first().map(|r| r.len()).unwrap_or(0);
        if size == 0 {
            return Err(FlowError::MalformedAction {
                detail: "empty phase set".to_string(),
            });
        }
        for (g, row) in action.iter().enumerate() {
            if row.len() != size {
                return Err(FlowError::MalformedAction {
                    detail: format!("row {g} has length {} expected {size}", row.len()),
                });
            }
            for (x, &y) in row.iter().enumerate() {
                if y >= size {
                    return Err(FlowError::MalformedAction {
                        detail: format!("action[{g}][{x}] = {y} out of range 0..{size}"),
                    });
                }
            }
        }
        for x in 0..size {
            if action[0][x] != x {
                return Err(FlowError::IdentityActsNontrivially { point: x });
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.op(g, h);
                for x in 0..size {
                    if action[gh][x] != action[g][action[h][x]] {
                        return Err(FlowError::ActionLawViolated { g, h, x });
                    }
                }
            }
        }

        let mut flat = Vec::with_capacity(n * size);
        for row in action {
            flat.extend_from_slice(row);
        }
        let flow = Flow {
            group: group.clone(),
            size,
            action: flat,
            base_point: None,
        };
        if let Some(b) = base_point {
            if b >= size {
                return Err(FlowError::MalformedAction {
                    detail: format!("base point {b} out of range 0..{size}"),
                });
            }
            if flow.orbit_of_point(b).len() != size {
                return Err(FlowError::BasePointOrbitNotFull { base: b });
            }
        }
        Ok(Flow {
            base_point,
            ..flow
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn base_point(&self) -> Option<usize> {
        self.base_point
    }

    pub fn action_row(&self, g: usize) -> &[usize] {
        &self.action[g * self.size..(g + 1) * self.size]
    }

    /// Drop or replace the base point without re-validating the action.
    pub fn with_base_point(mut self, base: Option<usize>) -> Result<Flow, FlowError> {
        if let Some(b) = base {
            if b >= self.size {
                return Err(FlowError::MalformedAction {
                    detail: format!("base point {b} out of range 0..{}", self.size),
                });
            }
            if self.orbit_of_point(b).len() != self.size {
                return Err(FlowError::BasePointOrbitNotFull { base: b });
            }
        }
        self.base_point = base;
        Ok(self)
    }

    fn orbit_of_point(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[x] = true;
        let mut members = vec![x];
        let mut head = 0;
        while head < members.len() {
            let p = members[head];
            head += 1;
            for g in self.group.elements() {
                let q = self.act(g, p);
                if !seen[q] {
                    seen[q] = true;
                    members.push(q);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

/// Validate an action table and build a flow.
pub fn make_flow(
    group: &Arc<Group>,
    action: &[Vec<usize>],
    base_point: Option<usize>,
) -> Result<Flow, FlowError> {
    Flow::make(group, action, base_point)
}

/// The group translating itself: `g · x = gx`, based at the identity.
///
/// For a finite (hence compact) group this single flow is simultaneously
/// the greatest ambit and the universal minimal flow.
pub fn left_translation_flow(group: &Arc<Group>) -> Flow {
    let n = group.order();
    let rows: Vec<Vec<usize>> = (0..n).map(|g| group.row(g).to_vec()).collect();
    Flow::make(group, &rows, Some(0)).expect("left translation is a free transitive flow")
}

/// `M(G)`: for finite groups, left translation.
pub fn universal_minimal(group: &Arc<Group>) -> Flow {
    left_translation_flow(group)
}

/// `S(G)`: for finite groups, left translation.
pub fn greatest_ambit(group: &Arc<Group>) -> Flow {
    left_translation_flow(group)
}

/// The transitive flow on left cosets `hK`, `g · hK = (gh)K`, based at `K`.
/// The subgroup need not be normal.
pub fn coset_flow(group: &Arc<Group>, k: &Subgroup) -> Result<Flow, FlowError> {
    if !same_group(group, k.group()) {
        return Err(FlowError::GroupMismatch);
    }
    let cs = quotient(group, k)?;
    let m = cs.count();
    let rows: Vec<Vec<usize>> = (0..group.order())
        .map(|g| (0..m).map(|c| cs.act(g, c)).collect())
        .collect();
    Flow::make(group, &rows, Some(0))
}

/// Orbit partition of a flow; orbit indices run in order of each orbit's
/// minimal point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbit_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Orbit sizes in ascending order.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.members.iter().map(|m| m.len()).collect();
        sizes.sort_unstable();
        sizes
    }
}

pub fn orbits(flow: &Flow) -> OrbitPartition {
    orbits_under(flow, None)
}

/// Orbit partition computed by closure over a generating set only, for
/// flows whose acting subgroup is known by generators (wreath towers). Must
/// agree with the full-table sweep wherever both apply.
pub fn orbits_with_generators(flow: &Flow, generators: &[usize]) -> OrbitPartition {
    orbits_under(flow, Some(generators))
}

/// Orbit partition under a subgroup's action (the whole group if `None`).
pub(crate) fn orbits_under(flow: &Flow, sub: Option<&[usize]>) -> OrbitPartition {
    let size = flow.size();
    let mut orbit_of = vec![usize::MAX; size];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let full: Vec<usize> = flow.group().elements().collect();
    let gens: &[usize] = sub.unwrap_or(&full);
    for start in 0..size {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let idx = members.len();
        orbit_of[start] = idx;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for &g in gens {
                let q = flow.act(g, p);
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = idx;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    OrbitPartition { orbit_of, members }
}

/// The orbits as restricted flows; for finite group actions these are
/// exactly the minimal subflows, and they partition the phase set.
pub fn minimal_subflows(flow: &Flow) -> Vec<Flow> {
    let partition = orbits(flow);
    partition
        .members
        .iter()
        .map(|members| {
            let rank = |p: usize| -> usize {
                members.binary_search(&p).expect("orbit members are closed")
            };
            let rows: Vec<Vec<usize>> = flow
                .group()
                .elements()
                .map(|g| members.iter().map(|&p| rank(flow.act(g, p))).collect())
                .collect();
            let base = flow
                .base_point()
                .and_then(|b| members.binary_search(&b).ok());
            Flow::make(flow.group(), &rows, base).expect("restriction to an orbit is a flow")
        })
        .collect()
}

/// One orbit ⇔ no proper nonempty closed invariant subset.
pub fn is_minimal(flow: &Flow) -> bool {
    orbits(flow).count() == 1
}

/// No nonidentity element fixes any point.
pub fn is_free(flow: &Flow) -> bool {
    for g in 1..flow.group().order() {
        for x in 0..flow.size() {
            if flow.act(g, x) == x {
                return false;
            }
        }
    }
    true
}

/// A base point is present and its orbit is the whole phase set.
pub fn is_ambit(flow: &Flow) -> bool {
    match flow.base_point() {
        None => false,
        Some(b) => flow.orbit_of_point(b).len() == flow.size(),
    }
}

/// Restrict the acting group to a subgroup, keeping the phase set. The base
/// point survives only if its orbit is still full.
pub fn restrict(flow: &Flow, k: &Subgroup) -> Result<Flow, FlowError> {
    if !same_group(flow.group(), k.group()) {
        return Err(FlowError::GroupMismatch);
    }
    let name = format!("{}[{}]", flow.group().name(), k.order());
    let sub = Arc::new(k.as_group(&name)?);
    let rows: Vec<Vec<usize>> = k
        .elements()
        .iter()
        .map(|&g| flow.action_row(g).to_vec())
        .collect();
    let restricted = Flow::make(&sub, &rows, None)?;
    let base = flow.base_point().filter(|&b| {
        restricted.orbit_of_point(b).len() == restricted.size()
    });
    restricted.with_base_point(base)
}

/// The quotient-group flow on the orbit space of a normal subgroup's
/// restricted action: `(Kg) · (Kx) = K(gx)`.
///
/// Well-definedness over every group element (not only coset
/// representatives) is verified exhaustively before the flow is built.
pub fn orbit_space_flow(flow: &Flow, k: &Subgroup) -> Result<Flow, FlowError> {
    if !same_group(flow.group(), k.group()) {
        return Err(FlowError::GroupMismatch);
    }
    let cs = quotient(flow.group(), k)?;
    let q = cs.quotient_group().ok_or(FlowError::SubgroupNotNormal)?.clone();
    let partition = orbits_under(flow, Some(k.elements()));
    let m = partition.count();
    let mut rows = vec![vec![0usize; m]; q.order()];
    for c in 0..q.order() {
        let rep = cs.representative(c);
        for (o, members) in partition.members.iter().enumerate() {
            rows[c][o] = partition.orbit_of[flow.act(rep, members[0])];
        }
    }
    for g in flow.group().elements() {
        let c = cs.coset_of(g);
        for x in 0..flow.size() {
            if partition.orbit_of[flow.act(g, x)] != rows[c][partition.orbit_of[x]] {
                return Err(FlowError::IllDefinedQuotientAction { g, x });
            }
        }
    }
    let base = flow.base_point().map(|b| partition.orbit_of[b]);
    Flow::make(&q, &rows, base)
}

/// The diagonal action on the cartesian product, `g(x,y) = (gx, gy)`,
/// encoded as `x · |Y| + y`. The pair of base points is kept only when its
/// diagonal orbit is full, which generally fails even for two ambits.
pub fn product_flow(a: &Flow, b: &Flow) -> Result<Flow, FlowError> {
    if !same_group(a.group(), b.group()) {
        return Err(FlowError::GroupMismatch);
    }
    let size = a.size() * b.size();
    let rows: Vec<Vec<usize>> = a
        .group()
        .elements()
        .map(|g| {
            (0..size)
                .map(|p| a.act(g, p / b.size()) * b.size() + b.act(g, p % b.size()))
                .collect()
        })
        .collect();
    let flow = Flow::make(a.group(), &rows, None)?;
    let base = match (a.base_point(), b.base_point()) {
        (Some(x), Some(y)) => {
            let candidate = x * b.size() + y;
            (flow.orbit_of_point(candidate).len() == size).then_some(candidate)
        }
        _ => None,
    };
    flow.with_base_point(base)
}
