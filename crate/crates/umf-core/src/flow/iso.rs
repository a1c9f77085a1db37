//! Equivariant maps and the brute-force flow isomorphism oracle.
//!
//! [`find_isomorphism`] is the independent referee for every constructed
//! isomorphism in this crate: it never consults a candidate map, works by
//! anchored backtracking over orbit assignments, and exhaustively re-checks
//! equivariance and bijectivity of anything it returns. Candidate targets
//! are tried in increasing index, so the returned morphism is deterministic.

use alloc::vec;
use alloc::vec::Vec;

use super::{orbits, Flow, FlowError};
use crate::caps::Caps;
use crate::group::{perm, same_group};

/// An equivariant map between two flows of the same group.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowMorphism {
    pub source: Flow,
    pub target: Flow,
    pub map: Vec<usize>,
    /// Whether equivariance (and, for isomorphisms, bijectivity) has been
    /// re-verified exhaustively after construction.
    pub checked: bool,
}

impl FlowMorphism {
    /// First equivariance violation, if any.
    pub fn equivariance_violation(&self) -> Option<(usize, usize)> {
        check_equivariance(&self.source, &self.target, &self.map)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && perm::is_permutation(&self.map)
    }
}

/// Scan all `(g, x)` pairs for `map(g·x) != g·map(x)`.
pub fn check_equivariance(source: &Flow, target: &Flow, map: &[usize]) -> Option<(usize, usize)> {
    for g in source.group().elements() {
        for x in 0..source.size() {
            if map[source.act(g, x)] != target.act(g, map[x]) {
                return Some((g, x));
            }
        }
    }
    None
}

/// Why two flows were judged non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotIsomorphicWitness {
    SizeMismatch { a: usize, b: usize },
    /// Orbit-size multisets differ; both are reported sorted.
    OrbitMultisetMismatch { a: Vec<usize>, b: Vec<usize> },
    /// Every orbit assignment and anchor extension failed.
    SearchExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoVerdict {
    Isomorphic(FlowMorphism),
    NotIsomorphic(NotIsomorphicWitness),
}

impl IsoVerdict {
    pub fn morphism(&self) -> Option<&FlowMorphism> {
        match self {
            IsoVerdict::Isomorphic(m) => Some(m),
            IsoVerdict::NotIsomorphic(_) => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Search for a flow isomorphism between two flows of the same group.
///
/// Orbits are matched by size and each matching is anchored at a single
/// point: equivariance forces the rest of the orbit, so one assignment
/// either extends uniquely or dies. For transitive free flows this is the
/// closed form — each seed extends uniquely or fails — and `SearchExhausted`
/// then means every seed failed.
pub fn find_isomorphism(a: &Flow, b: &Flow, caps: &Caps) -> Result<IsoVerdict, FlowError> {
    if !same_group(a.group(), b.group()) {
        return Err(FlowError::GroupMismatch);
    }
    let cap = caps.iso_points;
    if a.size() > cap || b.size() > cap {
        return Err(FlowError::SizeCapExceeded {
            what: "flow isomorphism phase size",
            requested: a.size().max(b.size()),
            cap,
        });
    }
    if a.size() != b.size() {
        return Ok(IsoVerdict::NotIsomorphic(NotIsomorphicWitness::SizeMismatch {
            a: a.size(),
            b: b.size(),
        }));
    }
    let pa = orbits(a);
    let pb = orbits(b);
    if pa.size_multiset() != pb.size_multiset() {
        return Ok(IsoVerdict::NotIsomorphic(
            NotIsomorphicWitness::OrbitMultisetMismatch {
                a: pa.size_multiset(),
                b: pb.size_multiset(),
            },
        ));
    }

    let mut map = vec![usize::MAX; a.size()];
    let mut used_orbit = vec![false; pb.count()];
    if assign_orbit(a, b, &pa.members, &pb.members, 0, &mut used_orbit, &mut map) {
        assert!(
            perm::is_permutation(&map),
            "oracle postcondition: forced map must be a bijection"
        );
        assert!(
            check_equivariance(a, b, &map).is_none(),
            "oracle postcondition: forced map must be equivariant"
        );
        Ok(IsoVerdict::Isomorphic(FlowMorphism {
            source: a.clone(),
            target: b.clone(),
            map,
            checked: true,
        }))
    } else {
        Ok(IsoVerdict::NotIsomorphic(NotIsomorphicWitness::SearchExhausted))
    }
}

fn assign_orbit(
    a: &Flow,
    b: &Flow,
    orbits_a: &[Vec<usize>],
    orbits_b: &[Vec<usize>],
    idx: usize,
    used: &mut [bool],
    map: &mut [usize],
) -> bool {
    if idx == orbits_a.len() {
        return true;
    }
    let oa = &orbits_a[idx];
    for (j, ob) in orbits_b.iter().enumerate() {
        if used[j] || ob.len() != oa.len() {
            continue;
        }
        for &anchor in ob {
            let Some(undo) = force_orbit(a, b, oa[0], anchor, map) else {
                continue;
            };
            used[j] = true;
            if assign_orbit(a, b, orbits_a, orbits_b, idx + 1, used, map) {
                return true;
            }
            used[j] = false;
            for p in undo {
                map[p] = usize::MAX;
            }
        }
    }
    false
}

/// Force `x ↦ y` across the orbit of `x`: every `g` pins `g·x ↦ g·y`.
/// Returns the points assigned (for undo), or `None` on conflict.
fn force_orbit(a: &Flow, b: &Flow, x: usize, y: usize, map: &mut [usize]) -> Option<Vec<usize>> {
    let mut assigned = Vec::new();
    for g in a.group().elements() {
        let p = a.act(g, x);
        let q = b.act(g, y);
        if map[p] == usize::MAX {
            map[p] = q;
            assigned.push(p);
        } else if map[p] != q {
            for &r in &assigned {
                map[r] = usize::MAX;
            }
            return None;
        }
    }
    Some(assigned)
}
