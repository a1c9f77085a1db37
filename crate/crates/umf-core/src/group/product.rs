//! Direct products, semidirect products, and automorphism groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::iso::enumerate_isomorphisms;
use super::{make_group, Group, GroupError, Subgroup};
use crate::caps::Caps;

/// `A × B` on pairs encoded as `a * |B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Group {
    let na = a.order();
    let nb = b.order();
    let n = na * nb;
    let mut table = vec![vec![0usize; n]; n];
    for a1 in 0..na {
        for b1 in 0..nb {
            for a2 in 0..na {
                for b2 in 0..nb {
                    table[a1 * nb + b1][a2 * nb + b2] = a.op(a1, a2) * nb + b.op(b1, b2);
                }
            }
        }
    }
    let name = format!("{}x{}", a.name(), b.name());
    make_group(&table, &name).expect("direct product of valid groups is valid")
}

/// `G^k` on big-endian digit tuples: index = Σ gᵢ · |G|^(k−1−i).
pub fn direct_power(g: &Group, k: usize) -> Group {
    assert!(k >= 1, "direct_power needs at least one factor");
    let m = g.order();
    let n = m.pow(k as u32);
    let decode = |mut x: usize| -> Vec<usize> {
        let mut digits = vec![0usize; k];
        for d in (0..k).rev() {
            digits[d] = x % m;
            x /= m;
        }
        digits
    };
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..n {
        let dx = decode(x);
        for y in 0..n {
            let dy = decode(y);
            let mut z = 0usize;
            for d in 0..k {
                z = z * m + g.op(dx[d], dy[d]);
            }
            table[x][y] = z;
        }
    }
    let name = format!("{}^{}", g.name(), k);
    make_group(&table, &name).expect("direct power of a valid group is valid")
}

/// A semidirect product `H ⋉ K` with its distinguished copies of `H` and `K`.
///
/// Elements are pairs `(h, k)` encoded as `h * |K| + k`, representing the
/// normal form `h·k`; the product rule is
/// `(h₁,k₁)(h₂,k₂) = (h₁h₂, θ(h₂⁻¹)(k₁)·k₂)` where `θ(h)` is conjugation by
/// `h`. With this encoding `K` embeds as indices `0..|K|`, `H` embeds as the
/// min-index coset representatives `h * |K|`, and `h ↦ h·|K|` is a
/// homomorphic section of the quotient by `K`.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: Group,
    pub h_order: usize,
    pub k_order: usize,
    /// The action tables actually used, `theta[h][k]`.
    pub theta: Vec<Vec<usize>>,
}

impl SemidirectProduct {
    pub fn embed_h(&self, h: usize) -> usize {
        h * self.k_order
    }

    pub fn embed_k(&self, k: usize) -> usize {
        k
    }

    pub fn project_h(&self, g: usize) -> usize {
        g / self.k_order
    }

    pub fn k_part(&self, g: usize) -> usize {
        g % self.k_order
    }

    /// The embedded normal factor `{e} × K`.
    pub fn k_subgroup(&self, group: &Arc<Group>) -> Subgroup {
        Subgroup::new(group, 0..self.k_order).expect("embedded K is a subgroup by construction")
    }

    /// The homomorphic section `H → G`, `h ↦ (h, e)`.
    pub fn section_table(&self) -> Vec<usize> {
        (0..self.h_order).map(|h| self.embed_h(h)).collect()
    }
}

/// Build `H ⋉ K` from an action `theta: H → Aut(K)`.
///
/// `theta[h]` is the image table of the automorphism assigned to `h`. Both
/// the automorphism property of each entry and the homomorphism property of
/// the assignment are verified exhaustively before the table is built.
pub fn semidirect_product(
    h: &Group,
    k: &Group,
    theta: &[Vec<usize>],
    name: &str,
) -> Result<SemidirectProduct, GroupError> {
    let nh = h.order();
    let nk = k.order();
    if theta.len() != nh {
        return Err(GroupError::MalformedTable {
            detail: format!("theta has {} rows for |H| = {nh}", theta.len()),
        });
    }
    for (hi, t) in theta.iter().enumerate() {
        if !is_automorphism(k, t) {
            return Err(GroupError::NotAnAutomorphism { h: hi });
        }
    }
    for a in 0..nh {
        for b in 0..nh {
            let ab = h.op(a, b);
            for x in 0..nk {
                if theta[ab][x] != theta[a][theta[b][x]] {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
    }

    let n = nh * nk;
    let mut table = vec![vec![0usize; n]; n];
    for h1 in 0..nh {
        for k1 in 0..nk {
            for h2 in 0..nh {
                let tw = &theta[h.inv(h2)];
                for k2 in 0..nk {
                    table[h1 * nk + k1][h2 * nk + k2] = h.op(h1, h2) * nk + k.op(tw[k1], k2);
                }
            }
        }
    }
    let group = make_group(&table, name)?;
    Ok(SemidirectProduct {
        group,
        h_order: nh,
        k_order: nk,
        theta: theta.to_vec(),
    })
}

/// Whether `map` is a bijective table preserving the operation of `k`.
pub fn is_automorphism(k: &Group, map: &[usize]) -> bool {
    let n = k.order();
    if map.len() != n || !super::perm::is_permutation(map) {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            if map[k.op(a, b)] != k.op(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

/// The trivial action: every element of `H` acts as the identity on `K`.
pub fn trivial_action(h: &Group, k: &Group) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..k.order()).collect();
    vec![id; h.order()]
}

/// The inversion action of a cyclic `H` on an abelian `K`: residue `h` acts
/// by `x ↦ x⁻¹` when `h` is odd and trivially when even. A homomorphism
/// whenever `|H|` is even or the action collapses; validation happens in
/// [`semidirect_product`].
pub fn inversion_action(h: &Group, k: &Group) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..k.order()).collect();
    let inv: Vec<usize> = (0..k.order()).map(|x| k.inv(x)).collect();
    (0..h.order())
        .map(|hi| if hi % 2 == 1 { inv.clone() } else { id.clone() })
        .collect()
}

/// All automorphisms of `k` together with their composition group.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    /// Composition group; element `i` is `maps[i]`, identity at index 0.
    pub group: Group,
    /// Image tables, sorted lexicographically.
    pub maps: Vec<Vec<usize>>,
}

/// Enumerate `Aut(K)` by backtracking over generator images.
pub fn automorphism_group(k: &Group, caps: &Caps) -> Result<AutomorphismGroup, GroupError> {
    if k.order() > caps.automorphism_order {
        return Err(GroupError::SizeCapExceeded {
            what: "automorphism group base order",
            requested: k.order(),
            cap: caps.automorphism_order,
        });
    }
    let mut maps = enumerate_isomorphisms(k, k, None);
    maps.sort();
    let index: BTreeMap<&[usize], usize> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let n = maps.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            let comp = super::perm::compose(a, b);
            table[i][j] = *index
                .get(comp.as_slice())
                .expect("automorphisms are closed under composition");
        }
    }
    let name = format!("Aut({})", k.name());
    let group = make_group(&table, &name)?;
    Ok(AutomorphismGroup { group, maps })
}
