//! Brute-force group isomorphism search.
//!
//! Backtracks over images of a greedy generating sequence, forcing the rest
//! of the map by product closure and pruning candidates by element order.
//! Every map returned has been re-verified as a bijective homomorphism on
//! all pairs, so a returned witness is self-certifying.

use alloc::vec;
use alloc::vec::Vec;

use super::Group;

/// Greedy generating sequence: repeatedly adjoin the smallest element
/// outside the closure of what we have.
pub(crate) fn generating_sequence(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut closed = 1;
    let mut closure = vec![false; n];
    closure[0] = true;
    while closed < n {
        let next = (1..n).find(|&x| !closure[x]).expect("closure incomplete");
        gens.push(next);
        // Re-close from scratch; group orders here are small.
        closure = vec![false; n];
        closure[0] = true;
        closed = 1;
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &gen in &gens {
                let y = g.op(x, gen);
                if !closure[y] {
                    closure[y] = true;
                    members.push(y);
                    closed += 1;
                }
            }
        }
    }
    gens
}

/// Close the partial map generated by `images` of `gens`.
///
/// Returns the partial map and the number of elements it covers, or `None`
/// on a multiplicative or injectivity conflict. With a full generating
/// sequence the cover count equals the group order.
fn force_map(
    a: &Group,
    b: &Group,
    gens: &[usize],
    images: &[usize],
) -> Option<(Vec<usize>, usize)> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; b.order()];
    map[0] = 0;
    used[0] = true;
    let mut worklist = vec![0usize];
    let mut head = 0;
    while head < worklist.len() {
        let x = worklist[head];
        head += 1;
        for (i, &gen) in gens.iter().enumerate() {
            let y = a.op(x, gen);
            let img = b.op(map[x], images[i]);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                map[y] = img;
                used[img] = true;
                worklist.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let covered = worklist.len();
    Some((map, covered))
}

fn is_full_homomorphism(a: &Group, b: &Group, map: &[usize]) -> bool {
    let n = a.order();
    for x in 0..n {
        for y in 0..n {
            if map[a.op(x, y)] != b.op(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

/// All isomorphisms `a → b` (or the first `limit`), in deterministic
/// search order. Empty when none exist.
pub fn enumerate_isomorphisms(a: &Group, b: &Group, limit: Option<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if a.order() != b.order() {
        return out;
    }
    let n = a.order();
    if n == 1 {
        return vec![vec![0usize]];
    }
    let order_a: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let order_b: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    {
        let mut sa = order_a.clone();
        let mut sb = order_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return out;
        }
    }

    let gens = generating_sequence(a);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&x| order_b[x] == order_a[g]).collect())
        .collect();

    let mut images = vec![0usize; gens.len()];
    search(a, b, &gens, &candidates, &mut images, 0, limit, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &Group,
    b: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
    limit: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if let Some(l) = limit {
        if out.len() >= l {
            return;
        }
    }
    for &cand in &candidates[depth] {
        images[depth] = cand;
        match force_map(a, b, &gens[..=depth], &images[..=depth]) {
            None => continue,
            Some((map, covered)) => {
                if depth + 1 == gens.len() {
                    if covered == a.order() && is_full_homomorphism(a, b, &map) {
                        out.push(map);
                        if let Some(l) = limit {
                            if out.len() >= l {
                                return;
                            }
                        }
                    }
                } else {
                    search(a, b, gens, candidates, images, depth + 1, limit, out);
                }
            }
        }
    }
}

/// First isomorphism `a → b` in deterministic order, if any.
pub fn find_group_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    enumerate_isomorphisms(a, b, Some(1)).into_iter().next()
}

pub fn are_isomorphic(a: &Group, b: &Group) -> bool {
    find_group_isomorphism(a, b).is_some()
}
