//! Portrait encoding of tree automorphisms.
//!
//! A portrait labels every internal node of the depth-`d` rooted `n`-ary
//! tree with a permutation of its children (stored as an `S_n` lex rank).
//! The automorphism it denotes sends the leaf with digit address
//! `a_1 a_2 … a_d` to `σ_root(a_1) σ_{a_1}(a_2) …` — each node permutes the
//! next digit, and descent follows the *original* digits. Portraits are the
//! human-readable twin of the leaf-permutation encoding; the two must agree
//! under round-trips, which the tests enforce.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::perm;

/// Internal nodes stored in heap layout: the root is node 0 and the
/// children of node `v` are `n·v + 1 + a` for `a < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    pub n: usize,
    pub depth: usize,
    /// One `S_n` lex rank per internal node.
    pub nodes: Vec<usize>,
}

/// `(n^depth − 1) / (n − 1)` internal nodes.
pub fn internal_node_count(n: usize, depth: usize) -> usize {
    let mut total = 0;
    let mut layer = 1;
    for _ in 0..depth {
        total += layer;
        layer *= n;
    }
    total
}

impl Portrait {
    pub fn identity(n: usize, depth: usize) -> Portrait {
        Portrait {
            n,
            depth,
            nodes: vec![0; internal_node_count(n, depth)],
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.n.pow(self.depth as u32)
    }

    /// Evaluate the portrait on every leaf address.
    pub fn to_leaf_perm(&self) -> Vec<usize> {
        let n = self.n;
        let leaves = self.leaf_count();
        let mut out = vec![0usize; leaves];
        let words: Vec<Vec<usize>> = self
            .nodes
            .iter()
            .map(|&r| perm::lex_unrank(n, r))
            .collect();
        for (leaf, slot) in out.iter_mut().enumerate() {
            let mut digits = vec![0usize; self.depth];
            let mut rest = leaf;
            for i in (0..self.depth).rev() {
                digits[i] = rest % n;
                rest /= n;
            }
            let mut v = 0usize;
            let mut image = 0usize;
            for &a in digits.iter() {
                image = image * n + words[v][a];
                v = n * v + 1 + a;
            }
            *slot = image;
        }
        out
    }

    /// Recover a portrait from a leaf permutation; `None` when the
    /// permutation does not respect the tree (some node's subtrees are not
    /// mapped onto subtrees).
    pub fn from_leaf_perm(n: usize, depth: usize, leaf_perm: &[usize]) -> Option<Portrait> {
        if leaf_perm.len() != n.pow(depth as u32) || !perm::is_permutation(leaf_perm) {
            return None;
        }
        let mut nodes = vec![0usize; internal_node_count(n, depth)];
        if fill(n, depth, leaf_perm, 0, &mut nodes) {
            Some(Portrait { n, depth, nodes })
        } else {
            None
        }
    }
}

fn fill(n: usize, depth: usize, perm: &[usize], v: usize, nodes: &mut [usize]) -> bool {
    if depth == 0 {
        return true;
    }
    let block = n.pow((depth - 1) as u32);
    let mut word = vec![0usize; n];
    for a in 0..n {
        let image_block = perm[a * block] / block;
        for r in 0..block {
            if perm[a * block + r] / block != image_block {
                return false;
            }
        }
        word[a] = image_block;
    }
    if !perm::is_permutation(&word) {
        return false;
    }
    nodes[v] = perm::lex_rank(&word);
    for a in 0..n {
        let sub: Vec<usize> = (0..block).map(|r| perm[a * block + r] % block).collect();
        if !fill(n, depth - 1, &sub, n * v + 1 + a, nodes) {
            return false;
        }
    }
    true
}
