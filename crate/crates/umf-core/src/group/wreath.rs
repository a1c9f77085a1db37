//! Iterated wreath products: automorphism groups of truncated n-ary trees.
//!
//! `W_1 = S_n` and `W_d = S_n ⋉ (W_{d-1})^n`, the automorphism group of the
//! depth-`d` rooted `n`-ary tree acting on its `n^d` leaves. Elements are
//! semidirect pairs `(σ, (w_0, …, w_{n-1}))`: `σ` permutes the subtrees under
//! the root after each `w_a` has acted inside subtree `a`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::catalog::symmetric;
use super::perm;
use super::product::{direct_power, semidirect_product};
use super::{Group, GroupError};
use crate::caps::Caps;

/// One level of an iterated wreath product, with its level-1 kernel and the
/// projection onto the top `S_n`.
#[derive(Debug, Clone)]
pub struct WreathGroup {
    pub group: Arc<Group>,
    pub n: usize,
    pub depth: usize,
    /// Order of the previous level (`1` at depth 1).
    pub prev_order: usize,
    /// Elements of the level-1 kernel `(W_{d-1})^n` (trivial at depth 1).
    pub kernel_elements: Vec<usize>,
    /// Element → index of its root permutation in `S_n`.
    pub top_projection: Vec<usize>,
}

impl WreathGroup {
    fn kernel_order(&self) -> usize {
        self.kernel_elements.len()
    }

    /// Split an element into its root permutation and subtree parts.
    pub fn decompose(&self, g: usize) -> (usize, Vec<usize>) {
        let sigma = g / self.kernel_order();
        let mut rest = g % self.kernel_order();
        let mut parts = vec![0usize; self.n];
        if self.depth > 1 {
            for a in (0..self.n).rev() {
                parts[a] = rest % self.prev_order;
                rest /= self.prev_order;
            }
        }
        (sigma, parts)
    }

    /// Inverse of [`WreathGroup::decompose`].
    pub fn compose(&self, sigma: usize, parts: &[usize]) -> usize {
        let mut rest = 0usize;
        if self.depth > 1 {
            for &p in parts {
                rest = rest * self.prev_order + p;
            }
        }
        sigma * self.kernel_order() + rest
    }
}

/// `(n!)^((n^d - 1)/(n - 1))`, or `None` on overflow.
pub fn wreath_order(n: usize, d: usize) -> Option<u128> {
    if n < 2 || d < 1 {
        return None;
    }
    let mut exponent: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..d {
        exponent = exponent.checked_add(power)?;
        power = power.checked_mul(n as u128)?;
    }
    let base = (1..=n as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))?;
    let mut result: u128 = 1;
    for _ in 0..exponent {
        result = result.checked_mul(base)?;
    }
    Some(result)
}

/// Build every level `W_1 … W_d` as dense tables.
pub fn wreath_levels(n: usize, d: usize, caps: &Caps) -> Result<Vec<WreathGroup>, GroupError> {
    assert!(n >= 2, "iterated_wreath needs branching degree >= 2");
    assert!(d >= 1, "iterated_wreath needs depth >= 1");
    let predicted = wreath_order(n, d).ok_or(GroupError::SizeCapExceeded {
        what: "wreath tower order",
        requested: usize::MAX,
        cap: caps.table_order,
    })?;
    if predicted > caps.table_order as u128 {
        return Err(GroupError::SizeCapExceeded {
            what: "wreath tower order",
            requested: predicted.min(usize::MAX as u128) as usize,
            cap: caps.table_order,
        });
    }

    let mut levels: Vec<WreathGroup> = Vec::with_capacity(d);
    let top = symmetric(n, caps)?;
    let n_fact = top.order();
    levels.push(WreathGroup {
        group: Arc::new(top.clone().with_name(&format!("W{n}_1"))),
        n,
        depth: 1,
        prev_order: 1,
        kernel_elements: vec![0],
        top_projection: (0..n_fact).collect(),
    });

    for depth in 2..=d {
        let prev = &levels[depth - 2];
        let prev_order = prev.group.order();
        let base = direct_power(&prev.group, n);
        let theta = coordinate_permutation_action(n, prev_order, &top);
        let name = format!("W{n}_{depth}");
        let sd = semidirect_product(&top, &base, &theta, &name)?;
        let k_order = base.order();
        let order = sd.group.order();
        levels.push(WreathGroup {
            group: Arc::new(sd.group),
            n,
            depth,
            prev_order,
            kernel_elements: (0..k_order).collect(),
            top_projection: (0..order).map(|g| g / k_order).collect(),
        });
    }
    Ok(levels)
}

/// The deepest level of the tower: `Aut` of the depth-`d` `n`-ary tree.
pub fn iterated_wreath(n: usize, d: usize, caps: &Caps) -> Result<WreathGroup, GroupError> {
    Ok(wreath_levels(n, d, caps)?.pop().expect("at least one level"))
}

/// `θ(σ)` permutes the coordinates of `(W)^n`: coordinate `i` of the image
/// is coordinate `σ⁻¹(i)` of the argument (conjugation by the root action).
fn coordinate_permutation_action(n: usize, prev_order: usize, top: &Group) -> Vec<Vec<usize>> {
    let k_order = prev_order.pow(n as u32);
    let decode = |mut x: usize| -> Vec<usize> {
        let mut digits = vec![0usize; n];
        for a in (0..n).rev() {
            digits[a] = x % prev_order;
            x /= prev_order;
        }
        digits
    };
    (0..top.order())
        .map(|s| {
            let sigma = perm::lex_unrank(n, s);
            let sigma_inv = perm::invert(&sigma);
            (0..k_order)
                .map(|x| {
                    let digits = decode(x);
                    let mut out = 0usize;
                    for i in 0..n {
                        out = out * prev_order + digits[sigma_inv[i]];
                    }
                    out
                })
                .collect()
        })
        .collect()
}
