//! Deterministic Schreier–Sims: order of a permutation group from
//! generators, via a stabilizer chain with explicit transversals.
//!
//! Degrees here are tiny (leaf counts of truncated trees), so the classic
//! textbook algorithm with a fixpoint pass over Schreier generators is more
//! than fast enough, while group orders can be astronomically larger than
//! anything enumerable — hence `u128`.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::perm::{compose, identity, invert};

/// Generators are stored at the deepest level whose base prefix they fix;
/// the generating set of the `i`-th stabilizer is the union over levels
/// `≥ i`.
struct Chain {
    degree: usize,
    bases: Vec<usize>,
    gens: Vec<Vec<Vec<usize>>>,
    /// `transversals[i][p]` maps `bases[i]` to `p` within the `i`-th
    /// stabilizer subgroup.
    transversals: Vec<Vec<Option<Vec<usize>>>>,
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| x == i)
}

fn first_moved_point(p: &[usize]) -> Option<usize> {
    p.iter().enumerate().find(|&(i, &x)| x != i).map(|(i, _)| i)
}

impl Chain {
    fn new(degree: usize) -> Chain {
        Chain {
            degree,
            bases: Vec::new(),
            gens: Vec::new(),
            transversals: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.bases.len()
    }

    /// All generators of the `i`-th stabilizer: everything stored at level
    /// `i` or deeper fixes the first `i` base points.
    fn effective_gens(&self, i: usize) -> Vec<Vec<usize>> {
        self.gens[i..].iter().flatten().cloned().collect()
    }

    fn recompute_orbit(&mut self, i: usize) {
        let gens = self.effective_gens(i);
        let base = self.bases[i];
        let mut transversal: Vec<Option<Vec<usize>>> = vec![None; self.degree];
        transversal[base] = Some(identity(self.degree));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            let rep = transversal[p].clone().expect("queued points have reps");
            for s in &gens {
                let q = s[p];
                if transversal[q].is_none() {
                    transversal[q] = Some(compose(s, &rep));
                    queue.push(q);
                }
            }
        }
        self.transversals[i] = transversal;
    }

    /// Strip `perm` through levels `from..`; `Some((level, residue))` when
    /// the residue is not representable there, `None` if it sifts away.
    fn sift(&self, from: usize, perm: &[usize]) -> Option<(usize, Vec<usize>)> {
        let mut p = perm.to_vec();
        for i in from..self.len() {
            if is_identity(&p) {
                return None;
            }
            let image = p[self.bases[i]];
            match &self.transversals[i][image] {
                None => return Some((i, p)),
                Some(rep) => p = compose(&invert(rep), &p),
            }
        }
        if is_identity(&p) {
            None
        } else {
            Some((self.len(), p))
        }
    }

    fn insert(&mut self, level: usize, perm: Vec<usize>) {
        if level == self.len() {
            let base = first_moved_point(&perm).expect("identity never reaches insert");
            self.bases.push(base);
            self.gens.push(Vec::new());
            self.transversals.push(vec![None; self.degree]);
        }
        self.gens[level].push(perm);
        // The new generator participates in every level up to its own.
        for i in (0..=level).rev() {
            self.recompute_orbit(i);
        }
    }

    fn order(&self) -> u128 {
        self.transversals
            .iter()
            .map(|t| t.iter().filter(|r| r.is_some()).count() as u128)
            .product()
    }
}

/// Order of the permutation group generated by `generators` on
/// `0..degree`.
pub fn permutation_group_order(degree: usize, generators: &[Vec<usize>]) -> u128 {
    let mut chain = Chain::new(degree);
    for g in generators {
        assert_eq!(g.len(), degree, "generator degree mismatch");
        if let Some((level, residue)) = chain.sift(0, g) {
            chain.insert(level, residue);
        }
    }

    // Close under Schreier generators until every one sifts away.
    loop {
        let mut pending: Option<(usize, Vec<usize>)> = None;
        'scan: for i in 0..chain.len() {
            let gens = chain.effective_gens(i);
            for p in 0..degree {
                let Some(rep) = chain.transversals[i][p].clone() else {
                    continue;
                };
                for s in &gens {
                    let target = chain.transversals[i][s[p]]
                        .as_ref()
                        .expect("orbit is closed under its own generators");
                    let schreier = compose(&invert(target), &compose(s, &rep));
                    if is_identity(&schreier) {
                        continue;
                    }
                    if let Some(hit) = chain.sift(i + 1, &schreier) {
                        pending = Some(hit);
                        break 'scan;
                    }
                }
            }
        }
        match pending {
            Some((level, residue)) => chain.insert(level, residue),
            None => break,
        }
    }

    chain.order()
}
