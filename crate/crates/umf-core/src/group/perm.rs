//! Permutation words and lexicographic ranking.
//!
//! A permutation of `{0, …, n-1}` is stored as its image word: `w[i]` is the
//! image of `i`. Composition follows the action convention used everywhere in
//! this crate: `compose(a, b)` applies `b` first, so `(a ∘ b)(x) = a(b(x))`.

use alloc::vec::Vec;

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&bx| a[bx]).collect()
}

pub fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        inv[ai] = i;
    }
    inv
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn is_permutation(w: &[usize]) -> bool {
    let n = w.len();
    let mut seen = alloc::vec![false; n];
    for &x in w {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Lexicographic rank of an image word among all `n!` permutations.
pub fn lex_rank(w: &[usize]) -> usize {
    let n = w.len();
    let mut rank = 0;
    for i in 0..n {
        // count later entries smaller than w[i]
        let smaller = w[i + 1..].iter().filter(|&&x| x < w[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`lex_rank`]: the `rank`-th permutation of `{0,…,n-1}` in
/// lexicographic order.
pub fn lex_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut factorials = alloc::vec![1usize; n + 1];
    for i in 1..=n {
        factorials[i] = factorials[i - 1] * i;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let mut word = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorials[n - 1 - i];
        let idx = rank / f;
        rank %= f;
        word.push(pool.remove(idx));
    }
    word
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
