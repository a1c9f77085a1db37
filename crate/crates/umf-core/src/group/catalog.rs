//! The built-in group catalog.
//!
//! Element encodings are part of the contract:
//! * `cyclic(n)`: residues mod `n`, addition.
//! * `symmetric(n)`: permutations of `{0,…,n-1}` indexed by lexicographic
//!   rank of their image word; product is composition, right factor first.
//! * `dihedral(n)`: order `2n`; index `k < n` is the rotation `x ↦ x+k`,
//!   index `n+k` is the reflection `x ↦ -(x+k)` on the `n` vertices.
//! * `quaternion8`: `1, i, j, k, -1, -i, -j, -k` in that index order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::perm;
use super::product::{direct_product, inversion_action, semidirect_product};
use super::wreath::iterated_wreath;
use super::{make_group, Group, GroupError};
use crate::caps::Caps;

/// The cyclic group of order `n` on residues.
pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1, "cyclic(n) needs n >= 1");
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let mut g = make_group(&table, &format!("C{n}")).expect("modular addition is a group");
    if n <= 16 {
        let labels: BTreeMap<usize, String> = (0..n).map(|i| (i, format!("{i}"))).collect();
        g = g.with_labels(labels);
    }
    g
}

/// The symmetric group on `n` letters, elements in lexicographic rank order.
pub fn symmetric(n: usize, caps: &Caps) -> Result<Group, GroupError> {
    assert!(n >= 1, "symmetric(n) needs n >= 1");
    if n > caps.symmetric_n {
        return Err(GroupError::SizeCapExceeded {
            what: "symmetric group degree",
            requested: n,
            cap: caps.symmetric_n,
        });
    }
    let order = perm::factorial(n);
    let words: Vec<Vec<usize>> = (0..order).map(|r| perm::lex_unrank(n, r)).collect();
    let mut table = vec![vec![0usize; order]; order];
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            table[i][j] = perm::lex_rank(&perm::compose(a, b));
        }
    }
    make_group(&table, &format!("S{n}"))
}

/// The dihedral group of order `2n`, acting on `n` vertices.
pub fn dihedral(n: usize) -> Group {
    assert!(n >= 1, "dihedral(n) needs n >= 1");
    let order = 2 * n;
    // Element k < n: x ↦ x + k. Element n + k: x ↦ -(x + k).
    let word = |idx: usize| -> Vec<usize> {
        if idx < n {
            (0..n).map(|x| (x + idx) % n).collect()
        } else {
            let k = idx - n;
            (0..n).map(|x| (2 * n - x - k) % n).collect()
        }
    };
    let words: Vec<Vec<usize>> = (0..order).map(word).collect();
    let rank = |w: &[usize]| -> usize {
        words
            .iter()
            .position(|v| v == w)
            .expect("dihedral words are closed under composition")
    };
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..order {
        for j in 0..order {
            table[i][j] = rank(&perm::compose(&words[i], &words[j]));
        }
    }
    make_group(&table, &format!("D{n}")).expect("dihedral table is a group")
}

/// The quaternion group of order 8.
pub fn quaternion8() -> Group {
    // Index: 0:1, 1:i, 2:j, 3:k, 4:-1, 5:-i, 6:-j, 7:-k.
    // Basis products carry a sign: i·j = k, j·k = i, k·i = j, x·x = -1.
    let basis_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (base, flip) = basis_mul(a % 4, b % 4);
            let neg = (a >= 4) ^ (b >= 4) ^ flip;
            table[a][b] = base + if neg { 4 } else { 0 };
        }
    }
    let labels: BTreeMap<usize, String> = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.to_string()))
        .collect();
    make_group(&table, "Q8")
        .expect("quaternion table is a group")
        .with_labels(labels)
}

/// The Klein four-group.
pub fn klein_four() -> Group {
    direct_product(&cyclic(2), &cyclic(2)).with_name("V4")
}

/// Names of the built-in catalog, in the fixed sweep order.
pub fn builtin_names() -> Vec<&'static str> {
    let mut names = Vec::new();
    names.extend([
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14",
        "C15", "C16",
    ]);
    names.extend(["D3", "D4", "D5", "D6", "D7", "D8"]);
    names.extend(["S3", "S4"]);
    names.extend(["Q8", "V4", "C2xC4", "S3xC2"]);
    names.extend(["C3byC2", "C4byC2", "C4byC4"]);
    names.extend(["W2_2", "W2_3"]);
    names
}

/// Build a catalog group by name.
pub fn builtin(name: &str, caps: &Caps) -> Result<Group, GroupError> {
    if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=16).contains(&n) {
            return Ok(cyclic(n));
        }
    }
    if let Some(n) = name.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
        if (3..=8).contains(&n) {
            return Ok(dihedral(n));
        }
    }
    match name {
        "S3" => symmetric(3, caps),
        "S4" => symmetric(4, caps),
        "Q8" => Ok(quaternion8()),
        "V4" => Ok(klein_four()),
        "C2xC4" => Ok(direct_product(&cyclic(2), &cyclic(4))),
        "S3xC2" => Ok(direct_product(&symmetric(3, caps)?, &cyclic(2))),
        "C3byC2" => {
            let h = cyclic(2);
            let k = cyclic(3);
            let theta = inversion_action(&h, &k);
            Ok(semidirect_product(&h, &k, &theta, "C3byC2")?.group)
        }
        "C4byC2" => {
            let h = cyclic(2);
            let k = cyclic(4);
            let theta = inversion_action(&h, &k);
            Ok(semidirect_product(&h, &k, &theta, "C4byC2")?.group)
        }
        "C4byC4" => {
            let h = cyclic(4);
            let k = cyclic(4);
            let theta = inversion_action(&h, &k);
            Ok(semidirect_product(&h, &k, &theta, "C4byC4")?.group)
        }
        "W2_2" => Ok((*iterated_wreath(2, 2, caps)?.group).clone()),
        "W2_3" => Ok((*iterated_wreath(2, 3, caps)?.group).clone()),
        _ => Err(GroupError::MalformedTable {
            detail: format!("unknown builtin group {name:?}"),
        }),
    }
}
