//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! Everything here is deliberately independent of the library's search
//! paths: posets are filtered from raw relation tables and maps from
//! raw image tables, so the library's answers are checked against
//! genuinely different computations.

#![allow(dead_code)]

use std::sync::Arc;

use fixpoint_core::poset::Poset;

/// Covers of the nine-element poset that is its own core yet has the
/// fixed point property and a fixed-point selector: three columns of
/// three, with the middle element wired across all columns.
pub const NINE_CORE_COVERS: [(usize, usize); 13] = [
    (0, 1),
    (1, 2),
    (6, 7),
    (7, 8),
    (0, 4),
    (4, 8),
    (6, 4),
    (4, 2),
    (3, 1),
    (1, 5),
    (3, 7),
    (7, 5),
    (3, 4),
];

pub fn nine_core() -> Arc<Poset> {
    Arc::new(Poset::from_covers(9, &NINE_CORE_COVERS).unwrap())
}

pub fn crown4() -> Arc<Poset> {
    Arc::new(Poset::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap())
}

/// All monotone self-map tables of `p`, by filtering every one of the
/// `n^n` raw tables. Exponential; keep `n` small.
pub fn brute_force_self_maps(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.n();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut t = vec![0usize; n];
        let mut c = code;
        for slot in t.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        let monotone =
            (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || p.leq(t[i], t[j])));
        if monotone {
            out.push(t);
        }
    }
    out
}

/// Permutation-based isomorphism test, independent of canonical forms.
pub fn brute_force_isomorphic(a: &Poset, b: &Poset) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm| {
        (0..n).all(|i| (0..n).all(|j| a.leq(i, j) == b.leq(perm[i], perm[j])))
    })
}

fn permute(perm: &mut Vec<usize>, k: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return check(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute(perm, k + 1, check) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// All labeled posets on `n` elements: every assignment of
/// {incomparable, <, >} to the element pairs that closes transitively.
pub fn all_labeled_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut state = vec![0u8; pairs.len()];
    loop {
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            rel[i][i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            match state[k] {
                1 => rel[i][j] = true,
                2 => rel[j][i] = true,
                _ => {}
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k])
            })
        });
        if transitive {
            out.push(Poset::from_relation(n, |i, j| rel[i][j]).unwrap());
        }
        // odometer over base-3 states
        let mut pos = 0;
        loop {
            if pos == state.len() {
                return out;
            }
            state[pos] += 1;
            if state[pos] == 3 {
                state[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}
