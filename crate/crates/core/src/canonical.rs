//! Exact canonical forms for small posets.
//!
//! Two posets get the same byte string iff they are order-isomorphic.
//! The string is the lexicographically smallest "staircase" encoding of
//! the incidence matrix over all relabelings, where the staircase reads,
//! for each k, the column above and then the row left of entry (k, k).
//! Candidate relabelings are cut down by an iterated invariant
//! refinement (degree vectors, then neighbour multisets), which is what
//! keeps the search cheap on structured inputs.

use alloc::collections::BTreeMap;
use alloc::{vec, vec::Vec};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::Limits;

/// Canonical byte string; equal iff order-isomorphic (within the
/// configured size bound).
pub fn canonical_form(p: &Poset, limits: &Limits) -> Result<Vec<u8>> {
    let n = p.n();
    if n > limits.max_canonical_n {
        return Err(Error::SizeLimit {
            what: "canonical form",
            requested: n,
            limit: limits.max_canonical_n,
        });
    }
    if n == 0 {
        return Ok(vec![0]);
    }

    let classes = refine_classes(p);
    // Positions are filled class block by class block; the class id
    // sequence itself is part of no output, but isomorphic posets share
    // the same sorted sequence, so restricting each position to one
    // class is sound.
    let mut position_class: Vec<u32> = classes.clone();
    position_class.sort_unstable();

    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = vec![usize::MAX; n]; // position -> element
    let mut used = vec![false; n];
    let mut bits: Vec<bool> = Vec::with_capacity(n * n);
    search(
        p,
        &classes,
        &position_class,
        &mut perm,
        &mut used,
        &mut bits,
        &mut best,
        0,
    );

    let bits = best.expect("at least one relabeling exists");
    let mut out = Vec::with_capacity(1 + bits.len().div_ceil(8));
    out.push(n as u8);
    let mut byte = 0u8;
    for (i, &b) in bits.iter().enumerate() {
        if b {
            byte |= 1 << (i % 8);
        }
        if i % 8 == 7 {
            out.push(byte);
            byte = 0;
        }
    }
    if bits.len() % 8 != 0 {
        out.push(byte);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &Poset,
    classes: &[u32],
    position_class: &[u32],
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    bits: &mut Vec<bool>,
    best: &mut Option<Vec<bool>>,
    k: usize,
) {
    let n = p.n();
    if k == n {
        if best.as_ref().map(|b| bits[..] < b[..]).unwrap_or(true) {
            *best = Some(bits.clone());
        }
        return;
    }
    let base = bits.len();
    for e in 0..n {
        if used[e] || classes[e] != position_class[k] {
            continue;
        }
        perm[k] = e;
        for i in 0..k {
            bits.push(p.leq(perm[i], e));
        }
        for j in 0..k {
            bits.push(p.leq(e, perm[j]));
        }
        // Safe to prune on a strictly larger prefix: the incumbent only
        // ever shrinks, so the comparison cannot go stale.
        let prune = match best.as_ref() {
            Some(b) => bits[..] > b[..bits.len()],
            None => false,
        };
        if !prune {
            used[e] = true;
            search(p, classes, position_class, perm, used, bits, best, k + 1);
            used[e] = false;
        }
        bits.truncate(base);
    }
}

/// Iterated 1-dimensional refinement: start from (|down|, |up|), then
/// repeatedly append the sorted class multisets of strict lower and
/// upper neighbours until the partition stabilises.
fn refine_classes(p: &Poset) -> Vec<u32> {
    let n = p.n();
    let mut class: Vec<u32> = {
        let keys: Vec<(usize, usize)> = (0..n)
            .map(|x| (p.strict_down_set(x).count(), p.strict_up_set(x).count()))
            .collect();
        dense_ids(&keys)
    };
    loop {
        let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|x| {
                let mut lo: Vec<u32> = p.strict_down_set(x).iter().map(|y| class[y]).collect();
                let mut hi: Vec<u32> = p.strict_up_set(x).iter().map(|y| class[y]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                (class[x], lo, hi)
            })
            .collect();
        let next = dense_ids(&keys);
        if next == class {
            return class;
        }
        class = next;
    }
}

fn dense_ids<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    let mut ids = BTreeMap::new();
    let mut next = 0u32;
    for k in sorted {
        ids.entry(k.clone()).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
    }
    keys.iter().map(|k| ids[k]).collect()
}
