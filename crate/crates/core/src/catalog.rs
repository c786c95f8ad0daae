//! Enumeration of all posets on up to `max_n` elements, one
//! representative per isomorphism class.
//!
//! Classes of size k are produced by attaching a fresh element to every
//! class of size k-1 in all consistent ways: pick a down-set D (the
//! elements below the new one) and an up-set U (those above) with
//! D ∩ U = ∅ and D × U already related, then deduplicate by canonical
//! form. Removing any element from a poset inverts one such step, so
//! the sweep is exhaustive.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::canonical::canonical_form;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::Limits;

/// One isomorphism class: a representative and its canonical form.
#[derive(Clone, Debug)]
pub struct CatalogClass {
    pub poset: Poset,
    pub canonical: Vec<u8>,
}

/// All classes of sizes `1..=max_n`, each level sorted by canonical form.
pub fn catalog(max_n: usize, limits: &Limits) -> Result<Vec<Vec<CatalogClass>>> {
    if max_n > limits.max_canonical_n {
        return Err(Error::SizeLimit {
            what: "catalog enumeration",
            requested: max_n,
            limit: limits.max_canonical_n,
        });
    }
    let mut levels: Vec<Vec<CatalogClass>> = Vec::new();
    for k in 1..=max_n {
        let mut seen: BTreeMap<Vec<u8>, Poset> = BTreeMap::new();
        if k == 1 {
            let p = Poset::singleton();
            seen.insert(canonical_form(&p, limits)?, p);
        } else {
            let prev = &levels[k - 2];
            for class in prev {
                for q in extensions(&class.poset) {
                    let key = canonical_form(&q, limits)?;
                    seen.entry(key).or_insert(q);
                }
            }
        }
        levels.push(
            seen.into_iter()
                .map(|(canonical, poset)| CatalogClass { poset, canonical })
                .collect(),
        );
    }
    Ok(levels)
}

/// All posets obtained from `p` by adding one new greatest-index element.
fn extensions(p: &Poset) -> Vec<Poset> {
    let m = p.n();
    debug_assert!(m < 64);
    let down_masks: Vec<u64> = (0..m).map(|x| p.down_set(x).words()[0]).collect();
    let up_masks: Vec<u64> = (0..m).map(|x| p.up_set(x).words()[0]).collect();
    let mut downsets = Vec::new();
    let mut upsets = Vec::new();
    for mask in 0u64..(1 << m) {
        let mut down_closed = true;
        let mut up_closed = true;
        let mut rest = mask;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if down_masks[x] & !mask != 0 {
                down_closed = false;
            }
            if up_masks[x] & !mask != 0 {
                up_closed = false;
            }
            if !down_closed && !up_closed {
                break;
            }
        }
        if down_closed {
            downsets.push(mask);
        }
        if up_closed {
            upsets.push(mask);
        }
    }
    let mut out = Vec::new();
    for &d in &downsets {
        for &u in &upsets {
            if d & u != 0 {
                continue;
            }
            // every element below the new one must sit below every
            // element above it, or transitivity through it fails
            let mut ok = true;
            let mut rest = d;
            while ok && rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if u & !up_masks[x] != 0 {
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let mut up = BitMatrix::new(m + 1, m + 1);
            for i in 0..m {
                for j in p.up_set(i).iter() {
                    up.set(i, j);
                }
                if d >> i & 1 == 1 {
                    up.set(i, m);
                }
                if u >> i & 1 == 1 {
                    up.set(m, i);
                }
            }
            up.set(m, m);
            out.push(Poset::from_up_unchecked(m + 1, up));
        }
    }
    out
}
