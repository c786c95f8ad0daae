//! Random-poset properties: the constructions preserve the order
//! axioms, the space correspondence round-trips, and enumeration
//! agrees with brute force between arbitrary small posets.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixpoint_core::mapspace::enumerate_maps;
use fixpoint_core::poset::Poset;
use fixpoint_core::space::{specialization_poset, to_space};
use fixpoint_core::Limits;
use proptest::prelude::*;

fn is_valid_poset(p: &Poset) -> bool {
    Poset::from_relation(p.n(), |i, j| p.leq(i, j)).is_ok()
}

/// Random posets on up to 6 elements: random edges i -> j with i < j
/// are always acyclic, and relabeling hides the bias.
fn poset_strategy() -> impl Strategy<Value = Poset> {
    (1usize..=6).prop_flat_map(|n| {
        let edges = proptest::collection::vec((0..n, 0..n), 0..=n * 2);
        edges.prop_map(move |raw| {
            let covers: Vec<(usize, usize)> = raw
                .into_iter()
                .filter(|&(a, b)| a < b)
                .collect();
            Poset::from_covers(n, &covers).expect("upward edges cannot cycle")
        })
    })
}

proptest! {
    #[test]
    fn product_and_dual_preserve_the_axioms(p in poset_strategy(), q in poset_strategy()) {
        let limits = Limits::default();
        prop_assert!(is_valid_poset(&p.dual()));
        prop_assert!(p.dual().dual().same_order_as(&p));
        let prod = p.product(&q, &limits).unwrap();
        prop_assert!(is_valid_poset(&prod));
        prop_assert_eq!(prod.n(), p.n() * q.n());
    }

    #[test]
    fn space_round_trip(p in poset_strategy()) {
        let limits = Limits::default();
        let s = to_space(&p, &limits).unwrap();
        let back = specialization_poset(&s).unwrap();
        prop_assert!(back.same_order_as(&p));
    }

    #[test]
    fn covers_regenerate_the_order(p in poset_strategy()) {
        let again = Poset::from_covers(p.n(), &p.covers()).unwrap();
        prop_assert!(again.same_order_as(&p));
    }

    /// Enumeration between two random posets matches the set of tables
    /// surviving the raw brute-force monotonicity filter.
    #[test]
    fn enumeration_matches_brute_force(dom in small_poset(), cod in small_poset()) {
        let limits = Limits::default();
        let (dom, cod) = (Arc::new(dom), Arc::new(cod));
        let ms = enumerate_maps(&dom, &cod, &limits).unwrap();
        let enumerated: BTreeSet<Vec<u16>> =
            (0..ms.count()).map(|k| ms.table(k).to_vec()).collect();
        prop_assert_eq!(enumerated.len(), ms.count(), "no duplicates");

        let n = dom.n();
        let m = cod.n();
        let mut brute = BTreeSet::new();
        let total = (m as u64).pow(n as u32);
        for code in 0..total {
            let mut t = vec![0u16; n];
            let mut c = code;
            for slot in t.iter_mut() {
                *slot = (c % m as u64) as u16;
                c /= m as u64;
            }
            let monotone = (0..n).all(|i| {
                (0..n).all(|j| {
                    !dom.leq(i, j) || cod.leq(t[i] as usize, t[j] as usize)
                })
            });
            if monotone {
                brute.insert(t);
            }
        }
        prop_assert_eq!(enumerated, brute);
    }
}

/// Like `poset_strategy` but capped at 4 elements so the brute-force
/// side stays at 4^4 tables.
fn small_poset() -> impl Strategy<Value = Poset> {
    (1usize..=4).prop_flat_map(|n| {
        let edges = proptest::collection::vec((0..n, 0..n), 0..=n * 2);
        edges.prop_map(move |raw| {
            let covers: Vec<(usize, usize)> =
                raw.into_iter().filter(|&(a, b)| a < b).collect();
            Poset::from_covers(n, &covers).expect("upward edges cannot cycle")
        })
    })
}
