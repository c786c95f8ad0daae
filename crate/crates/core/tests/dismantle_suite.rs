//! Core computation against order-independence and the retract
//! transfer of the fixed point property.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use fixpoint_core::canonical::canonical_form;
use fixpoint_core::catalog::catalog;
use fixpoint_core::dismantle::{beat_points, core, find_retraction};
use fixpoint_core::fpp::has_fpp;
use fixpoint_core::mapspace::compose;
use fixpoint_core::poset::Poset;
use fixpoint_core::Limits;

fn lim() -> Limits {
    Limits::default()
}

fn classes_up_to(n: usize) -> Vec<Arc<Poset>> {
    catalog(n, &lim())
        .unwrap()
        .into_iter()
        .flatten()
        .map(|c| Arc::new(c.poset))
        .collect()
}

/// Collects the canonical forms of the cores reachable by every
/// possible removal order.
fn all_core_forms(p: &Poset, acc: &mut BTreeSet<Vec<u8>>) {
    let beats = beat_points(p);
    if beats.is_empty() {
        acc.insert(canonical_form(p, &lim()).unwrap());
        return;
    }
    let distinct: BTreeSet<usize> = beats.iter().map(|&(e, _)| e).collect();
    for e in distinct {
        let keep: Vec<usize> = (0..p.n()).filter(|&v| v != e).collect();
        all_core_forms(&p.induced(&keep), acc);
    }
}

#[test]
fn core_is_independent_of_removal_order_up_to_5() {
    for p in classes_up_to(5) {
        let mut forms = BTreeSet::new();
        all_core_forms(&p, &mut forms);
        assert_eq!(forms.len(), 1, "poset {:?}", p.covers());
        let report = core(&p);
        assert!(forms.contains(&canonical_form(&report.core, &lim()).unwrap()));
    }
}

#[test]
fn replaying_the_removal_sequence_reproduces_the_core() {
    for p in classes_up_to(5) {
        let report = core(&p);
        let mut alive: Vec<usize> = (0..p.n()).collect();
        for &(e, _) in &report.removal_sequence {
            assert!(alive.contains(&e));
            alive.retain(|&v| v != e);
        }
        assert_eq!(alive, report.core_elements);
        assert!(p.induced(&alive).same_order_as(&report.core));
        assert!(beat_points(&report.core).is_empty());
    }
}

#[test]
fn dismantlable_implies_fpp_up_to_5() {
    for p in classes_up_to(5) {
        if core(&p).dismantlable {
            assert!(has_fpp(&p, &lim()).unwrap().holds, "poset {:?}", p.covers());
        }
    }
}

/// Retracts of fixed point spaces are fixed point spaces, exhaustively
/// over catalog pairs.
#[test]
fn retracts_inherit_fpp_up_to_4() {
    let classes = classes_up_to(4);
    let mut found = 0;
    for y in &classes {
        let y_fpp = has_fpp(y, &lim()).unwrap().holds;
        for x in &classes {
            if x.n() > y.n() {
                continue;
            }
            let Some((s, r)) = find_retraction(y, x, &lim()).unwrap() else {
                continue;
            };
            found += 1;
            // the pair really is a section/retraction pair
            let rs = compose(&r, &s).unwrap();
            assert_eq!(rs.image(), &(0..x.n()).collect::<Vec<_>>()[..]);
            if y_fpp {
                assert!(
                    has_fpp(x, &lim()).unwrap().holds,
                    "retract {:?} of fpp space {:?}",
                    x.covers(),
                    y.covers()
                );
            }
        }
    }
    assert!(found >= 100, "retract pair coverage too thin: {found}");
}
