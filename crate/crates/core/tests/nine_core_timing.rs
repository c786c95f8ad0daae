//! End-to-end checks on the nine-element core poset, with generous
//! node-count ceilings acting as performance regression guards.

mod common;

use std::time::Instant;

use common::nine_core;
use fixpoint_core::dismantle;
use fixpoint_core::fpp::has_fpp;
use fixpoint_core::mapspace::enumerate_maps;
use fixpoint_core::selection::{find_selection_map, verify_selection, SelectionOutcome};
use fixpoint_core::Limits;

#[test]
fn nine_core_full_analysis() {
    let limits = Limits::default();
    let p = nine_core();

    let t0 = Instant::now();
    let ms = enumerate_maps(&p, &p, &limits).unwrap();
    assert_eq!(ms.count(), 12575);
    assert!(ms.has_order_matrix());
    eprintln!("enumerate + order matrix: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let fpp = has_fpp(&p, &limits).unwrap();
    assert!(fpp.holds);
    eprintln!("fpp search: {:?} ({} nodes)", t0.elapsed(), fpp.stats.nodes);
    assert!(fpp.stats.nodes < 200_000, "fpp search regressed");

    assert!(dismantle::beat_points(&p).is_empty());
    let report = dismantle::core(&p);
    assert!(!report.dismantlable);
    assert_eq!(report.core_elements.len(), 9);

    let t0 = Instant::now();
    let (outcome, stats) = find_selection_map(&p, &limits).unwrap();
    eprintln!("selection search: {:?} ({} nodes)", t0.elapsed(), stats.nodes);
    match outcome {
        SelectionOutcome::Sat(sel) => {
            assert!(verify_selection(&sel).is_ok());
        }
        _ => panic!("the nine-element core admits a selector"),
    }
    assert!(stats.nodes < 500_000, "selection search regressed");
}
