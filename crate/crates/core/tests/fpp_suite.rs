//! The fixed-point decision procedures against brute force, across the
//! whole small-poset catalog.

mod common;

use std::sync::Arc;

use common::{brute_force_self_maps, crown4, nine_core};
use fixpoint_core::catalog::catalog;
use fixpoint_core::fpp::{
    family_to_selfmap_on_mapspace, fixed_point_families, fpp_with_respect_to, has_fpp,
    FamilyOfSelfMaps, FixedPointFamily,
};
use fixpoint_core::mapspace::{enumerate_maps, evaluation_is_monotone, fixed_points};
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

#[test]
fn has_fpp_agrees_with_brute_force_up_to_5() {
    for p in classes_up_to(5) {
        let report = has_fpp(&p, &lim()).unwrap();
        let brute_has_free_map = brute_force_self_maps(&p)
            .iter()
            .any(|t| t.iter().enumerate().all(|(x, &y)| x != y));
        assert_eq!(report.holds, !brute_has_free_map, "poset {:?}", p.covers());
        if let Some(w) = report.witness {
            assert!(fixed_points(&w).unwrap().is_empty());
        }
    }
}

#[test]
fn fixed_point_spaces_are_connected_up_to_5() {
    for p in classes_up_to(5) {
        if has_fpp(&p, &lim()).unwrap().holds {
            assert!(p.is_connected());
        }
    }
}

#[test]
fn product_fpp_forces_factor_fpp() {
    let classes = classes_up_to(3);
    for x in &classes {
        for y in &classes {
            let prod = Arc::new(x.product(y, &lim()).unwrap());
            if has_fpp(&prod, &lim()).unwrap().holds {
                assert!(has_fpp(x, &lim()).unwrap().holds);
                assert!(has_fpp(y, &lim()).unwrap().holds);
            }
        }
    }
}

#[test]
fn top_iterates_descend_and_stabilise() {
    for p in classes_up_to(5) {
        let Some(top) = p.greatest() else { continue };
        let ms = enumerate_maps(&p, &p, &lim()).unwrap();
        for k in 0..ms.count() {
            let t = ms.table(k);
            let mut x = top;
            let mut steps = 0;
            loop {
                let next = t[x] as usize;
                assert!(p.leq(next, x), "iterates must descend");
                if next == x {
                    break;
                }
                x = next;
                steps += 1;
                assert!(steps <= p.n(), "iteration must stabilise within n steps");
            }
        }
    }
}

#[test]
fn evaluation_is_monotone_across_the_catalog() {
    for p in classes_up_to(5) {
        let ms = enumerate_maps(&p, &p, &lim()).unwrap();
        assert_eq!(evaluation_is_monotone(&ms), None, "poset {:?}", p.covers());
    }
    let nine = nine_core();
    let ms = enumerate_maps(&nine, &nine, &lim()).unwrap();
    assert_eq!(evaluation_is_monotone(&ms), None);
}

#[test]
fn crown_and_nine_core_decisions() {
    assert!(!has_fpp(&crown4(), &lim()).unwrap().holds);
    assert!(has_fpp(&nine_core(), &lim()).unwrap().holds);
    assert!(nine_core().is_connected());
}

/// Every family over (T, X) = (2-chain, 2-chain), cross-checked three
/// ways: direct enumeration of fixed-point families, the relative-FPP
/// decision, and the mapping-space reduction.
#[test]
fn mapping_space_reduction_cross_oracle() {
    let t = Arc::new(Poset::chain(2));
    let x = Arc::new(Poset::chain(2));
    let product = Arc::new(t.product(&x, &lim()).unwrap());
    let families = enumerate_maps(&product, &x, &lim()).unwrap();
    for k in 0..families.count() {
        let table: Vec<usize> = families.table(k).iter().map(|&v| v as usize).collect();
        let fam = FamilyOfSelfMaps::new(t.clone(), x.clone(), table).unwrap();
        let direct = fixed_point_families(&fam, &lim()).unwrap();
        let reduction = family_to_selfmap_on_mapspace(&fam, &lim()).unwrap();
        let via_reduction: Vec<Vec<usize>> = reduction
            .fixed_point_indices()
            .into_iter()
            .map(|i| {
                reduction
                    .mapspace
                    .table(i)
                    .iter()
                    .map(|&v| v as usize)
                    .collect()
            })
            .collect();
        assert_eq!(direct, via_reduction);
        for p in &direct {
            assert!(FixedPointFamily::holds_for(&fam, p));
        }
    }
    // The relative decision agrees with the direct check over all
    // families at once.
    let wrt = fpp_with_respect_to(&x, &t, &lim()).unwrap();
    assert!(wrt.holds);
    assert_eq!(wrt.families_checked as usize, families.count());
}

/// Any non-empty discrete parameter space behaves like the singleton:
/// the relative property reduces to the plain one.
#[test]
fn discrete_parameters_match_fpp() {
    for p in classes_up_to(3) {
        let plain = has_fpp(&p, &lim()).unwrap().holds;
        for k in [1, 2, 3] {
            let t = Arc::new(Poset::antichain(k));
            let wrt = fpp_with_respect_to(&p, &t, &lim()).unwrap();
            assert_eq!(wrt.holds, plain, "poset {:?}, |T| = {k}", p.covers());
        }
    }
}

/// Sampled check of the link between the universal property and the
/// parameter space C(X, X): wherever a selector exists, the first few
/// hundred lazily enumerated families over that parameter space must
/// all admit a family of fixed points.
#[test]
fn universal_fpp_versus_own_mapspace_sampled_at_3() {
    use fixpoint_core::fpp::has_universal_fpp;
    use fixpoint_core::mapspace::MapEnumerator;

    let limits = lim();
    for p in classes_up_to(3) {
        if p.n() < 3 {
            continue; // the n <= 2 cases are decided exhaustively elsewhere
        }
        let report = has_universal_fpp(&p, &limits).unwrap();
        if !report.holds {
            continue;
        }
        let ms = enumerate_maps(&p, &p, &limits).unwrap();
        let t = ms.order_poset(&limits).unwrap();
        let candidates = enumerate_maps(&t, &p, &limits).unwrap();
        let product = t.product(&p, &limits).unwrap();
        let mut families = MapEnumerator::new(&product, &p);
        let mut sampled = 0;
        while let Some(table) = families.next_table() {
            sampled += 1;
            if sampled > 500 {
                break;
            }
            let admits = (0..candidates.count()).any(|k| {
                let q = candidates.table(k);
                (0..t.n()).all(|a| table[a * p.n() + q[a] as usize] == q[a])
            });
            assert!(admits, "family without fixed points under a selector");
        }
        assert!(sampled > 0);
    }
}

/// Relative FPP transfers along retracts of the space itself: if X is
/// a retract of Y and Y has the property with respect to T, so does X.
#[test]
fn fpp_wrt_respects_space_retracts() {
    let limits = lim();
    let classes = classes_up_to(3);
    let t = Arc::new(Poset::chain(2));
    for y in &classes {
        let holds_y = fpp_with_respect_to(y, &t, &limits).unwrap().holds;
        if !holds_y {
            continue;
        }
        for x in &classes {
            if x.n() > y.n() {
                continue;
            }
            if fixpoint_core::dismantle::find_retraction(y, x, &limits)
                .unwrap()
                .is_some()
            {
                assert!(
                    fpp_with_respect_to(x, &t, &limits).unwrap().holds,
                    "retract {:?} of {:?} lost the relative property",
                    x.covers(),
                    y.covers()
                );
            }
        }
    }
}

/// Relative FPP is monotone under retracts of the parameter space.
#[test]
fn fpp_wrt_respects_parameter_retracts() {
    let classes = classes_up_to(3);
    let x = Arc::new(Poset::chain(2));
    for t in &classes {
        for s in &classes {
            let Some(_) = fixpoint_core::dismantle::find_retraction(t, s, &lim()).unwrap()
            else {
                continue;
            };
            let holds_t = fpp_with_respect_to(&x, t, &lim()).unwrap().holds;
            if holds_t {
                assert!(
                    fpp_with_respect_to(&x, s, &lim()).unwrap().holds,
                    "retract {:?} of {:?} lost the relative property",
                    s.covers(),
                    t.covers()
                );
            }
        }
    }
}

/// Cross-oracle for the reduction-form census: a self-map F of C(T, X)
/// has the family form iff F(p)(a) depends on p only through p(a); when
/// it does, the candidate family is read off from F on the constant
/// maps and re-checked everywhere.
#[test]
fn reduction_form_census_against_inversion_oracle() {
    let limits = lim();
    let t = Arc::new(Poset::chain(2));
    let x = Arc::new(Poset::chain(2));
    let census = fixpoint_core::fpp::reduction_form_census(&t, &x, &limits).unwrap();

    let mapspace = enumerate_maps(&t, &x, &limits).unwrap();
    let order = mapspace.order_poset(&limits).unwrap();
    let selfmaps = enumerate_maps(&order, &order, &limits).unwrap();
    let const_idx: Vec<usize> = (0..x.n())
        .map(|x0| mapspace.index_of_usize(&vec![x0; t.n()]).unwrap())
        .collect();
    let mut of_form = 0usize;
    for fidx in 0..selfmaps.count() {
        let big = selfmaps.table(fidx);
        // candidate family read off the constant maps
        let value = |a: usize, x0: usize| {
            mapspace.table(big[const_idx[x0]] as usize)[a] as usize
        };
        let mut ok = true;
        'check: for k in 0..mapspace.count() {
            let p = mapspace.table(k);
            let image = mapspace.table(big[k] as usize);
            for a in 0..t.n() {
                if image[a] as usize != value(a, p[a] as usize) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            // the candidate must also be monotone on the product
            let table: Vec<usize> = (0..t.n())
                .flat_map(|a| (0..x.n()).map(move |x0| (a, x0)))
                .map(|(a, x0)| value(a, x0))
                .collect();
            ok = FamilyOfSelfMaps::new(t.clone(), x.clone(), table).is_ok();
        }
        if ok {
            of_form += 1;
        }
    }
    assert_eq!(census.self_maps, selfmaps.count());
    assert_eq!(census.reductions, of_form);
    assert!(census.reductions <= census.families);
    assert!(census.reductions <= census.self_maps);
}

/// The two-point discrete space has minimal and maximal elements but no
/// selector, so "some minimal or maximal element suffices" is refuted;
/// only a least or greatest element carries the iteration certificate.
#[test]
fn minimal_elements_do_not_suffice_for_selection() {
    let p = Arc::new(Poset::antichain(2));
    let minimal: Vec<usize> = (0..p.n())
        .filter(|&v| p.strict_down_set(v).is_empty())
        .collect();
    let maximal: Vec<usize> = (0..p.n())
        .filter(|&v| p.strict_up_set(v).is_empty())
        .collect();
    assert_eq!(minimal.len(), 2);
    assert_eq!(maximal.len(), 2);
    assert!(p.greatest().is_none() && p.least().is_none());
    let (outcome, _) =
        fixpoint_core::selection::find_selection_map(&p, &lim()).unwrap();
    assert!(!outcome.is_sat());
}

#[test]
fn relative_fpp_witness_has_no_family() {
    // The discrete two-point space against a singleton parameter: the
    // witness family must genuinely admit no family of fixed points.
    let x = Arc::new(Poset::antichain(2));
    let t = Arc::new(Poset::singleton());
    let report = fpp_with_respect_to(&x, &t, &lim()).unwrap();
    assert!(!report.holds);
    let witness = report.witness.unwrap();
    assert!(fixed_point_families(&witness, &lim()).unwrap().is_empty());
}
