//! Monotone fixed-point selectors on the space of self-maps, and the
//! constructions that transport them across products and retracts.
//!
//! A selection map assigns to every monotone self-map `f` one of its
//! fixed points, monotonically in `f` under the pointwise order. Its
//! existence is decided by a constraint search: one variable per map,
//! domains are the fixed-point sets, and comparable maps must receive
//! comparable choices.

use alloc::sync::Arc;
use alloc::{vec, vec::Vec};
use core::fmt;

use crate::error::{Error, Result};
use crate::fpp::{FamilyOfSelfMaps, FixedPointFamily, SearchStats};
use crate::mapspace::{enumerate_maps, MapPoset};
use crate::poset::{MonotoneMap, Poset};
use crate::Limits;

/// A verified-by-construction fixed-point selector over `C(X, X)`.
#[derive(Clone)]
pub struct SelectionMap {
    mapspace: Arc<MapPoset>,
    /// Chosen fixed point per map index.
    choice: Vec<usize>,
}

impl fmt::Debug for SelectionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SelectionMap")
            .field("maps", &self.mapspace.count())
            .field("choice", &self.choice)
            .finish()
    }
}

impl SelectionMap {
    pub fn mapspace(&self) -> &Arc<MapPoset> {
        &self.mapspace
    }

    pub fn space(&self) -> &Arc<Poset> {
        self.mapspace.dom()
    }

    pub fn choice(&self) -> &[usize] {
        &self.choice
    }

    /// The selected fixed point of the map with the given table.
    pub fn select(&self, table: &[usize]) -> Option<usize> {
        self.mapspace.index_of_usize(table).map(|k| self.choice[k])
    }

    /// Builds a selection map from raw parts, without verification.
    /// Intended for tests that tamper with certificates.
    pub fn from_parts(mapspace: Arc<MapPoset>, choice: Vec<usize>) -> SelectionMap {
        SelectionMap { mapspace, choice }
    }
}

/// First violation found when checking a claimed selection map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SelectionViolation {
    /// `choice[map]` is not a fixed point of the map.
    NotFixed { map: usize },
    /// Maps `lo <= hi` whose choices are not comparable the same way.
    NotMonotone { lo: usize, hi: usize },
}

impl fmt::Display for SelectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionViolation::NotFixed { map } => {
                write!(f, "choice for map {map} is not one of its fixed points")
            }
            SelectionViolation::NotMonotone { lo, hi } => {
                write!(f, "choices for comparable maps {lo} <= {hi} are not comparable")
            }
        }
    }
}

/// Exhaustively checks both selection-map invariants; returns the first
/// violation.
pub fn verify_selection(sel: &SelectionMap) -> core::result::Result<(), SelectionViolation> {
    let ms = sel.mapspace();
    let x = sel.space();
    for k in 0..ms.count() {
        let c = sel.choice[k];
        if c >= x.n() || ms.table(k)[c] as usize != c {
            return Err(SelectionViolation::NotFixed { map: k });
        }
    }
    for a in 0..ms.count() {
        for b in ms.above(a) {
            if !x.leq(sel.choice[a], sel.choice[b]) {
                return Err(SelectionViolation::NotMonotone { lo: a, hi: b });
            }
        }
    }
    Ok(())
}

/// Why the constraint search concluded unsatisfiability.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UnsatCertificate {
    /// Some map has no fixed point at all, so no selector can exist
    /// (the space is not even a fixed point space).
    EmptyFixedPointSet { map: usize },
    /// The search was exhausted; the certificate records the deepest
    /// failing prefix and, per candidate value tried there, the
    /// variable whose domain was wiped.
    Exhausted {
        depth: usize,
        assignment: Vec<(usize, usize)>,
        wiped: Vec<(usize, usize)>,
    },
}

struct DeepestFailure {
    depth: usize,
    assignment: Vec<(usize, usize)>,
    wiped: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub enum SelectionOutcome {
    Sat(SelectionMap),
    Unsat {
        mapspace: Arc<MapPoset>,
        certificate: UnsatCertificate,
    },
}

impl SelectionOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SelectionOutcome::Sat(_))
    }
}

/// Searches for a selection map over `C(p, p)`.
///
/// Variables are processed in a linear extension of the pointwise map
/// order, picking among the available ones the smallest fixed-point set
/// first; assigning a map prunes the domains of every unassigned
/// comparable map through the interval constraint. Candidate values are
/// tried from low elements upwards, so the first dive reaches for the
/// pointwise-smallest selector. The first solution in this order is
/// returned, deterministically, after a full verification pass.
pub fn find_selection_map(
    p: &Arc<Poset>,
    limits: &Limits,
) -> Result<(SelectionOutcome, SearchStats)> {
    if p.n() > limits.max_search_n {
        return Err(Error::SizeLimit {
            what: "selection search",
            requested: p.n(),
            limit: limits.max_search_n,
        });
    }
    let ms = Arc::new(enumerate_maps(p, p, limits)?);
    if !ms.has_order_matrix() {
        return Err(Error::SizeLimit {
            what: "selection order matrix",
            requested: ms.count(),
            limit: limits.max_order_matrix,
        });
    }
    let m = ms.count();
    let mut stats = SearchStats::default();

    let mut fix: Vec<u64> = Vec::with_capacity(m);
    for k in 0..m {
        let mask = ms.fixed_point_mask(k);
        if mask == 0 {
            return Ok((
                SelectionOutcome::Unsat {
                    mapspace: ms,
                    certificate: UnsatCertificate::EmptyFixedPointSet { map: k },
                },
                stats,
            ));
        }
        fix.push(mask);
    }

    // Linear extension of the map order, fail-first among available.
    let order = {
        let mut pending: Vec<usize> = (0..m).collect();
        let mut indeg = vec![0usize; m];
        for a in 0..m {
            for b in ms.above(a) {
                if b != a {
                    indeg[b] += 1;
                }
            }
        }
        let mut out = Vec::with_capacity(m);
        let mut done = vec![false; m];
        while out.len() < m {
            let mut best: Option<usize> = None;
            pending.retain(|&k| !done[k]);
            for &k in &pending {
                if indeg[k] != 0 {
                    continue;
                }
                best = match best {
                    None => Some(k),
                    Some(cur) => {
                        let kk = (fix[k].count_ones(), k);
                        let cc = (fix[cur].count_ones(), cur);
                        Some(if kk < cc { k } else { cur })
                    }
                };
            }
            let k = best.expect("map order is acyclic");
            done[k] = true;
            out.push(k);
            for b in ms.above(k) {
                if b != k {
                    indeg[b] -= 1;
                }
            }
        }
        out
    };

    // Candidate values low-first: a smaller choice constrains the maps
    // above as weakly as possible.
    let value_order = {
        let heights = p.heights();
        let mut v: Vec<usize> = (0..p.n()).collect();
        v.sort_by_key(|&x| (heights[x], x));
        v
    };
    let up: Vec<u64> = (0..p.n()).map(|x| p.up_mask64(x)).collect();

    // Interval propagation: the variable order is a linear extension of
    // the map order, so every unassigned comparable map lies above the
    // one being assigned and only the lower-bound half of the interval
    // constraint ever bites.
    let mut domains = fix.clone();
    let mut assigned: Vec<bool> = vec![false; m];
    let mut choice = vec![0usize; m];
    let mut cursor = vec![0usize; m];
    let mut trail: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m];
    let mut wiped_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    let mut level = 0usize;
    let mut deepest: Option<DeepestFailure> = None;

    loop {
        if level == m {
            let sel = SelectionMap {
                mapspace: ms.clone(),
                choice,
            };
            if let Err(v) = verify_selection(&sel) {
                return Err(Error::VerificationFailure(v));
            }
            return Ok((SelectionOutcome::Sat(sel), stats));
        }
        let var = order[level];
        let mut advanced = false;
        if cursor[level] == 0 {
            wiped_at[level].clear();
        }
        while cursor[level] < value_order.len() {
            let c = value_order[cursor[level]];
            cursor[level] += 1;
            if domains[var] >> c & 1 == 0 {
                continue;
            }
            stats.nodes += 1;
            choice[var] = c;
            assigned[var] = true;
            let mut wiped: Option<usize> = None;
            for other in ms.above(var) {
                if other == var || assigned[other] {
                    continue;
                }
                let new = domains[other] & up[c];
                if new != domains[other] {
                    trail[level].push((other, domains[other]));
                    domains[other] = new;
                    if new == 0 {
                        wiped = Some(other);
                        break;
                    }
                }
            }
            match wiped {
                None => {
                    advanced = true;
                    break;
                }
                Some(w) => {
                    wiped_at[level].push((c, w));
                    for (o, old) in trail[level].drain(..) {
                        domains[o] = old;
                    }
                    assigned[var] = false;
                }
            }
        }
        if advanced {
            level += 1;
            if level < m {
                cursor[level] = 0;
            }
        } else {
            let record = match &deepest {
                Some(d) => level > d.depth,
                None => true,
            };
            if record {
                let assignment: Vec<(usize, usize)> = order[..level]
                    .iter()
                    .map(|&v| (v, choice[v]))
                    .collect();
                let mut wiped = wiped_at[level].clone();
                if domains[var] == 0 {
                    wiped.push((usize::MAX, var));
                }
                deepest = Some(DeepestFailure {
                    depth: level,
                    assignment,
                    wiped,
                });
            }
            assigned[var] = false;
            if level == 0 {
                let d = deepest.unwrap();
                return Ok((
                    SelectionOutcome::Unsat {
                        mapspace: ms,
                        certificate: UnsatCertificate::Exhausted {
                            depth: d.depth,
                            assignment: d.assignment,
                            wiped: d.wiped,
                        },
                    },
                    stats,
                ));
            }
            level -= 1;
            let prev = order[level];
            for (o, old) in trail[level].drain(..) {
                domains[o] = old;
            }
            assigned[prev] = false;
        }
    }
}

/// Iterates a self-map from the greatest (or least) element to a fixed
/// point; the resulting assignment is a valid selection map whenever the
/// poset has a greatest or least element.
pub fn extremal_selection(p: &Arc<Poset>, limits: &Limits) -> Result<Option<SelectionMap>> {
    let (start, from_top) = match (p.greatest(), p.least()) {
        (Some(t), _) => (t, true),
        (None, Some(b)) => (b, false),
        (None, None) => return Ok(None),
    };
    let ms = Arc::new(enumerate_maps(p, p, limits)?);
    let n = p.n();
    let mut choice = Vec::with_capacity(ms.count());
    for k in 0..ms.count() {
        let t = ms.table(k);
        let mut x = start;
        for _ in 0..n {
            let next = t[x] as usize;
            if next == x {
                break;
            }
            // Iterates move one way only: down from the top, up from
            // the bottom.
            debug_assert!(if from_top { p.leq(next, x) } else { p.leq(x, next) });
            x = next;
        }
        choice.push(x);
    }
    let sel = SelectionMap {
        mapspace: ms,
        choice,
    };
    if let Err(v) = verify_selection(&sel) {
        return Err(Error::VerificationFailure(v));
    }
    Ok(Some(sel))
}

/// Composes a selector with the slices of a family: `p(t) = Φ(f_t)` is
/// a monotone family of fixed points.
pub fn criterion_family_selection(
    sel: &SelectionMap,
    family: &FamilyOfSelfMaps,
) -> Result<FixedPointFamily> {
    if !family.space().same_order_as(sel.space()) {
        return Err(Error::DomainMismatch);
    }
    let t = family.parameter_space();
    let mut table = Vec::with_capacity(t.n());
    for a in 0..t.n() {
        let slice = family.slice(a);
        let idx = sel
            .mapspace()
            .index_of_usize(&slice)
            .expect("every slice of a monotone family is monotone, hence enumerated");
        table.push(sel.choice()[idx]);
    }
    assert!(
        FixedPointFamily::holds_for(family, &table),
        "selector composed with slices must be a family of fixed points"
    );
    Ok(FixedPointFamily { table })
}

fn check_product_shape(x: &Poset, y: &Poset, f: &MonotoneMap) -> Result<()> {
    if !f.is_endo() || f.dom().n() != x.n() * y.n() {
        return Err(Error::DomainMismatch);
    }
    let d = f.dom();
    for p in 0..x.n() {
        for q in 0..y.n() {
            for p2 in 0..x.n() {
                for q2 in 0..y.n() {
                    let want = x.leq(p, p2) && y.leq(q, q2);
                    if d.leq(p * y.n() + q, p2 * y.n() + q2) != want {
                        return Err(Error::DomainMismatch);
                    }
                }
            }
        }
    }
    Ok(())
}

/// The slice `x -> pr_X f(x, y0)` of a self-map of a product.
fn slice_x(f: &MonotoneMap, yn: usize, xn: usize, y0: usize) -> Vec<usize> {
    (0..xn).map(|x0| f.apply(x0 * yn + y0) / yn).collect()
}

/// Extracts a fixed point of a self-map `f` of `X × Y` from a selector
/// on X and a fixed-point oracle for Y, by running the oracle on the
/// one-variable collapse `y -> pr_Y f(Φ(f_{X,y}), y)`.
pub fn product_fixed_point(
    sel_x: &SelectionMap,
    y: &Arc<Poset>,
    f: &MonotoneMap,
    oracle: &mut dyn FnMut(&MonotoneMap) -> Option<usize>,
) -> Result<(usize, usize)> {
    let x = sel_x.space();
    check_product_shape(x, y, f)?;
    let (xn, yn) = (x.n(), y.n());
    let mut collapsed = Vec::with_capacity(yn);
    for y0 in 0..yn {
        let xstar = sel_x
            .select(&slice_x(f, yn, xn, y0))
            .expect("slices of a monotone product map are monotone");
        collapsed.push(f.apply(xstar * yn + y0) % yn);
    }
    let collapsed = MonotoneMap::new(y.clone(), y.clone(), collapsed)
        .expect("collapse of a monotone product map is monotone");
    let y_fix = oracle(&collapsed).ok_or(Error::OracleFailure)?;
    if y_fix >= yn || collapsed.apply(y_fix) != y_fix {
        return Err(Error::OracleFailure);
    }
    let x_fix = sel_x
        .select(&slice_x(f, yn, xn, y_fix))
        .expect("slices of a monotone product map are monotone");
    let pair = x_fix * yn + y_fix;
    assert_eq!(f.apply(pair), pair, "constructed pair must be fixed");
    Ok((x_fix, y_fix))
}

/// Combines selectors on X and Y into a verified selector on X × Y.
pub fn product_selection(
    sel_x: &SelectionMap,
    sel_y: &SelectionMap,
    limits: &Limits,
) -> Result<SelectionMap> {
    let x = sel_x.space();
    let y = sel_y.space();
    let (xn, yn) = (x.n(), y.n());
    let prod = Arc::new(x.product(y, limits)?);
    let ms = Arc::new(enumerate_maps(&prod, &prod, limits)?);
    let mut choice = Vec::with_capacity(ms.count());
    for k in 0..ms.count() {
        let f = ms.map(k);
        let mut collapsed = Vec::with_capacity(yn);
        for y0 in 0..yn {
            let xstar = sel_x
                .select(&slice_x(&f, yn, xn, y0))
                .expect("slices of a monotone product map are monotone");
            collapsed.push(f.apply(xstar * yn + y0) % yn);
        }
        let y_fix = sel_y
            .select(&collapsed)
            .expect("collapse of a monotone product map is monotone");
        let x_fix = sel_x
            .select(&slice_x(&f, yn, xn, y_fix))
            .expect("slices of a monotone product map are monotone");
        choice.push(x_fix * yn + y_fix);
    }
    let sel = SelectionMap {
        mapspace: ms,
        choice,
    };
    if let Err(v) = verify_selection(&sel) {
        return Err(Error::VerificationFailure(v));
    }
    Ok(sel)
}

/// Pulls a selector back along a retract: given `s : X -> Y`,
/// `r : Y -> X` with `r ∘ s = id` and a selector on Y, the assignment
/// `f -> r(Φ_Y(s ∘ f ∘ r))` is a verified selector on X.
pub fn transfer_selection_along_retract(
    sel_y: &SelectionMap,
    s: &MonotoneMap,
    r: &MonotoneMap,
    limits: &Limits,
) -> Result<SelectionMap> {
    let x = s.dom().clone();
    let y = sel_y.space().clone();
    if !s.cod().same_order_as(&y) || !r.dom().same_order_as(&y) || !r.cod().same_order_as(&x) {
        return Err(Error::DomainMismatch);
    }
    let retract_ok = (0..x.n()).all(|v| r.apply(s.apply(v)) == v);
    if !retract_ok {
        return Err(Error::NotARetract);
    }
    let ms = Arc::new(enumerate_maps(&x, &x, limits)?);
    let mut choice = Vec::with_capacity(ms.count());
    for k in 0..ms.count() {
        let f = ms.table(k);
        let conjugated: Vec<usize> = (0..y.n())
            .map(|y0| s.apply(f[r.apply(y0)] as usize))
            .collect();
        let picked = sel_y
            .select(&conjugated)
            .expect("conjugate of a monotone map along monotone maps is monotone");
        choice.push(r.apply(picked));
    }
    let sel = SelectionMap {
        mapspace: ms,
        choice,
    };
    if let Err(v) = verify_selection(&sel) {
        return Err(Error::VerificationFailure(v));
    }
    Ok(sel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpp::has_fpp;

    fn lim() -> Limits {
        Limits::default()
    }

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn two_chain_selector() {
        let p = arc(Poset::chain(2));
        let (outcome, _) = find_selection_map(&p, &lim()).unwrap();
        match outcome {
            SelectionOutcome::Sat(sel) => {
                // Maps in index order: const 0, identity, const 1.
                assert_eq!(sel.choice(), &[0, 0, 1]);
                assert!(verify_selection(&sel).is_ok());
            }
            _ => panic!("2-chain must admit a selector"),
        }
    }

    #[test]
    fn two_antichain_empty_domain() {
        let p = arc(Poset::antichain(2));
        let (outcome, _) = find_selection_map(&p, &lim()).unwrap();
        match outcome {
            SelectionOutcome::Unsat { certificate, .. } => {
                // The first fixed-point-free map in index order is
                // [1, 0], at index 2.
                assert_eq!(
                    certificate,
                    UnsatCertificate::EmptyFixedPointSet { map: 2 }
                );
            }
            _ => panic!("discrete two-point space has no selector"),
        }
    }

    #[test]
    fn empty_poset_has_no_selector() {
        let p = arc(Poset::antichain(0));
        let (outcome, _) = find_selection_map(&p, &lim()).unwrap();
        assert!(!outcome.is_sat());
    }

    #[test]
    fn tampered_certificates() {
        let p = arc(Poset::chain(2));
        let (outcome, _) = find_selection_map(&p, &lim()).unwrap();
        let sel = match outcome {
            SelectionOutcome::Sat(sel) => sel,
            _ => unreachable!(),
        };
        // Raising the identity's choice to 1 keeps both invariants.
        let mut tampered = sel.choice().to_vec();
        tampered[1] = 1;
        let still_ok = SelectionMap::from_parts(sel.mapspace().clone(), tampered);
        assert!(verify_selection(&still_ok).is_ok());
        // Sending const 1 to 0 breaks the fixed-point condition.
        let mut broken = sel.choice().to_vec();
        broken[2] = 0;
        let broken = SelectionMap::from_parts(sel.mapspace().clone(), broken);
        assert_eq!(
            verify_selection(&broken),
            Err(SelectionViolation::NotFixed { map: 2 })
        );
    }

    #[test]
    fn extremal_selection_on_chains() {
        for n in 1..5 {
            let p = arc(Poset::chain(n));
            let sel = extremal_selection(&p, &lim()).unwrap().unwrap();
            assert!(verify_selection(&sel).is_ok());
        }
    }

    #[test]
    fn extremal_selection_needs_an_extremum() {
        let crown = arc(Poset::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap());
        assert!(extremal_selection(&crown, &lim()).unwrap().is_none());
    }

    #[test]
    fn criterion_constant_family_forced() {
        // f(t, x) = q(t): the only family of fixed points is q itself.
        let p = arc(Poset::chain(2));
        let (outcome, _) = find_selection_map(&p, &lim()).unwrap();
        let sel = match outcome {
            SelectionOutcome::Sat(sel) => sel,
            _ => unreachable!(),
        };
        let t = arc(Poset::chain(3));
        let q = [0usize, 0, 1];
        let mut table = Vec::new();
        for t0 in 0..3 {
            for _ in 0..2 {
                table.push(q[t0]);
            }
        }
        let fam = FamilyOfSelfMaps::new(t, p.clone(), table).unwrap();
        let out = criterion_family_selection(&sel, &fam).unwrap();
        assert_eq!(out.table, q.to_vec());

        // f(t, x) = x: the choice is the selector's fixed point of the
        // identity, constantly.
        let t = arc(Poset::chain(3));
        let mut table = Vec::new();
        for _ in 0..3 {
            for x0 in 0..2 {
                table.push(x0);
            }
        }
        let fam = FamilyOfSelfMaps::new(t, p.clone(), table).unwrap();
        let out = criterion_family_selection(&sel, &fam).unwrap();
        let id_choice = sel.select(&[0, 1]).unwrap();
        assert!(out.table.iter().all(|&v| v == id_choice));
    }

    #[test]
    fn product_fixed_point_examples() {
        let x = arc(Poset::chain(2));
        let y = arc(Poset::chain(2));
        let (outcome, _) = find_selection_map(&x, &lim()).unwrap();
        let sel = match outcome {
            SelectionOutcome::Sat(sel) => sel,
            _ => unreachable!(),
        };
        let prod = arc(x.product(&y, &lim()).unwrap());
        let mut oracle = |f: &MonotoneMap| (0..f.dom().n()).find(|&v| f.apply(v) == v);

        let id = MonotoneMap::identity(prod.clone());
        let (a, b) = product_fixed_point(&sel, &y, &id, &mut oracle).unwrap();
        assert_eq!(id.apply(a * 2 + b), a * 2 + b);

        let k = MonotoneMap::constant(prod.clone(), prod.clone(), 2).unwrap();
        assert_eq!(product_fixed_point(&sel, &y, &k, &mut oracle).unwrap(), (1, 0));
    }

    #[test]
    fn product_selection_of_chains() {
        let x = arc(Poset::chain(2));
        let (outcome, _) = find_selection_map(&x, &lim()).unwrap();
        let sel = match outcome {
            SelectionOutcome::Sat(sel) => sel,
            _ => unreachable!(),
        };
        let prod_sel = product_selection(&sel, &sel, &lim()).unwrap();
        assert!(verify_selection(&prod_sel).is_ok());
        assert_eq!(prod_sel.mapspace().count(), 36);
    }

    #[test]
    fn transfer_along_identity_and_collapse() {
        let y = arc(Poset::chain(3));
        let sel_y = extremal_selection(&y, &lim()).unwrap().unwrap();
        // Identity retract: transfers to itself.
        let idy = MonotoneMap::identity(y.clone());
        let back = transfer_selection_along_retract(&sel_y, &idy, &idy, &lim()).unwrap();
        assert_eq!(back.choice(), sel_y.choice());
        // 2-chain sitting inside the 3-chain as {bottom, top}, middle
        // collapsed down.
        let x = arc(Poset::chain(2));
        let s = MonotoneMap::new(x.clone(), y.clone(), vec![0, 2]).unwrap();
        let r = MonotoneMap::new(y.clone(), x.clone(), vec![0, 0, 1]).unwrap();
        let sel_x = transfer_selection_along_retract(&sel_y, &s, &r, &lim()).unwrap();
        assert!(verify_selection(&sel_x).is_ok());
        // Singleton in any selected space.
        let pt = arc(Poset::singleton());
        let s = MonotoneMap::new(pt.clone(), y.clone(), vec![1]).unwrap();
        let r = MonotoneMap::constant(y.clone(), pt.clone(), 0).unwrap();
        let sel_pt = transfer_selection_along_retract(&sel_y, &s, &r, &lim()).unwrap();
        assert_eq!(sel_pt.choice(), &[0]);
        // A non-retract pair is rejected.
        let bad_r = MonotoneMap::constant(y.clone(), x.clone(), 0).unwrap();
        let s2 = MonotoneMap::new(x.clone(), y.clone(), vec![0, 2]).unwrap();
        assert!(matches!(
            transfer_selection_along_retract(&sel_y, &s2, &bad_r, &lim()),
            Err(Error::NotARetract)
        ));
    }

    #[test]
    fn sat_implies_fpp_on_micro_examples() {
        for p in [Poset::chain(2), Poset::chain(3)] {
            let p = arc(p);
            let (outcome, _) = find_selection_map(&p, &lim()).unwrap();
            assert!(outcome.is_sat());
            assert!(has_fpp(&p, &lim()).unwrap().holds);
        }
    }
}
