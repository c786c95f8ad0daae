//! Fixed point property decisions: plain, relative to a parameter
//! poset, and universal.

use alloc::sync::Arc;
use alloc::{vec, vec::Vec};

use crate::error::{Error, Result};
use crate::mapspace::{enumerate_maps, MapEnumerator, MapPoset};
use crate::poset::{MonotoneMap, Poset};
use crate::selection::{find_selection_map, SelectionMap, SelectionOutcome, UnsatCertificate};
use crate::Limits;

/// Search effort counter carried by every decision procedure.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Outcome of the fixed point property decision.
#[derive(Clone, Debug)]
pub struct FppReport {
    pub holds: bool,
    /// A fixed-point-free monotone self-map, when `holds` is false.
    pub witness: Option<MonotoneMap>,
    pub stats: SearchStats,
}

/// Decides whether every monotone self-map of `p` has a fixed point.
///
/// Searches for a fixed-point-free self-map by backtracking along a
/// linear extension ordered by decreasing comparability degree, with
/// forward checking: assigned values shrink the candidate sets of
/// elements above, and an emptied set prunes the branch. Disconnected
/// posets short-circuit through an explicit two-component witness.
pub fn has_fpp(p: &Arc<Poset>, limits: &Limits) -> Result<FppReport> {
    let n = p.n();
    if n > limits.max_search_n {
        return Err(Error::SizeLimit {
            what: "fixed-point search",
            requested: n,
            limit: limits.max_search_n,
        });
    }
    if n == 0 {
        // The unique self-map of the empty space has no fixed point.
        let witness = MonotoneMap::new(p.clone(), p.clone(), vec![])?;
        return Ok(FppReport {
            holds: false,
            witness: Some(witness),
            stats: SearchStats::default(),
        });
    }
    let comp = p.components();
    if comp.iter().any(|&c| c > 0) {
        // Collapse each side of a split onto a point of the other side.
        let a = 0;
        let b = (0..n).find(|&v| comp[v] != comp[a]).unwrap();
        let image: Vec<usize> = (0..n)
            .map(|v| if comp[v] == comp[a] { b } else { a })
            .collect();
        if let Ok(witness) = MonotoneMap::new(p.clone(), p.clone(), image) {
            return Ok(FppReport {
                holds: false,
                witness: Some(witness),
                stats: SearchStats::default(),
            });
        }
        // Unreachable in practice; fall through to the search.
    }

    // Linear extension, preferring high comparability degree.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    {
        let mut placed = vec![false; n];
        let mut pending: Vec<usize> = (0..n)
            .map(|v| p.strict_down_set(v).count())
            .collect();
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v] && pending[v] == 0)
                .max_by_key(|&v| (p.comparability_degree(v), core::cmp::Reverse(v)))
                .unwrap();
            placed[v] = true;
            order.push(v);
            for w in p.strict_up_set(v).iter() {
                pending[w] -= 1;
            }
        }
    }

    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let up: Vec<u64> = (0..n).map(|x| p.up_mask64(x)).collect();
    let strict_up: Vec<u64> = (0..n).map(|x| up[x] & !(1 << x)).collect();

    let mut domains: Vec<u64> = (0..n).map(|v| full & !(1u64 << v)).collect();
    let mut image = vec![0usize; n];
    let mut trail: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    let mut cursor = vec![0u32; n];
    let mut assigned = vec![false; n];
    let mut nodes = 0u64;
    let mut level = 0usize;

    loop {
        if level == n {
            let witness =
                MonotoneMap::new_unchecked(p.clone(), p.clone(), image.clone());
            return Ok(FppReport {
                holds: false,
                witness: Some(witness),
                stats: SearchStats { nodes },
            });
        }
        let v = order[level];
        let mut advanced = false;
        let mut c = cursor[level] as usize;
        while c < n {
            if domains[v] >> c & 1 == 1 {
                nodes += 1;
                cursor[level] = (c + 1) as u32;
                image[v] = c;
                assigned[v] = true;
                // Forward check everything above v.
                let mut ok = true;
                let mut rest = strict_up[v];
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if assigned[w] {
                        continue;
                    }
                    let new = domains[w] & up[c];
                    if new != domains[w] {
                        trail[level].push((w, domains[w]));
                        domains[w] = new;
                        if new == 0 {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    advanced = true;
                    break;
                }
                // Undo this value's pruning and try the next one.
                for (w, old) in trail[level].drain(..) {
                    domains[w] = old;
                }
                assigned[v] = false;
            }
            c += 1;
        }
        if advanced {
            level += 1;
            if level < n {
                cursor[level] = 0;
            }
        } else {
            assigned[v] = false;
            if level == 0 {
                return Ok(FppReport {
                    holds: true,
                    witness: None,
                    stats: SearchStats { nodes },
                });
            }
            level -= 1;
            let prev = order[level];
            for (w, old) in trail[level].drain(..) {
                domains[w] = old;
            }
            assigned[prev] = false;
        }
    }
}

/// A monotone map `T × X -> X`, the finite form of a continuously
/// parametrised family of self-maps. The table is indexed by
/// `t * X.n + x`.
#[derive(Clone, Debug)]
pub struct FamilyOfSelfMaps {
    t: Arc<Poset>,
    x: Arc<Poset>,
    table: Vec<usize>,
}

impl FamilyOfSelfMaps {
    pub fn new(t: Arc<Poset>, x: Arc<Poset>, table: Vec<usize>) -> Result<FamilyOfSelfMaps> {
        if table.len() != t.n() * x.n() {
            return Err(Error::DomainMismatch);
        }
        for &v in &table {
            if v >= x.n() {
                return Err(Error::IndexOutOfRange { index: v, n: x.n() });
            }
        }
        let fam = FamilyOfSelfMaps { t, x, table };
        for t1 in 0..fam.t.n() {
            for t2 in fam.t.up_set(t1).iter() {
                for x1 in 0..fam.x.n() {
                    for x2 in fam.x.up_set(x1).iter() {
                        if !fam.x.leq(fam.value(t1, x1), fam.value(t2, x2)) {
                            return Err(Error::NotAPartialOrder {
                                reason: "family is not monotone on the product",
                            });
                        }
                    }
                }
            }
        }
        Ok(fam)
    }

    pub(crate) fn new_unchecked(
        t: Arc<Poset>,
        x: Arc<Poset>,
        table: Vec<usize>,
    ) -> FamilyOfSelfMaps {
        FamilyOfSelfMaps { t, x, table }
    }

    pub fn parameter_space(&self) -> &Arc<Poset> {
        &self.t
    }

    pub fn space(&self) -> &Arc<Poset> {
        &self.x
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn value(&self, t: usize, x: usize) -> usize {
        self.table[t * self.x.n() + x]
    }

    /// The slice self-map `f_t : X -> X`.
    pub fn slice(&self, t: usize) -> Vec<usize> {
        (0..self.x.n()).map(|x| self.value(t, x)).collect()
    }
}

/// A monotone `p : T -> X` with `f(t, p(t)) = p(t)` everywhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPointFamily {
    pub table: Vec<usize>,
}

impl FixedPointFamily {
    pub fn holds_for(family: &FamilyOfSelfMaps, table: &[usize]) -> bool {
        let t = family.parameter_space();
        let x = family.space();
        if table.len() != t.n() || table.iter().any(|&v| v >= x.n()) {
            return false;
        }
        let monotone = (0..t.n())
            .all(|a| t.up_set(a).iter().all(|b| x.leq(table[a], table[b])));
        monotone && (0..t.n()).all(|a| family.value(a, table[a]) == table[a])
    }
}

/// Outcome of the relative fixed point property decision.
#[derive(Clone, Debug)]
pub struct FppWrtReport {
    pub holds: bool,
    /// A family admitting no monotone family of fixed points.
    pub witness: Option<FamilyOfSelfMaps>,
    pub families_checked: u64,
}

/// Does every monotone family `T × X -> X` admit a monotone family of
/// fixed points `T -> X`? Families are generated lazily and each is
/// tested before the next is produced.
pub fn fpp_with_respect_to(
    x: &Arc<Poset>,
    t: &Arc<Poset>,
    limits: &Limits,
) -> Result<FppWrtReport> {
    let product = Arc::new(t.product(x, limits)?);
    let candidates = enumerate_maps(t, x, limits)?;
    let xn = x.n();
    let mut families = MapEnumerator::new(&product, x);
    let mut checked = 0u64;
    while let Some(table) = families.next_table() {
        checked += 1;
        if checked > limits.max_map_count as u64 {
            return Err(Error::SizeLimit {
                what: "family enumeration",
                requested: checked as usize,
                limit: limits.max_map_count,
            });
        }
        let admits = (0..candidates.count()).any(|k| {
            let p = candidates.table(k);
            (0..t.n()).all(|a| table[a * xn + p[a] as usize] == p[a])
        });
        if !admits {
            let witness = FamilyOfSelfMaps::new_unchecked(
                t.clone(),
                x.clone(),
                table.iter().map(|&v| v as usize).collect(),
            );
            return Ok(FppWrtReport {
                holds: false,
                witness: Some(witness),
                families_checked: checked,
            });
        }
    }
    Ok(FppWrtReport {
        holds: true,
        witness: None,
        families_checked: checked,
    })
}

/// All monotone families of fixed points of `f`, as tables `T -> X`.
pub fn fixed_point_families(
    family: &FamilyOfSelfMaps,
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    let candidates = enumerate_maps(family.parameter_space(), family.space(), limits)?;
    let mut out = Vec::new();
    for k in 0..candidates.count() {
        let table: Vec<usize> = candidates.table(k).iter().map(|&v| v as usize).collect();
        if FixedPointFamily::holds_for(family, &table) {
            out.push(table);
        }
    }
    Ok(out)
}

/// The self-map `p -> (t -> f(t, p(t)))` of the mapping space C(T, X),
/// whose fixed points are exactly the families of fixed points of `f`.
pub struct MappingSpaceReduction {
    pub mapspace: MapPoset,
    /// Image table on map indices.
    pub table: Vec<usize>,
}

impl MappingSpaceReduction {
    pub fn fixed_point_indices(&self) -> Vec<usize> {
        self.table
            .iter()
            .enumerate()
            .filter(|&(k, &v)| k == v)
            .map(|(k, _)| k)
            .collect()
    }

    /// The reduction as a monotone self-map of the map poset.
    pub fn as_monotone_map(&self, limits: &Limits) -> Result<MonotoneMap> {
        let p = self.mapspace.order_poset(limits)?;
        MonotoneMap::new(p.clone(), p, self.table.clone())
    }
}

/// Builds the mapping-space reduction of a family and cross-checks its
/// fixed points against the directly enumerated families of fixed
/// points.
pub fn family_to_selfmap_on_mapspace(
    family: &FamilyOfSelfMaps,
    limits: &Limits,
) -> Result<MappingSpaceReduction> {
    let t = family.parameter_space();
    let x = family.space();
    let mapspace = enumerate_maps(t, x, limits)?;
    let mut table = Vec::with_capacity(mapspace.count());
    for k in 0..mapspace.count() {
        let p = mapspace.table(k);
        let image: Vec<usize> = (0..t.n())
            .map(|a| family.value(a, p[a] as usize))
            .collect();
        let idx = mapspace
            .index_of_usize(&image)
            .expect("image of a monotone map under a monotone family is monotone");
        table.push(idx);
    }
    let reduction = MappingSpaceReduction { mapspace, table };
    // Fixed points of the reduction are exactly the families of fixed
    // points; the correspondence is definitional, so a mismatch is a bug.
    let fixed: Vec<usize> = reduction.fixed_point_indices();
    for &k in &fixed {
        let p: Vec<usize> = reduction.mapspace.table(k).iter().map(|&v| v as usize).collect();
        assert!(FixedPointFamily::holds_for(family, &p));
    }
    for k in 0..reduction.mapspace.count() {
        let p: Vec<usize> = reduction.mapspace.table(k).iter().map(|&v| v as usize).collect();
        if FixedPointFamily::holds_for(family, &p) {
            assert!(fixed.contains(&k));
        }
    }
    Ok(reduction)
}

/// Census of which self-maps of C(T, X) arise as the reduction of some
/// family `T × X -> X`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReductionFormCensus {
    /// Monotone families over (T, X).
    pub families: usize,
    /// Distinct self-maps of C(T, X) they reduce to.
    pub reductions: usize,
    /// All monotone self-maps of C(T, X).
    pub self_maps: usize,
}

/// Measures, by exhaustive enumeration, how much of the mapping space's
/// self-map poset is covered by family reductions. Not every self-map
/// of C(T, X) needs to have that form; this quantifies the gap on small
/// instances without drawing any conclusion from it.
pub fn reduction_form_census(
    t: &Arc<Poset>,
    x: &Arc<Poset>,
    limits: &Limits,
) -> Result<ReductionFormCensus> {
    let mapspace = enumerate_maps(t, x, limits)?;
    let order = mapspace.order_poset(limits)?;
    let self_maps = crate::mapspace::count_maps(&order, &order, limits)?;
    let product = Arc::new(t.product(x, limits)?);
    let mut families_enum = MapEnumerator::new(&product, x);
    let mut families = 0usize;
    let mut seen = alloc::collections::BTreeSet::new();
    while let Some(table) = families_enum.next_table() {
        families += 1;
        if families > limits.max_map_count {
            return Err(Error::SizeLimit {
                what: "family enumeration",
                requested: families,
                limit: limits.max_map_count,
            });
        }
        let xn = x.n();
        let reduction: Vec<usize> = (0..mapspace.count())
            .map(|k| {
                let p = mapspace.table(k);
                let image: Vec<usize> = (0..t.n())
                    .map(|a| table[a * xn + p[a] as usize] as usize)
                    .collect();
                mapspace
                    .index_of_usize(&image)
                    .expect("reduction image is monotone")
            })
            .collect();
        seen.insert(reduction);
    }
    Ok(ReductionFormCensus {
        families,
        reductions: seen.len(),
        self_maps,
    })
}

/// Certificate attached to a universal fixed point property decision.
#[derive(Clone, Debug)]
pub enum UniversalCertificate {
    /// A verified monotone fixed-point selector.
    Selection(SelectionMap),
    /// The evaluation family C(X,X) × X -> X admits no monotone family
    /// of fixed points, because such a family would be a selector.
    NoSelection {
        evaluation_family: FamilyOfSelfMaps,
        unsat: UnsatCertificate,
    },
}

#[derive(Clone, Debug)]
pub struct UniversalReport {
    pub holds: bool,
    pub certificate: UniversalCertificate,
    pub stats: SearchStats,
}

/// Decides the universal fixed point property via the selector
/// criterion: `p` has it iff a selection map exists.
pub fn has_universal_fpp(p: &Arc<Poset>, limits: &Limits) -> Result<UniversalReport> {
    let (outcome, stats) = find_selection_map(p, limits)?;
    match outcome {
        SelectionOutcome::Sat(sel) => Ok(UniversalReport {
            holds: true,
            certificate: UniversalCertificate::Selection(sel),
            stats,
        }),
        SelectionOutcome::Unsat { mapspace, certificate } => {
            let t = mapspace.order_poset(limits)?;
            let mut table = Vec::with_capacity(mapspace.count() * p.n());
            for k in 0..mapspace.count() {
                for x in 0..p.n() {
                    table.push(mapspace.table(k)[x] as usize);
                }
            }
            // Monotone because evaluation is order-preserving; verified
            // across the catalog by `evaluation_is_monotone` tests.
            let family = FamilyOfSelfMaps::new_unchecked(t, p.clone(), table);
            Ok(UniversalReport {
                holds: false,
                certificate: UniversalCertificate::NoSelection {
                    evaluation_family: family,
                    unsat: certificate,
                },
                stats,
            })
        }
    }
}
