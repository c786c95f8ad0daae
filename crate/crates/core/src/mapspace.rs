//! The space C(X, Y) of monotone maps, ordered pointwise.
//!
//! Enumeration backtracks through the domain in a fixed linear
//! extension; a candidate image for an element only has to dominate the
//! images of its already-assigned cover predecessors, because the
//! partial table is monotone on everything assigned earlier. Maps come
//! out in lexicographic order of their image tables read along that
//! extension, which pins down the map indices used in reports, caches
//! and selection certificates.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::{vec, vec::Vec};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::{MonotoneMap, Poset, SubSet};
use crate::Limits;

/// Resumable backtracking enumerator for monotone maps `dom -> cod`.
pub struct MapEnumerator<'a> {
    cod: &'a Poset,
    ext: Vec<usize>,
    /// Cover predecessors of `ext[k]`, as element ids.
    preds: Vec<Vec<usize>>,
    img: Vec<u16>,
    cursor: Vec<u16>,
    fresh: bool,
    exhausted: bool,
}

impl<'a> MapEnumerator<'a> {
    pub fn new(dom: &'a Poset, cod: &'a Poset) -> MapEnumerator<'a> {
        let ext = dom.linear_extension();
        let covers = dom.covers();
        let preds = ext
            .iter()
            .map(|&v| {
                covers
                    .iter()
                    .filter(|&&(_, hi)| hi == v)
                    .map(|&(lo, _)| lo)
                    .collect()
            })
            .collect();
        MapEnumerator {
            cod,
            img: vec![0; dom.n()],
            cursor: vec![0; dom.n()],
            preds,
            ext,
            fresh: true,
            exhausted: false,
        }
    }

    /// Advances to the next monotone table; `None` when exhausted.
    pub fn next_table(&mut self) -> Option<&[u16]> {
        if self.exhausted {
            return None;
        }
        let n = self.ext.len();
        if n == 0 {
            self.exhausted = true;
            return if self.fresh { Some(&self.img) } else { None };
        }
        if self.cod.n() == 0 {
            self.exhausted = true;
            return None;
        }
        let mut k;
        if self.fresh {
            self.fresh = false;
            k = 0;
            self.cursor[0] = 0;
        } else {
            k = n - 1;
        }
        loop {
            let v = self.ext[k];
            let mut c = self.cursor[k] as usize;
            let mut placed = false;
            while c < self.cod.n() {
                if self.preds[k]
                    .iter()
                    .all(|&u| self.cod.leq(self.img[u] as usize, c))
                {
                    self.img[v] = c as u16;
                    self.cursor[k] = (c + 1) as u16;
                    placed = true;
                    break;
                }
                c += 1;
            }
            if placed {
                if k + 1 == n {
                    return Some(&self.img);
                }
                k += 1;
                self.cursor[k] = 0;
            } else if k == 0 {
                self.exhausted = true;
                return None;
            } else {
                k -= 1;
            }
        }
    }
}

/// Counts monotone maps without storing them.
pub fn count_maps(dom: &Poset, cod: &Poset, limits: &Limits) -> Result<usize> {
    let mut e = MapEnumerator::new(dom, cod);
    let mut count = 0usize;
    while e.next_table().is_some() {
        count += 1;
        if count > limits.max_map_count {
            return Err(Error::SizeLimit {
                what: "map count",
                requested: count,
                limit: limits.max_map_count,
            });
        }
    }
    Ok(count)
}

/// The poset of monotone maps `dom -> cod`.
pub struct MapPoset {
    dom: Arc<Poset>,
    cod: Arc<Poset>,
    count: usize,
    tables: Vec<u16>,
    /// Pointwise order, materialised only up to the configured bound.
    order: Option<BitMatrix>,
    index: BTreeMap<Vec<u16>, usize>,
}

impl core::fmt::Debug for MapPoset {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MapPoset")
            .field("dom_n", &self.dom.n())
            .field("cod_n", &self.cod.n())
            .field("count", &self.count)
            .field("materialised_order", &self.order.is_some())
            .finish()
    }
}


/// Enumerates the full mapping space. The size bound is enforced while
/// enumerating, not after the fact.
pub fn enumerate_maps(dom: &Arc<Poset>, cod: &Arc<Poset>, limits: &Limits) -> Result<MapPoset> {
    let n = dom.n();
    if cod.n() > u16::MAX as usize {
        return Err(Error::SizeLimit {
            what: "codomain elements",
            requested: cod.n(),
            limit: u16::MAX as usize,
        });
    }
    let mut e = MapEnumerator::new(dom, cod);
    let mut tables: Vec<u16> = Vec::new();
    let mut count = 0usize;
    while let Some(t) = e.next_table() {
        count += 1;
        if count > limits.max_maps {
            return Err(Error::SizeLimit {
                what: "map enumeration",
                requested: count,
                limit: limits.max_maps,
            });
        }
        tables.extend_from_slice(t);
    }
    let mut index = BTreeMap::new();
    for k in 0..count {
        index.insert(tables[k * n..(k + 1) * n].to_vec(), k);
    }
    debug_assert_eq!(index.len(), count, "every map appears exactly once");
    let mut ms = MapPoset {
        dom: dom.clone(),
        cod: cod.clone(),
        count,
        tables,
        order: None,
        index,
    };
    if count <= limits.max_order_matrix {
        let mut order = BitMatrix::new(count, count);
        for a in 0..count {
            for b in 0..count {
                if ms.le_computed(a, b) {
                    order.set(a, b);
                }
            }
        }
        ms.order = Some(order);
    }
    Ok(ms)
}

impl MapPoset {
    pub fn dom(&self) -> &Arc<Poset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Poset> {
        &self.cod
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_self_space(&self) -> bool {
        self.dom.same_order_as(&self.cod)
    }

    pub fn table(&self, k: usize) -> &[u16] {
        let n = self.dom.n();
        &self.tables[k * n..(k + 1) * n]
    }

    pub fn map(&self, k: usize) -> MonotoneMap {
        MonotoneMap::new_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            self.table(k).iter().map(|&v| v as usize).collect(),
        )
    }

    pub fn index_of(&self, table: &[u16]) -> Option<usize> {
        self.index.get(table).copied()
    }

    pub fn index_of_usize(&self, table: &[usize]) -> Option<usize> {
        let key: Vec<u16> = table.iter().map(|&v| v as u16).collect();
        self.index_of(&key)
    }

    fn le_computed(&self, a: usize, b: usize) -> bool {
        let (ta, tb) = (self.table(a), self.table(b));
        ta.iter()
            .zip(tb)
            .all(|(&x, &y)| self.cod.leq(x as usize, y as usize))
    }

    /// Pointwise order between two maps.
    pub fn le(&self, a: usize, b: usize) -> bool {
        match &self.order {
            Some(m) => m.get(a, b),
            None => self.le_computed(a, b),
        }
    }

    pub fn has_order_matrix(&self) -> bool {
        self.order.is_some()
    }

    /// Maps pointwise above `a`, ascending. Falls back to scanning when
    /// the matrix was skipped.
    pub fn above(&self, a: usize) -> Vec<usize> {
        match &self.order {
            Some(m) => m.iter_row(a).collect(),
            None => (0..self.count).filter(|&b| self.le_computed(a, b)).collect(),
        }
    }

    /// The mapping space as a poset in its own right; needs the
    /// materialised order matrix.
    pub fn order_poset(&self, limits: &Limits) -> Result<Arc<Poset>> {
        match &self.order {
            Some(m) => Ok(Arc::new(Poset::from_up_unchecked(self.count, m.clone()))),
            None => Err(Error::SizeLimit {
                what: "map order matrix",
                requested: self.count,
                limit: limits.max_order_matrix,
            }),
        }
    }

    /// Fixed points of the k-th map; requires a self-space.
    pub fn fixed_point_set(&self, k: usize) -> SubSet {
        debug_assert!(self.is_self_space());
        let t = self.table(k);
        let mut s = SubSet::empty(self.dom.n());
        for (x, &y) in t.iter().enumerate() {
            if x == y as usize {
                s.insert(x);
            }
        }
        s
    }

    pub(crate) fn fixed_point_mask(&self, k: usize) -> u64 {
        debug_assert!(self.dom.n() <= 64);
        let mut m = 0u64;
        for (x, &y) in self.table(k).iter().enumerate() {
            if x == y as usize {
                m |= 1 << x;
            }
        }
        m
    }
}

/// The set `{x | f(x) = x}` of an endomap.
pub fn fixed_points(f: &MonotoneMap) -> Result<SubSet> {
    if !f.is_endo() {
        return Err(Error::DomainMismatch);
    }
    let mut s = SubSet::empty(f.dom().n());
    for (x, &y) in f.image().iter().enumerate() {
        if x == y {
            s.insert(x);
        }
    }
    Ok(s)
}

/// `compose(f, g) = f ∘ g`, i.e. `x -> f(g(x))`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    if !g.cod().same_order_as(f.dom()) {
        return Err(Error::DomainMismatch);
    }
    let image = g.image().iter().map(|&x| f.apply(x)).collect();
    Ok(MonotoneMap::new_unchecked(
        g.dom().clone(),
        f.cod().clone(),
        image,
    ))
}

/// A pair witnessing that evaluation fails to be monotone: maps
/// `a <= b` and points `x <= y` with `a(x) !<= b(y)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EvaluationViolation {
    pub lo_map: usize,
    pub hi_map: usize,
    pub lo_point: usize,
    pub hi_point: usize,
}

/// Checks that `(f, x) -> f(x)` is monotone from the product of the map
/// order with the space. This must never fail; it is kept as an
/// internal consistency check and returns the offending pair if it ever
/// does.
pub fn evaluation_is_monotone(ms: &MapPoset) -> Option<EvaluationViolation> {
    debug_assert!(ms.is_self_space());
    let p = ms.cod();
    for a in 0..ms.count() {
        for b in ms.above(a) {
            let (ta, tb) = (ms.table(a), ms.table(b));
            for x in 0..p.n() {
                for y in p.up_set(x).iter() {
                    if !p.leq(ta[x] as usize, tb[y] as usize) {
                        return Some(EvaluationViolation {
                            lo_map: a,
                            hi_map: b,
                            lo_point: x,
                            hi_point: y,
                        });
                    }
                }
            }
        }
    }
    None
}
