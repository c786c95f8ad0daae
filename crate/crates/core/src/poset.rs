//! Finite posets, subsets of their ground set, and monotone maps.
//!
//! Elements are dense indices `0..n`; labels, when present, are purely
//! presentational. The full incidence relation is stored bit-packed in
//! both directions, so `leq`, up-sets and down-sets are O(1)/O(n/64).

use alloc::string::String;
use alloc::sync::Arc;
use alloc::{vec, vec::Vec};
use core::fmt;

use crate::bits::{words_for, BitMatrix, SetBits, WORD};
use crate::error::{Error, Result};
use crate::Limits;

/// A subset of the ground set of a poset, as a bit mask.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SubSet {
    len: usize,
    words: Vec<u64>,
}

impl SubSet {
    pub fn empty(len: usize) -> Self {
        SubSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = SubSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut s = SubSet::empty(len);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the ambient ground set, not of the subset.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        SetBits::new(&self.words)
    }

    pub fn is_subset_of(&self, other: &SubSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &SubSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &SubSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        SubSet { len, words }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for SubSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A finite partially ordered set on elements `0..n`.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    /// `up.get(i, j)` iff `i <= j`; row `i` is the up-set of `i`.
    up: BitMatrix,
    /// Transpose of `up`; row `j` is the down-set of `j`.
    down: BitMatrix,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of a cover relation.
    ///
    /// Returns exactly the relations generated by the covers, or a
    /// witness cycle if closure would break antisymmetry.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            for idx in [lo, hi] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            succ[lo].push(hi);
        }
        // DFS cycle check with an explicit path for the witness.
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        let mut path: Vec<usize> = Vec::new();
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            stack.push((start, 0));
            state[start] = 1;
            path.push(start);
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < succ[v].len() {
                    let w = succ[v][*next];
                    *next += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            path.push(w);
                            stack.push((w, 0));
                        }
                        1 => {
                            let pos = path.iter().position(|&u| u == w).unwrap();
                            return Err(Error::CycleDetected {
                                cycle: path[pos..].to_vec(),
                            });
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    path.pop();
                    stack.pop();
                }
            }
        }
        // Transitive closure by DFS from each element.
        let mut up = BitMatrix::identity(n);
        for i in 0..n {
            let mut todo = vec![i];
            while let Some(v) = todo.pop() {
                for &w in &succ[v] {
                    if !up.get(i, w) {
                        up.set(i, w);
                        todo.push(w);
                    }
                }
            }
        }
        let down = up.transpose();
        Ok(Poset {
            n,
            up,
            down,
            labels: None,
        })
    }

    /// Builds a poset from an arbitrary relation, validating the axioms.
    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut up = BitMatrix::new(n, n);
        for i in 0..n {
            for j in 0..n {
                if rel(i, j) {
                    up.set(i, j);
                }
            }
        }
        for i in 0..n {
            if !up.get(i, i) {
                return Err(Error::NotAPartialOrder {
                    reason: "not reflexive",
                });
            }
            for j in up.iter_row(i) {
                if j != i && up.get(j, i) {
                    return Err(Error::NotAPartialOrder {
                        reason: "not antisymmetric",
                    });
                }
                for k in up.iter_row(j) {
                    if !up.get(i, k) {
                        return Err(Error::NotAPartialOrder {
                            reason: "not transitive",
                        });
                    }
                }
            }
        }
        let down = up.transpose();
        Ok(Poset {
            n,
            up,
            down,
            labels: None,
        })
    }

    /// Constructor for relations that are partial orders by construction.
    pub(crate) fn from_up_unchecked(n: usize, up: BitMatrix) -> Poset {
        let down = up.transpose();
        Poset {
            n,
            up,
            down,
            labels: None,
        }
    }

    pub fn chain(n: usize) -> Poset {
        let mut up = BitMatrix::new(n, n);
        for i in 0..n {
            for j in i..n {
                up.set(i, j);
            }
        }
        Poset::from_up_unchecked(n, up)
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_up_unchecked(n, BitMatrix::identity(n))
    }

    pub fn singleton() -> Poset {
        Poset::chain(1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.up.get(i, j)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.n {
            return Err(Error::IndexOutOfRange {
                index: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Same ground set and same order; labels are ignored.
    pub fn same_order_as(&self, other: &Poset) -> bool {
        self.n == other.n && self.up == other.up
    }

    pub fn up_set(&self, x: usize) -> SubSet {
        SubSet::from_words(self.n, self.up.row(x).to_vec())
    }

    pub fn down_set(&self, x: usize) -> SubSet {
        SubSet::from_words(self.n, self.down.row(x).to_vec())
    }

    pub fn strict_up_set(&self, x: usize) -> SubSet {
        let mut s = self.up_set(x);
        s.remove(x);
        s
    }

    pub fn strict_down_set(&self, x: usize) -> SubSet {
        let mut s = self.down_set(x);
        s.remove(x);
        s
    }

    /// Up-set as a single word; requires `n <= 64`.
    pub(crate) fn up_mask64(&self, x: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.up.row(x)[0]
    }

    /// The minimal open neighbourhood of `x`: its down-set.
    pub fn min_open_nbhd(&self, x: usize) -> Result<SubSet> {
        if x >= self.n {
            return Err(Error::IndexOutOfRange { index: x, n: self.n });
        }
        Ok(self.down_set(x))
    }

    /// Open means down-closed.
    pub fn is_open(&self, u: &SubSet) -> bool {
        debug_assert_eq!(u.len(), self.n);
        u.iter().all(|j| self.down_set(j).is_subset_of(u))
    }

    /// Product order on pairs, with `(p, q)` at index `p * other.n + q`.
    pub fn product(&self, other: &Poset, limits: &Limits) -> Result<Poset> {
        let n = self.n.saturating_mul(other.n);
        if n > limits.max_product {
            return Err(Error::SizeLimit {
                what: "product poset elements",
                requested: n,
                limit: limits.max_product,
            });
        }
        let mut up = BitMatrix::new(n, n);
        for p in 0..self.n {
            for q in 0..other.n {
                let i = p * other.n + q;
                for p2 in self.up.iter_row(p) {
                    for q2 in other.up.iter_row(q) {
                        up.set(i, p2 * other.n + q2);
                    }
                }
            }
        }
        let mut poset = Poset::from_up_unchecked(n, up);
        if let (Some(a), Some(b)) = (&self.labels, &other.labels) {
            let mut labels = Vec::with_capacity(n);
            for p in 0..self.n {
                for q in 0..other.n {
                    labels.push(alloc::format!("({},{})", a[p], b[q]));
                }
            }
            poset.labels = Some(labels);
        }
        Ok(poset)
    }

    /// Opposite order; an involution.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Component ids of the comparability graph, in discovery order.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut todo = vec![start];
            while let Some(v) = todo.pop() {
                for w in self.up.iter_row(v).chain(self.down.iter_row(v)) {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        todo.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Connectivity of the comparability graph. The empty poset counts
    /// as disconnected.
    pub fn is_connected(&self) -> bool {
        let comp = self.components();
        comp.iter().max().map(|&m| m == 0).unwrap_or(false)
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.n).find(|&t| (0..self.n).all(|i| self.leq(i, t)))
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|i| self.leq(b, i)))
    }

    /// Kahn's algorithm with smallest-index tie-break.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut remaining: Vec<usize> = (0..self.n)
            .map(|v| self.down.count_row(v) - 1)
            .collect();
        let mut done = vec![false; self.n];
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n)
                .find(|&v| !done[v] && remaining[v] == 0)
                .expect("acyclic by construction");
            done[v] = true;
            out.push(v);
            for w in self.up.iter_row(v) {
                if w != v {
                    remaining[w] -= 1;
                }
            }
        }
        out
    }

    /// Length of the longest chain strictly below each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for &v in &self.linear_extension() {
            h[v] = self
                .down
                .iter_row(v)
                .filter(|&u| u != v)
                .map(|u| h[u] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Number of elements comparable to `x`, excluding `x` itself.
    pub fn comparability_degree(&self, x: usize) -> usize {
        self.up.count_row(x) + self.down.count_row(x) - 2
    }

    /// Cover pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.up.iter_row(i) {
                if j == i {
                    continue;
                }
                let has_mid = self
                    .up
                    .iter_row(i)
                    .any(|k| k != i && k != j && self.leq(k, j));
                if !has_mid {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Induced subposet on the given elements, reindexed in the order
    /// they are listed. Labels are carried along.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let m = keep.len();
        let mut up = BitMatrix::new(m, m);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.leq(i, j) {
                    up.set(a, b);
                }
            }
        }
        let mut p = Poset::from_up_unchecked(m, up);
        if let Some(labels) = &self.labels {
            p.labels = Some(keep.iter().map(|&i| labels[i].clone()).collect());
        }
        p
    }
}

/// An order-preserving map between two posets, stored as an image table.
#[derive(Clone, Debug)]
pub struct MonotoneMap {
    dom: Arc<Poset>,
    cod: Arc<Poset>,
    image: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: Arc<Poset>, cod: Arc<Poset>, image: Vec<usize>) -> Result<MonotoneMap> {
        if image.len() != dom.n() {
            return Err(Error::DomainMismatch);
        }
        for &y in &image {
            if y >= cod.n() {
                return Err(Error::IndexOutOfRange {
                    index: y,
                    n: cod.n(),
                });
            }
        }
        for i in 0..dom.n() {
            for j in dom.up.iter_row(i) {
                if !cod.leq(image[i], image[j]) {
                    return Err(Error::NotAPartialOrder {
                        reason: "map is not order-preserving",
                    });
                }
            }
        }
        Ok(MonotoneMap { dom, cod, image })
    }

    pub(crate) fn new_unchecked(dom: Arc<Poset>, cod: Arc<Poset>, image: Vec<usize>) -> MonotoneMap {
        debug_assert!(MonotoneMap::new(dom.clone(), cod.clone(), image.clone()).is_ok());
        MonotoneMap { dom, cod, image }
    }

    pub fn identity(p: Arc<Poset>) -> MonotoneMap {
        let image = (0..p.n()).collect();
        MonotoneMap {
            dom: p.clone(),
            cod: p,
            image,
        }
    }

    pub fn constant(dom: Arc<Poset>, cod: Arc<Poset>, y: usize) -> Result<MonotoneMap> {
        if y >= cod.n() {
            return Err(Error::IndexOutOfRange { index: y, n: cod.n() });
        }
        let image = vec![y; dom.n()];
        Ok(MonotoneMap { dom, cod, image })
    }

    pub fn dom(&self) -> &Arc<Poset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Poset> {
        &self.cod
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_endo(&self) -> bool {
        self.dom.same_order_as(&self.cod)
    }
}
