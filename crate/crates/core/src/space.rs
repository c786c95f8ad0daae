//! Finite topological spaces and the bridge to posets.
//!
//! Open sets of the topology attached to a poset are its down-closed
//! subsets; conversely the specialization order `x <= x'` iff
//! `U(x) ⊆ U(x')` recovers a poset from any finite T0 space. The two
//! directions are mutually inverse, which the test suite checks
//! exhaustively on the small-poset catalog.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{Poset, SubSet};
use crate::Limits;

/// A finite space given by an explicit list of open sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSpace {
    n: usize,
    opens: Vec<SubSet>,
}

impl FiniteSpace {
    /// Validates that the family contains `∅` and the full set and is
    /// closed under pairwise union and intersection.
    pub fn new(n: usize, mut opens: Vec<SubSet>) -> Result<FiniteSpace> {
        if opens.iter().any(|u| u.len() != n) {
            return Err(Error::InvalidSpace {
                reason: "open set over a different ground set",
            });
        }
        opens.sort();
        opens.dedup();
        let space = FiniteSpace { n, opens };
        if !space.contains_open(&SubSet::empty(n)) || !space.contains_open(&SubSet::full(n)) {
            return Err(Error::InvalidSpace {
                reason: "missing the empty or the full open set",
            });
        }
        for a in &space.opens {
            for b in &space.opens {
                let mut u = a.clone();
                u.union_with(b);
                let mut i = a.clone();
                i.intersect_with(b);
                if !space.contains_open(&u) || !space.contains_open(&i) {
                    return Err(Error::InvalidSpace {
                        reason: "not closed under union/intersection",
                    });
                }
            }
        }
        Ok(space)
    }

    pub(crate) fn from_parts_unchecked(n: usize, mut opens: Vec<SubSet>) -> FiniteSpace {
        opens.sort();
        opens.dedup();
        FiniteSpace { n, opens }
    }

    pub fn indiscrete(n: usize) -> FiniteSpace {
        FiniteSpace::from_parts_unchecked(n, alloc::vec![SubSet::empty(n), SubSet::full(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[SubSet] {
        &self.opens
    }

    pub fn contains_open(&self, u: &SubSet) -> bool {
        self.opens.binary_search(u).is_ok()
    }

    /// Intersection of all open sets containing `x`.
    pub fn min_open_nbhd(&self, x: usize) -> Result<SubSet> {
        if x >= self.n {
            return Err(Error::IndexOutOfRange { index: x, n: self.n });
        }
        let mut out = SubSet::full(self.n);
        for u in &self.opens {
            if u.contains(x) {
                out.intersect_with(u);
            }
        }
        Ok(out)
    }

    /// Preimage of every open set is open.
    pub fn is_continuous_self_map(&self, table: &[usize]) -> bool {
        if table.len() != self.n || table.iter().any(|&y| y >= self.n) {
            return false;
        }
        self.opens.iter().all(|u| {
            let mut pre = SubSet::empty(self.n);
            for x in 0..self.n {
                if u.contains(table[x]) {
                    pre.insert(x);
                }
            }
            self.contains_open(&pre)
        })
    }
}

/// All down-closed subsets of `p`, as a finite space.
pub fn to_space(p: &Poset, limits: &Limits) -> Result<FiniteSpace> {
    let n = p.n();
    if n > limits.max_space_n {
        return Err(Error::SizeLimit {
            what: "down-set enumeration",
            requested: n,
            limit: limits.max_space_n,
        });
    }
    // n <= max_space_n <= 64, so masks fit one word.
    let strict_down: Vec<u64> = (0..n)
        .map(|x| p.strict_down_set(x).words()[0])
        .collect();
    let mut opens = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let mut ok = true;
        let mut rest = mask;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if strict_down[x] & !mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            let mut open = SubSet::empty(n);
            let mut rest = mask;
            while rest != 0 {
                open.insert(rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
            opens.push(open);
        }
    }
    Ok(FiniteSpace::from_parts_unchecked(n, opens))
}

/// The specialization order of a finite space; fails with a witness
/// pair when two distinct points share their minimal neighbourhood.
pub fn specialization_poset(s: &FiniteSpace) -> Result<Poset> {
    let n = s.n();
    let mut nbhd = Vec::with_capacity(n);
    for x in 0..n {
        nbhd.push(s.min_open_nbhd(x)?);
    }
    for x in 0..n {
        for y in x + 1..n {
            if nbhd[x] == nbhd[y] {
                return Err(Error::NotKolmogorov { x, y });
            }
        }
    }
    // x <= y iff x lies in the minimal neighbourhood of y.
    let p = Poset::from_relation(n, |x, y| nbhd[y].contains(x))
        .expect("specialization preorder is antisymmetric after the witness scan");
    Ok(p)
}

/// The fixed-point-free self-map witnessing a T0 failure: it sends `x`
/// to `y` and everything else to `x`.
pub fn t0_witness_map(s: &FiniteSpace, x: usize, y: usize) -> Result<Vec<usize>> {
    let n = s.n();
    for idx in [x, y] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    if x == y || s.min_open_nbhd(x)? != s.min_open_nbhd(y)? {
        return Err(Error::NotAWitness { x, y });
    }
    let mut table = alloc::vec![x; n];
    table[x] = y;
    assert!(
        s.is_continuous_self_map(&table),
        "witness map must be continuous"
    );
    assert!(
        (0..n).all(|z| table[z] != z),
        "witness map must be fixed-point-free"
    );
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn singleton_space() {
        let s = to_space(&Poset::singleton(), &limits()).unwrap();
        assert_eq!(s.opens().len(), 2);
    }

    #[test]
    fn two_chain_space_is_sierpinski() {
        let s = to_space(&Poset::chain(2), &limits()).unwrap();
        let expect = [
            SubSet::empty(2),
            SubSet::from_indices(2, &[0]),
            SubSet::full(2),
        ];
        assert_eq!(s.opens(), &expect);
    }

    #[test]
    fn chain_spaces_are_prefix_families() {
        for n in 0..7 {
            let s = to_space(&Poset::chain(n), &limits()).unwrap();
            assert_eq!(s.opens().len(), n + 1);
        }
    }

    #[test]
    fn specialization_of_sierpinski() {
        let s = FiniteSpace::new(
            2,
            alloc::vec![
                SubSet::empty(2),
                SubSet::from_indices(2, &[0]),
                SubSet::full(2)
            ],
        )
        .unwrap();
        let p = specialization_poset(&s).unwrap();
        assert!(p.same_order_as(&Poset::chain(2)));
    }

    #[test]
    fn indiscrete_is_not_kolmogorov() {
        let s = FiniteSpace::indiscrete(2);
        assert!(matches!(
            specialization_poset(&s),
            Err(Error::NotKolmogorov { x: 0, y: 1 })
        ));
    }

    #[test]
    fn witness_map_examples() {
        let s = FiniteSpace::indiscrete(2);
        assert_eq!(t0_witness_map(&s, 0, 1).unwrap(), alloc::vec![1, 0]);
        let s3 = FiniteSpace::indiscrete(3);
        assert_eq!(t0_witness_map(&s3, 0, 2).unwrap(), alloc::vec![2, 0, 0]);
        let sier = to_space(&Poset::chain(2), &limits()).unwrap();
        assert!(matches!(
            t0_witness_map(&sier, 0, 1),
            Err(Error::NotAWitness { x: 0, y: 1 })
        ));
    }

    #[test]
    fn invalid_space_detected() {
        // {∅, {0}, {1}} is missing the union {0,1} and the full set.
        let opens = alloc::vec![
            SubSet::empty(2),
            SubSet::from_indices(2, &[0]),
            SubSet::from_indices(2, &[1]),
        ];
        assert!(FiniteSpace::new(2, opens).is_err());
    }

    #[test]
    fn space_size_limit() {
        let mut lim = limits();
        lim.max_space_n = 3;
        assert!(matches!(
            to_space(&Poset::chain(4), &lim),
            Err(Error::SizeLimit { .. })
        ));
    }
}
