//! Beat points, cores and dismantlability, plus retraction search.
//!
//! An element is a down-beat point when its strict lower set has a
//! greatest element, an up-beat point when its strict upper set has a
//! least element (Stong's irreducible points). Removing beat points one
//! at a time until none remain yields the core; the space of the poset
//! is contractible exactly when the core is a single point. The core is
//! independent of removal order up to isomorphism, which the test suite
//! checks by exploring every removal order on the small catalog.

use alloc::sync::Arc;
use alloc::{vec, vec::Vec};

use crate::error::{Error, Result};
use crate::poset::{MonotoneMap, Poset};
use crate::Limits;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BeatKind {
    Down,
    Up,
}

/// All beat points with their kinds; an element carrying both kinds
/// appears twice.
pub fn beat_points(p: &Poset) -> Vec<(usize, BeatKind)> {
    let mut out = Vec::new();
    for x in 0..p.n() {
        if is_down_beat(p, x) {
            out.push((x, BeatKind::Down));
        }
        if is_up_beat(p, x) {
            out.push((x, BeatKind::Up));
        }
    }
    out
}

fn is_down_beat(p: &Poset, x: usize) -> bool {
    let below = p.strict_down_set(x);
    !below.is_empty() && below.iter().any(|g| below.iter().all(|y| p.leq(y, g)))
}

fn is_up_beat(p: &Poset, x: usize) -> bool {
    let above = p.strict_up_set(x);
    !above.is_empty() && above.iter().any(|l| above.iter().all(|y| p.leq(l, y)))
}

/// Result of iterated beat-point removal.
#[derive(Clone, Debug)]
pub struct CoreReport {
    /// Elements removed, in order, with the kind that justified the
    /// removal (down-beat preferred when both apply). Indices refer to
    /// the original poset.
    pub removal_sequence: Vec<(usize, BeatKind)>,
    /// Surviving original indices, ascending.
    pub core_elements: Vec<usize>,
    /// The induced subposet on the survivors.
    pub core: Poset,
    pub dismantlable: bool,
}

/// Removes the smallest-index beat point until none remain.
pub fn core(p: &Poset) -> CoreReport {
    let mut alive: Vec<usize> = (0..p.n()).collect();
    let mut removal_sequence = Vec::new();
    loop {
        let sub = p.induced(&alive);
        let beats = beat_points(&sub);
        match beats.first() {
            None => {
                return CoreReport {
                    removal_sequence,
                    core_elements: alive.clone(),
                    core: sub,
                    dismantlable: alive.len() == 1,
                };
            }
            Some(&(local, kind)) => {
                removal_sequence.push((alive[local], kind));
                alive.remove(local);
            }
        }
    }
}

/// Searches for monotone maps `s : X -> Y`, `r : Y -> X` with
/// `r ∘ s = id`. Returns the first pair in a fixed order, or `None`
/// after exhausting the search.
pub fn find_retraction(
    y: &Arc<Poset>,
    x: &Arc<Poset>,
    limits: &Limits,
) -> Result<Option<(MonotoneMap, MonotoneMap)>> {
    for (side, n) in [("retraction codomain", x.n()), ("retraction domain", y.n())] {
        if n > limits.max_retract_n {
            return Err(Error::SizeLimit {
                what: side,
                requested: n,
                limit: limits.max_retract_n,
            });
        }
    }
    if x.n() == 0 {
        // The empty poset is a retract of the empty poset only.
        return Ok(if y.n() == 0 {
            Some((
                MonotoneMap::identity(x.clone()),
                MonotoneMap::identity(x.clone()),
            ))
        } else {
            None
        });
    }
    // A split monotone injection must be an order embedding, so only
    // embeddings are enumerated as candidates for s.
    let ext_x = x.linear_extension();
    let mut s_img = vec![0usize; x.n()];
    let mut found: Option<(Vec<usize>, Vec<usize>)> = None;
    embed_search(x, y, &ext_x, 0, &mut s_img, &mut found);
    Ok(found.map(|(s_img, r_img)| {
        (
            MonotoneMap::new_unchecked(x.clone(), y.clone(), s_img),
            MonotoneMap::new_unchecked(y.clone(), x.clone(), r_img),
        )
    }))
}

fn embed_search(
    x: &Arc<Poset>,
    y: &Arc<Poset>,
    ext_x: &[usize],
    k: usize,
    s_img: &mut Vec<usize>,
    found: &mut Option<(Vec<usize>, Vec<usize>)>,
) {
    if k == ext_x.len() {
        if let Some(r_img) = extend_retraction(x, y, s_img) {
            *found = Some((s_img.clone(), r_img));
        }
        return;
    }
    let v = ext_x[k];
    for c in 0..y.n() {
        let consistent = ext_x[..k].iter().all(|&u| {
            x.leq(u, v) == y.leq(s_img[u], c) && x.leq(v, u) == y.leq(c, s_img[u])
        });
        if consistent {
            s_img[v] = c;
            embed_search(x, y, ext_x, k + 1, s_img, found);
            if found.is_some() {
                return;
            }
        }
    }
}

/// Completes an embedding to a retraction, fixed on the image, or
/// reports that no monotone completion exists.
fn extend_retraction(x: &Arc<Poset>, y: &Arc<Poset>, s_img: &[usize]) -> Option<Vec<usize>> {
    let mut forced = vec![usize::MAX; y.n()];
    for (v, &img) in s_img.iter().enumerate() {
        forced[img] = v;
    }
    let ext_y = y.linear_extension();
    let covers_y = y.covers();
    let preds: Vec<Vec<usize>> = (0..y.n())
        .map(|v| {
            covers_y
                .iter()
                .filter(|&&(_, hi)| hi == v)
                .map(|&(lo, _)| lo)
                .collect()
        })
        .collect();
    let mut r_img = vec![0usize; y.n()];
    fn rec(
        x: &Poset,
        ext_y: &[usize],
        preds: &[Vec<usize>],
        forced: &[usize],
        r_img: &mut Vec<usize>,
        k: usize,
    ) -> bool {
        if k == ext_y.len() {
            return true;
        }
        let v = ext_y[k];
        let candidates: Vec<usize> = if forced[v] != usize::MAX {
            vec![forced[v]]
        } else {
            (0..x.n()).collect()
        };
        for c in candidates {
            if preds[v].iter().all(|&u| x.leq(r_img[u], c)) {
                r_img[v] = c;
                if rec(x, ext_y, preds, forced, r_img, k + 1) {
                    return true;
                }
            }
        }
        false
    }
    if rec(x, &ext_y, &preds, &forced, &mut r_img, 0) {
        Some(r_img)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapspace::compose;

    fn lim() -> Limits {
        Limits::default()
    }

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    fn crown4() -> Poset {
        Poset::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn two_chain_beats() {
        let beats = beat_points(&Poset::chain(2));
        assert_eq!(beats, vec![(0, BeatKind::Up), (1, BeatKind::Down)]);
    }

    #[test]
    fn crown_has_no_beats() {
        assert!(beat_points(&crown4()).is_empty());
    }

    #[test]
    fn chains_dismantle_to_a_point() {
        for n in 1..6 {
            let report = core(&Poset::chain(n));
            assert!(report.dismantlable);
            assert_eq!(report.core_elements.len(), 1);
            assert_eq!(report.removal_sequence.len(), n - 1);
            // Replaying the removals reproduces the core.
            let mut alive: Vec<usize> = (0..n).collect();
            for &(e, _) in &report.removal_sequence {
                alive.retain(|&v| v != e);
            }
            assert!(Poset::chain(n).induced(&alive).same_order_as(&report.core));
        }
    }

    #[test]
    fn crown_is_its_own_core() {
        let report = core(&crown4());
        assert!(!report.dismantlable);
        assert_eq!(report.core_elements, vec![0, 1, 2, 3]);
        assert!(report.core.same_order_as(&crown4()));
    }

    #[test]
    fn singleton_into_anything() {
        let y = arc(crown4());
        let x = arc(Poset::singleton());
        let (s, r) = find_retraction(&y, &x, &lim()).unwrap().unwrap();
        let rs = compose(&r, &s).unwrap();
        assert_eq!(rs.image(), &[0]);
    }

    #[test]
    fn two_chain_retracts_off_three_chain() {
        let y = arc(Poset::chain(3));
        let x = arc(Poset::chain(2));
        let (s, r) = find_retraction(&y, &x, &lim()).unwrap().unwrap();
        let rs = compose(&r, &s).unwrap();
        assert_eq!(rs.image(), &[0, 1]);
    }

    #[test]
    fn no_chain_inside_antichain() {
        let y = arc(Poset::antichain(2));
        let x = arc(Poset::chain(2));
        assert!(find_retraction(&y, &x, &lim()).unwrap().is_none());
    }

    #[test]
    fn retraction_size_limit() {
        let mut l = lim();
        l.max_retract_n = 2;
        assert!(find_retraction(&arc(Poset::chain(3)), &arc(Poset::chain(2)), &l).is_err());
    }
}
