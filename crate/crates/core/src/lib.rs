//! Fixed-point analysis of finite partially ordered sets.
//!
//! A finite poset carries a unique T0 topology whose open sets are the
//! down-closed subsets, and under that dictionary the monotone maps are
//! exactly the continuous ones. This crate decides, by exhaustive and
//! certificate-producing search, the fixed-point-theoretic properties of
//! such spaces:
//!
//! * [`fpp::has_fpp`]: does every monotone self-map have a fixed point?
//! * [`selection::find_selection_map`]: is there a monotone assignment
//!   `Φ` on the space of self-maps with `f(Φ(f)) = Φ(f)`, i.e. a
//!   continuous choice of fixed points for every self-map at once?
//! * [`dismantle::core`]: is the poset dismantlable (equivalently: is
//!   its space contractible)?
//!
//! The [`interval`] module complements the discrete side with exact
//! rational computations on piecewise-linear self-maps of an interval:
//! the sliding-band family whose fixed point jumps, the radial
//! retraction onto a disk, and contraction stability bounds.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the
//! command-line front end live in the companion `fixpoint-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;

pub mod canonical;
pub mod catalog;
pub mod dismantle;
pub mod error;
pub mod fpp;
pub mod interval;
pub mod mapspace;
pub mod poset;
pub mod selection;
pub mod space;

pub use error::{Error, Result};
pub use poset::{MonotoneMap, Poset, SubSet};

/// Explicit size bounds for the operations that can blow up.
///
/// Every bound is checked with a dedicated [`Error::SizeLimit`]; nothing
/// is ever truncated silently.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest poset for which the full lattice of down-sets is
    /// materialised (`2^n` candidate subsets are scanned).
    pub max_space_n: usize,
    /// Largest poset for which exact canonical forms are computed.
    pub max_canonical_n: usize,
    /// Largest mapping space that is enumerated and stored.
    pub max_maps: usize,
    /// Bound for count-only map enumeration.
    pub max_map_count: usize,
    /// Largest mapping space for which the pointwise-order matrix is
    /// materialised eagerly; order queries beyond it are computed on
    /// demand.
    pub max_order_matrix: usize,
    /// Largest element count of a product poset.
    pub max_product: usize,
    /// Widest poset the mask-based searches accept.
    pub max_search_n: usize,
    /// Largest side for the retraction search.
    pub max_retract_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_space_n: 20,
            max_canonical_n: 8,
            max_maps: 300_000,
            max_map_count: 2_000_000,
            max_order_matrix: 16_384,
            max_product: 4_096,
            max_search_n: 64,
            max_retract_n: 12,
        }
    }
}
