//! Error type shared by all analyses.

use alloc::vec::Vec;
use core::fmt;

use crate::interval::Rat;
use crate::selection::SelectionViolation;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// An element index outside `0..n`.
    IndexOutOfRange { index: usize, n: usize },
    /// The cover relation closes into a cycle; the witness lists the
    /// elements of one cycle in order.
    CycleDetected { cycle: Vec<usize> },
    /// A relation offered as a partial order fails one of the axioms.
    NotAPartialOrder { reason: &'static str },
    /// An open-set family violating the finite-space invariants.
    InvalidSpace { reason: &'static str },
    /// Two distinct points with identical minimal neighbourhoods.
    NotKolmogorov { x: usize, y: usize },
    /// The pair given to the witness-map construction separates after all.
    NotAWitness { x: usize, y: usize },
    /// A configured bound would be exceeded.
    SizeLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    /// Maps whose domains/codomains do not line up.
    DomainMismatch,
    /// The given pair of maps is not a section/retraction pair.
    NotARetract,
    /// The fixed-point oracle failed to produce a fixed point.
    OracleFailure,
    /// A construction that is guaranteed correct failed verification.
    VerificationFailure(SelectionViolation),
    /// Argument outside the stated domain of a piecewise map.
    OutOfDomain { what: &'static str },
    /// A piece of the map has slope exceeding the contraction constant.
    NotAContraction { piece: usize, slope: Rat },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, n } => {
                write!(f, "element index {index} out of range for {n} elements")
            }
            Error::CycleDetected { cycle } => {
                write!(f, "cover relation contains a cycle: {cycle:?}")
            }
            Error::NotAPartialOrder { reason } => {
                write!(f, "relation is not a partial order: {reason}")
            }
            Error::InvalidSpace { reason } => write!(f, "invalid finite space: {reason}"),
            Error::NotKolmogorov { x, y } => {
                write!(f, "points {x} and {y} have identical minimal neighbourhoods")
            }
            Error::NotAWitness { x, y } => {
                write!(f, "points {x} and {y} are separated by an open set")
            }
            Error::SizeLimit {
                what,
                requested,
                limit,
            } => write!(f, "{what} needs {requested}, above the limit {limit}"),
            Error::DomainMismatch => write!(f, "map domains/codomains do not match"),
            Error::NotARetract => write!(f, "maps do not compose to the identity"),
            Error::OracleFailure => write!(f, "fixed-point oracle produced no fixed point"),
            Error::VerificationFailure(v) => write!(f, "internal verification failed: {v}"),
            Error::OutOfDomain { what } => write!(f, "argument out of domain: {what}"),
            Error::NotAContraction { piece, slope } => {
                write!(f, "piece {piece} has slope {slope}, not a contraction")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
