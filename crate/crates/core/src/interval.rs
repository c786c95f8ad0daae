//! Exact piecewise-linear analysis on rational intervals.
//!
//! Everything here runs in exact big-rational arithmetic: the
//! sliding-band family on [0, 3] whose unique fixed point jumps from 2
//! to 1 as the parameter crosses 1 (so no continuous choice of fixed
//! points exists), the radial taper and retraction of a ball onto the
//! unit disk, and contraction fixed points with their stability bound.
//! The only non-exact step is the square root inside the retraction's
//! middle band, which is computed to 64 fractional bits with the error
//! bound reported next to the result; all case decisions compare
//! squared norms exactly.

use alloc::string::String;
use alloc::{vec, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Renders a rational as `numer/denom`, always with the denominator.
pub fn fmt_rat(r: &Rat) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

/// A finite union of disjoint closed intervals with rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalSet {
    intervals: Vec<(Rat, Rat)>,
}

impl IntervalSet {
    /// Normalises: sorts, merges overlapping and touching intervals.
    pub fn new(mut raw: Vec<(Rat, Rat)>) -> IntervalSet {
        raw.retain(|(a, b)| a <= b);
        raw.sort();
        let mut intervals: Vec<(Rat, Rat)> = Vec::new();
        for (a, b) in raw {
            match intervals.last_mut() {
                Some((_, hi)) if a <= *hi => {
                    if b > *hi {
                        *hi = b;
                    }
                }
                _ => intervals.push((a, b)),
            }
        }
        IntervalSet { intervals }
    }

    pub fn empty() -> IntervalSet {
        IntervalSet { intervals: Vec::new() }
    }

    pub fn point(x: Rat) -> IntervalSet {
        IntervalSet {
            intervals: vec![(x.clone(), x)],
        }
    }

    pub fn interval(a: Rat, b: Rat) -> IntervalSet {
        IntervalSet::new(vec![(a, b)])
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|(a, b)| a <= x && x <= b)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (k, (a, b)) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "[{}, {}]", fmt_rat(a), fmt_rat(b))?;
        }
        Ok(())
    }
}

/// A continuous piecewise-linear function: rational values at strictly
/// increasing rational breakpoints, linear in between, extended by
/// constants beyond the ends of its breakpoint range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseLinear {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

impl PiecewiseLinear {
    pub fn new(breakpoints: Vec<Rat>, values: Vec<Rat>) -> Result<PiecewiseLinear> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::OutOfDomain {
                what: "breakpoint/value tables must be nonempty and equal length",
            });
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfDomain {
                what: "breakpoints must be strictly increasing",
            });
        }
        Ok(PiecewiseLinear {
            breakpoints,
            values,
        })
    }

    /// The affine map `x -> slope * x + intercept` on [0, 1].
    pub fn affine(slope: &Rat, intercept: &Rat) -> PiecewiseLinear {
        PiecewiseLinear {
            breakpoints: vec![rat_int(0), rat_int(1)],
            values: vec![intercept.clone(), slope + intercept],
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let bp = &self.breakpoints;
        if *x <= bp[0] {
            return self.values[0].clone();
        }
        if *x >= bp[bp.len() - 1] {
            return self.values[bp.len() - 1].clone();
        }
        let i = bp.partition_point(|b| b <= x) - 1;
        let (a, b) = (&bp[i], &bp[i + 1]);
        let (va, vb) = (&self.values[i], &self.values[i + 1]);
        va + (vb - va) * (x - a) / (b - a)
    }

    pub fn max_abs_slope(&self) -> Rat {
        let mut best = Rat::zero();
        for i in 1..self.breakpoints.len() {
            let run = &self.breakpoints[i] - &self.breakpoints[i - 1];
            let rise = &self.values[i] - &self.values[i - 1];
            let slope = (rise / run).abs();
            if slope > best {
                best = slope;
            }
        }
        best
    }

    /// Exact sup distance: the difference is piecewise linear on the
    /// merged breakpoint grid, so the sup is attained at a breakpoint.
    pub fn sup_distance(&self, other: &PiecewiseLinear) -> Rat {
        let mut grid: Vec<Rat> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        grid.sort();
        grid.dedup();
        let mut best = Rat::zero();
        for x in &grid {
            let d = (self.eval(x) - other.eval(x)).abs();
            if d > best {
                best = d;
            }
        }
        best
    }
}

fn in_range(x: &Rat, lo: i64, hi: i64) -> bool {
    rat_int(lo) <= *x && *x <= rat_int(hi)
}

/// The sliding-band family on X = [0, 3] with parameter t in [0, 2]:
/// constant 1 up to t, then rising with slope one to 2 at t + 1,
/// constant 2 beyond.
pub fn sliding_family(t: &Rat, x: &Rat) -> Result<Rat> {
    if !in_range(t, 0, 2) {
        return Err(Error::OutOfDomain { what: "t not in [0, 2]" });
    }
    if !in_range(x, 0, 3) {
        return Err(Error::OutOfDomain { what: "x not in [0, 3]" });
    }
    let one = Rat::one();
    let lifted = x - t + &one;
    Ok(if lifted <= one {
        one
    } else if lifted >= rat_int(2) {
        rat_int(2)
    } else {
        lifted
    })
}

/// The breakpoint table of `x -> sliding_family(t, x)` on [0, 3].
pub fn sliding_family_pieces(t: &Rat) -> Result<PiecewiseLinear> {
    if !in_range(t, 0, 2) {
        return Err(Error::OutOfDomain { what: "t not in [0, 2]" });
    }
    let mut bps = vec![rat_int(0), t.clone(), t + rat_int(1), rat_int(3)];
    bps.sort();
    bps.dedup();
    let values = bps
        .iter()
        .map(|x| sliding_family(t, x))
        .collect::<Result<Vec<_>>>()?;
    PiecewiseLinear::new(bps, values)
}

/// Fixed points of one linear segment against the diagonal.
fn segment_fixed_points(a: &Rat, va: &Rat, b: &Rat, vb: &Rat) -> Option<(Rat, Rat)> {
    debug_assert!(a < b);
    let one = Rat::one();
    let slope = (vb - va) / (b - a);
    if slope == one {
        // Parallel to the diagonal: either the whole segment or nothing.
        return if va == a { Some((a.clone(), b.clone())) } else { None };
    }
    let cross = (va - &slope * a) / (&one - &slope);
    if a <= &cross && &cross <= b {
        Some((cross.clone(), cross))
    } else {
        None
    }
}

/// The exact fixed point set of the sliding-band slice at `t`, computed
/// geometrically piece by piece.
pub fn sliding_family_fixed_points(t: &Rat) -> Result<IntervalSet> {
    let pieces = sliding_family_pieces(t)?;
    let bps = pieces.breakpoints();
    let vals = pieces.values();
    let mut found = Vec::new();
    for i in 1..bps.len() {
        if let Some(seg) = segment_fixed_points(&bps[i - 1], &vals[i - 1], &bps[i], &vals[i]) {
            found.push(seg);
        }
    }
    Ok(IntervalSet::new(found))
}

/// Sample grid used by [`fixed_point_jump_certificate`]: sixteenths of
/// the parameter range plus two probes hugging the critical value.
pub fn certificate_grid() -> Vec<Rat> {
    let mut grid: Vec<Rat> = (0..=32).map(|k| rat(k, 16)).collect();
    grid.push(rat(99, 100));
    grid.push(rat(101, 100));
    grid.sort();
    grid.dedup();
    grid
}

/// Demonstrates that the sliding-band family has no continuous choice
/// of fixed points: below the critical parameter the unique fixed point
/// is 2, above it 1. Both values are recomputed from the geometric
/// fixed-point sets over [`certificate_grid`], and uniqueness away from
/// the critical parameter is asserted along the way.
pub fn fixed_point_jump_certificate() -> (Rat, Rat) {
    let one = rat_int(1);
    let left = rat_int(2);
    let right = rat_int(1);
    for t in certificate_grid() {
        let fps = sliding_family_fixed_points(&t).expect("grid lies in the domain");
        if t < one {
            assert_eq!(fps, IntervalSet::point(left.clone()));
        } else if t == one {
            assert_eq!(fps, IntervalSet::interval(rat_int(1), rat_int(2)));
        } else {
            assert_eq!(fps, IntervalSet::point(right.clone()));
        }
    }
    (left, right)
}

/// The radial taper on [0, 3]: identity up to 1, then falling to 0 at
/// 2, then 0.
pub fn radial_taper(t: &Rat) -> Result<Rat> {
    if !in_range(t, 0, 3) {
        return Err(Error::OutOfDomain { what: "t not in [0, 3]" });
    }
    Ok(if *t <= rat_int(1) {
        t.clone()
    } else if *t <= rat_int(2) {
        rat_int(2) - t
    } else {
        Rat::zero()
    })
}

/// Result of the radial retraction with its approximation bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadialPoint {
    pub coords: Vec<Rat>,
    /// Zero on the exact paths; otherwise a per-coordinate bound on the
    /// distance to the true image.
    pub error_bound: Rat,
}

impl RadialPoint {
    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }
}

fn exact_sqrt(r: &Rat) -> Option<Rat> {
    let (n, d) = (r.numer(), r.denom());
    if n.is_negative() {
        return None;
    }
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Smallest `m` with `(m / 2^64)^2 >= s`, for `s >= 0`.
fn sqrt_ceil_fixed(s: &Rat) -> BigInt {
    let scale = BigInt::one() << 128u32;
    let scaled = s.numer() * &scale / s.denom();
    let mut m = scaled.sqrt();
    while &(&m * &m) * s.denom() < s.numer() * &scale {
        m += 1;
    }
    m
}

/// Retracts points of the open ball of radius 3 onto the unit disk by
/// tapering the norm: identity inside the disk, zero from radius 2 out.
/// Points outside the chart (flagged by the caller) go to the origin.
///
/// Case decisions compare the squared norm exactly. In the middle band
/// the norm itself is usually irrational; it is then approximated from
/// above to 64 fractional bits, which keeps the image inside the unit
/// disk so the retraction stays exactly idempotent, and the per-
/// coordinate error bound is returned with the point.
pub fn radial_retraction(point: &[Rat], outside_chart: bool) -> Result<RadialPoint> {
    if point.is_empty() || point.len() > 3 {
        return Err(Error::OutOfDomain {
            what: "dimension must be 1, 2 or 3",
        });
    }
    let origin = || RadialPoint {
        coords: vec![Rat::zero(); point.len()],
        error_bound: Rat::zero(),
    };
    if outside_chart {
        return Ok(origin());
    }
    let norm_sq: Rat = point.iter().map(|c| c * c).sum();
    if norm_sq >= rat_int(9) {
        return Err(Error::OutOfDomain {
            what: "norm at least 3 without the outside-chart flag",
        });
    }
    if norm_sq <= rat_int(1) {
        return Ok(RadialPoint {
            coords: point.to_vec(),
            error_bound: Rat::zero(),
        });
    }
    if norm_sq >= rat_int(4) {
        return Ok(origin());
    }
    if let Some(norm) = exact_sqrt(&norm_sq) {
        let taper = rat_int(2) - norm;
        return Ok(RadialPoint {
            coords: point.iter().map(|c| c * &taper).collect(),
            error_bound: Rat::zero(),
        });
    }
    // Rounding the norm up makes the taper a slight underestimate, so
    // the image provably stays inside the unit disk.
    let m = sqrt_ceil_fixed(&norm_sq);
    let norm_upper = Rat::new(m, BigInt::one() << 64u32);
    let taper = rat_int(2) - norm_upper;
    debug_assert!(!taper.is_negative());
    let max_coord = point
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonempty point");
    Ok(RadialPoint {
        coords: point.iter().map(|c| c * &taper).collect(),
        error_bound: max_coord * Rat::new(BigInt::one(), BigInt::one() << 64u32),
    })
}

fn check_unit_contraction(f: &PiecewiseLinear, k: &Rat) -> Result<()> {
    if k.is_negative() || *k >= Rat::one() {
        return Err(Error::OutOfDomain {
            what: "contraction constant must lie in [0, 1)",
        });
    }
    for (i, b) in f.breakpoints().iter().enumerate() {
        if !in_range(b, 0, 1) || !in_range(&f.values()[i], 0, 1) {
            return Err(Error::OutOfDomain {
                what: "self-map of [0, 1] required",
            });
        }
    }
    for i in 1..f.breakpoints().len() {
        let run = &f.breakpoints()[i] - &f.breakpoints()[i - 1];
        let rise = &f.values()[i] - &f.values()[i - 1];
        let slope = (rise / run).abs();
        if slope > *k {
            return Err(Error::NotAContraction {
                piece: i - 1,
                slope,
            });
        }
    }
    Ok(())
}

/// Breakpoint grid of `f` padded to cover all of [0, 1] through the
/// constant extension.
fn unit_grid(f: &PiecewiseLinear) -> (Vec<Rat>, Vec<Rat>) {
    let mut bps = f.breakpoints().to_vec();
    let mut vals = f.values().to_vec();
    if bps[0] > Rat::zero() {
        bps.insert(0, Rat::zero());
        vals.insert(0, vals[0].clone());
    }
    let last = bps.len() - 1;
    if bps[last] < Rat::one() {
        bps.push(Rat::one());
        vals.push(vals[last].clone());
    }
    (bps, vals)
}

/// The unique fixed point of a K-contraction of [0, 1], solved exactly
/// on the piece whose segment crosses the diagonal.
pub fn contraction_fixed_point(f: &PiecewiseLinear, k: &Rat) -> Result<Rat> {
    check_unit_contraction(f, k)?;
    let (bps, vals) = unit_grid(f);
    for i in 1..bps.len() {
        if let Some((lo, hi)) = segment_fixed_points(&bps[i - 1], &vals[i - 1], &bps[i], &vals[i]) {
            debug_assert_eq!(lo, hi, "a contraction cannot contain the diagonal");
            return Ok(lo);
        }
    }
    unreachable!("a self-map of [0, 1] crosses the diagonal");
}

/// Exact stability data for two K-contractions: the distance of their
/// fixed points against `(1 - K)^-1` times their sup distance. The
/// returned pair always satisfies `lhs <= rhs`.
pub fn contraction_stability_gap(
    f: &PiecewiseLinear,
    g: &PiecewiseLinear,
    k: &Rat,
) -> Result<(Rat, Rat)> {
    let pf = contraction_fixed_point(f, k)?;
    let pg = contraction_fixed_point(g, k)?;
    let lhs = (pf - pg).abs();
    let rhs = f.sup_distance(g) / (Rat::one() - k);
    assert!(lhs <= rhs, "stability bound violated");
    Ok((lhs, rhs))
}
