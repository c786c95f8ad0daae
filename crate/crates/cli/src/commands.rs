//! The analyses behind each subcommand, separated from argument
//! handling so tests can drive them directly.

use std::sync::Arc;

use fixpoint_core::dismantle::{self, BeatKind};
use fixpoint_core::fpp::has_fpp;
use fixpoint_core::interval::{
    contraction_fixed_point, contraction_stability_gap, fixed_point_jump_certificate, rat_int,
    radial_retraction, sliding_family_fixed_points, PiecewiseLinear, Rat,
};
use fixpoint_core::mapspace::{count_maps, enumerate_maps};
use fixpoint_core::selection::{find_selection_map, SelectionOutcome};
use fixpoint_core::{Error as CoreError, Limits, Poset};
use num_traits::One;

use crate::format::CliError;
use crate::report::{
    BanachDemoReport, CheckReport, CoreCliReport, IntervalDemoReport, MapsReport,
    RetractReport, RetractionDemoReport, SelectionReport, UniversalStatus,
};

pub fn run_check(p: &Arc<Poset>, limits: &Limits) -> Result<CheckReport, CliError> {
    let started = std::time::Instant::now();
    let fpp = has_fpp(p, limits)?;
    let universal = if !fpp.holds {
        // A fixed-point-free self-map exists, so no selector can.
        UniversalStatus::Decided(false)
    } else {
        match find_selection_map(p, limits) {
            Ok((outcome, _)) => UniversalStatus::Decided(outcome.is_sat()),
            Err(CoreError::SizeLimit { requested, .. }) => UniversalStatus::Skipped(requested),
            Err(e) => return Err(e.into()),
        }
    };
    Ok(CheckReport {
        fpp: fpp.holds,
        witness: fpp.witness.map(|w| w.image().to_vec()),
        universal,
        nodes: fpp.stats.nodes,
        elapsed: started.elapsed(),
    })
}

pub fn run_selection(p: &Arc<Poset>, limits: &Limits) -> Result<SelectionReport, CliError> {
    let (outcome, stats) = find_selection_map(p, limits)?;
    Ok(match outcome {
        SelectionOutcome::Sat(sel) => SelectionReport {
            sat: true,
            choice: Some(sel.choice().to_vec()),
            nodes: stats.nodes,
        },
        SelectionOutcome::Unsat { .. } => SelectionReport {
            sat: false,
            choice: None,
            nodes: stats.nodes,
        },
    })
}

pub fn run_core(p: &Poset) -> CoreCliReport {
    let report = dismantle::core(p);
    CoreCliReport {
        removal_sequence: report
            .removal_sequence
            .iter()
            .map(|&(e, kind)| {
                (
                    e,
                    match kind {
                        BeatKind::Down => "down-beat",
                        BeatKind::Up => "up-beat",
                    },
                )
            })
            .collect(),
        core_covers: report.core.covers(),
        core_elements: report.core_elements,
        dismantlable: report.dismantlable,
        labels: p.labels().map(|l| l.to_vec()),
    }
}

pub fn run_maps(
    p: &Arc<Poset>,
    limits: &Limits,
    with_tables: bool,
) -> Result<MapsReport, CliError> {
    if with_tables {
        let ms = enumerate_maps(p, p, limits)?;
        let tables = (0..ms.count())
            .map(|k| ms.table(k).iter().map(|&v| v as usize).collect())
            .collect();
        Ok(MapsReport {
            count: ms.count(),
            tables: Some(tables),
        })
    } else {
        Ok(MapsReport {
            count: count_maps(p, p, limits)?,
            tables: None,
        })
    }
}

pub fn run_retract(
    y: &Arc<Poset>,
    x: &Arc<Poset>,
    limits: &Limits,
) -> Result<RetractReport, CliError> {
    Ok(match dismantle::find_retraction(y, x, limits)? {
        Some((s, r)) => RetractReport {
            found: true,
            section: Some(s.image().to_vec()),
            retraction: Some(r.image().to_vec()),
        },
        None => RetractReport {
            found: false,
            section: None,
            retraction: None,
        },
    })
}

pub fn run_demo_interval(t: Rat, with_certificate: bool) -> Result<IntervalDemoReport, CliError> {
    let fixed_points = sliding_family_fixed_points(&t)?;
    let certificate = with_certificate.then(fixed_point_jump_certificate);
    Ok(IntervalDemoReport {
        t,
        fixed_points,
        certificate,
    })
}

pub fn run_demo_retraction(
    coords: Vec<Rat>,
    outside: bool,
) -> Result<RetractionDemoReport, CliError> {
    let out = radial_retraction(&coords, outside)?;
    Ok(RetractionDemoReport {
        input: coords,
        image: out.coords,
        error_bound: out.error_bound,
    })
}

/// Runs the stability bound on the pair `f(x) = Kx`, `g(x) = Kx + ε`
/// with `ε = (1 - K)/2`, the pair on which the bound is tight.
pub fn run_demo_banach(k: Rat) -> Result<BanachDemoReport, CliError> {
    let epsilon = (Rat::one() - &k) / rat_int(2);
    let f = PiecewiseLinear::affine(&k, &rat_int(0));
    let g = PiecewiseLinear::affine(&k, &epsilon);
    let fixed_f = contraction_fixed_point(&f, &k)?;
    let fixed_g = contraction_fixed_point(&g, &k)?;
    let (lhs, rhs) = contraction_stability_gap(&f, &g, &k)?;
    Ok(BanachDemoReport {
        sup_distance: f.sup_distance(&g),
        k,
        epsilon,
        fixed_f,
        fixed_g,
        lhs,
        rhs,
    })
}
