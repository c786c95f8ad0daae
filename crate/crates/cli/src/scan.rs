//! The catalog scanner: classifies every isomorphism class up to a
//! size, in parallel, with deterministic output order and an optional
//! warm cache.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use fixpoint_core::catalog::catalog;
use fixpoint_core::dismantle;
use fixpoint_core::fpp::has_fpp;
use fixpoint_core::mapspace::count_maps;
use fixpoint_core::selection::find_selection_map;
use fixpoint_core::{Error as CoreError, Limits, Poset};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cache::Cache;
use crate::format::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SelectionStatus {
    Sat,
    Unsat,
    Skipped(usize),
}

impl fmt::Display for SelectionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionStatus::Sat => write!(f, "sat"),
            SelectionStatus::Unsat => write!(f, "unsat"),
            SelectionStatus::Skipped(size) => write!(f, "skipped({size})"),
        }
    }
}

impl FromStr for SelectionStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sat" => Ok(SelectionStatus::Sat),
            "unsat" => Ok(SelectionStatus::Unsat),
            other => parse_skipped(other)
                .map(SelectionStatus::Skipped)
                .ok_or_else(|| format!("bad selection status {other:?}")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountStatus {
    Count(usize),
    Skipped(usize),
}

impl fmt::Display for CountStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountStatus::Count(c) => write!(f, "{c}"),
            CountStatus::Skipped(size) => write!(f, "skipped({size})"),
        }
    }
}

impl FromStr for CountStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Ok(c) = s.parse::<usize>() {
            return Ok(CountStatus::Count(c));
        }
        parse_skipped(s)
            .map(CountStatus::Skipped)
            .ok_or_else(|| format!("bad count status {s:?}"))
    }
}

fn parse_skipped(s: &str) -> Option<usize> {
    s.strip_prefix("skipped(")?
        .strip_suffix(')')?
        .parse()
        .ok()
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let raw = String::deserialize(d)?;
                raw.parse().map_err(D::Error::custom)
            }
        }
    };
}

string_serde!(SelectionStatus);
string_serde!(CountStatus);

/// One classified isomorphism class.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScanRecord {
    /// Hex-encoded canonical form; the cache key.
    pub canonical: String,
    pub n: usize,
    pub connected: bool,
    pub fpp: bool,
    pub dismantlable: bool,
    pub selection: SelectionStatus,
    pub map_count: CountStatus,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub max_n: usize,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    /// (n, class count) per level.
    pub summary: Vec<(usize, usize)>,
}

pub fn classify(p: &Arc<Poset>, canonical: String, limits: &Limits) -> Result<ScanRecord, CoreError> {
    let connected = p.is_connected();
    let fpp = has_fpp(p, limits)?.holds;
    let dismantlable = dismantle::core(p).dismantlable;
    let map_count = match count_maps(p, p, limits) {
        Ok(c) => CountStatus::Count(c),
        Err(CoreError::SizeLimit { limit, .. }) => CountStatus::Skipped(limit),
        Err(e) => return Err(e),
    };
    let selection = if !fpp {
        // Some self-map has no fixed point at all, which already rules
        // out a selector; no enumeration needed.
        SelectionStatus::Unsat
    } else {
        match map_count {
            CountStatus::Count(c) if c <= limits.max_maps && c <= limits.max_order_matrix => {
                match find_selection_map(p, limits) {
                    Ok((outcome, _)) => {
                        if outcome.is_sat() {
                            SelectionStatus::Sat
                        } else {
                            SelectionStatus::Unsat
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
            CountStatus::Count(c) => SelectionStatus::Skipped(c),
            CountStatus::Skipped(size) => SelectionStatus::Skipped(size),
        }
    };
    let record = ScanRecord {
        canonical,
        n: p.n(),
        connected,
        fpp,
        dismantlable,
        selection,
        map_count,
    };
    Ok(record)
}

/// The implication lattice every record must satisfy; a breach is an
/// internal failure, not a property of the input.
pub fn consistency_violation(rec: &ScanRecord, p: &Poset) -> Option<String> {
    if rec.dismantlable && !rec.fpp {
        return Some("dismantlable but not a fixed point space".into());
    }
    if rec.selection == SelectionStatus::Sat && !rec.fpp {
        return Some("selector without the fixed point property".into());
    }
    if rec.fpp && !rec.connected {
        return Some("fixed point space that is not connected".into());
    }
    if (p.greatest().is_some() || p.least().is_some())
        && rec.selection == SelectionStatus::Unsat
    {
        return Some("extremum without a selector".into());
    }
    None
}

pub fn run_scan(opts: &ScanOptions, limits: &Limits) -> Result<ScanOutcome, CliError> {
    let mut cache = match &opts.cache_dir {
        Some(dir) => Some(Cache::open(dir)?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Internal(format!("worker pool: {e}")))?;

    let levels = catalog(opts.max_n, limits).map_err(CliError::Core)?;
    let mut records = Vec::new();
    let mut summary = Vec::new();
    for (idx, level) in levels.iter().enumerate() {
        let n = idx + 1;
        summary.push((n, level.len()));
        // Work units in catalog order; the parallel map preserves it,
        // so output order never depends on the number of workers.
        let work: Vec<(Arc<Poset>, String)> = level
            .iter()
            .map(|c| (Arc::new(c.poset.clone()), hex::encode(&c.canonical)))
            .collect();
        let classified: Vec<Result<ScanRecord, CoreError>> = pool.install(|| {
            work.par_iter()
                .map(|(p, key)| match cache.as_ref().and_then(|c| c.lookup(key)) {
                    Some(hit) => Ok(hit.clone()),
                    None => classify(p, key.clone(), limits),
                })
                .collect()
        });
        for ((p, key), result) in work.iter().zip(classified) {
            let record = result.map_err(CliError::Core)?;
            if let Some(reason) = consistency_violation(&record, p) {
                return Err(CliError::Internal(format!(
                    "consistency violation on {key}: {reason}"
                )));
            }
            if let Some(cache) = cache.as_mut() {
                if cache.lookup(key).is_none() {
                    cache.store(&record)?;
                }
            }
            records.push(record);
        }
    }
    Ok(ScanOutcome { records, summary })
}
