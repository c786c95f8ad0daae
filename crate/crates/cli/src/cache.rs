//! Append-only JSON-lines cache for scan records, keyed by canonical
//! form.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::format::CliError;
use crate::scan::ScanRecord;

pub const CACHE_FILE: &str = "scan-cache.jsonl";
pub const CACHE_ENV: &str = "FIXPOINT_CACHE";

/// The `--cache` flag wins; otherwise the environment override.
pub fn resolve_cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, ScanRecord>,
}

impl Cache {
    /// Loads the store, creating the directory if needed. Corrupted
    /// lines are skipped with a warning on stderr.
    pub fn open(dir: &Path) -> Result<Cache, CliError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(CACHE_FILE);
        let mut entries = HashMap::new();
        if path.exists() {
            for (lineno, line) in fs::read_to_string(&path)?.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<ScanRecord>(line) {
                    Ok(rec) => {
                        entries.insert(rec.canonical.clone(), rec);
                    }
                    Err(e) => {
                        eprintln!(
                            "warning: skipping corrupted cache line {} in {}: {e}",
                            lineno + 1,
                            path.display()
                        );
                    }
                }
            }
        }
        Ok(Cache { path, entries })
    }

    pub fn lookup(&self, canonical: &str) -> Option<&ScanRecord> {
        self.entries.get(canonical)
    }

    pub fn store(&mut self, record: &ScanRecord) -> Result<(), CliError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{}", serde_json::to_string(record)?)?;
        self.entries
            .insert(record.canonical.clone(), record.clone());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(format!("json encoding failed: {e}"))
    }
}
