//! Library side of the `fixpoint` command-line tool: file parsing,
//! analysis reports, the catalog scanner and its cache. The binary in
//! `main.rs` is a thin argument-parsing shell over this.

pub mod cache;
pub mod commands;
pub mod format;
pub mod report;
pub mod scan;

pub use format::{load_poset, parse_poset_str, CliError, NamedPoset};
