//! Input formats: posets as JSON documents or plain cover lists, and
//! rationals as `numer/denom` strings.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use fixpoint_core::interval::Rat;
use fixpoint_core::{Error as CoreError, Poset};
use serde::Deserialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse { line: usize, message: String },
    Io(std::io::Error),
    Core(CoreError),
    Internal(String),
}

impl CliError {
    /// 0 is success and 2 a strict-mode "false"; errors start at 64.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Parse { .. } => 65,
            CliError::Core(CoreError::VerificationFailure(_)) => 70,
            CliError::Core(_) => 65,
            CliError::Io(_) => 66,
            CliError::Internal(_) => 70,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

/// A parsed poset with its optional display name.
#[derive(Clone, Debug)]
pub struct NamedPoset {
    pub name: Option<String>,
    pub poset: Arc<Poset>,
}

#[derive(Deserialize)]
struct PosetDocument {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

/// Parses either format, deciding by the first significant byte: `{`
/// starts the JSON document, anything else the plain cover list.
pub fn parse_poset_str(text: &str) -> Result<NamedPoset, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn load_poset(path: &Path) -> Result<NamedPoset, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_poset_str(&text)
}

fn parse_json(text: &str) -> Result<NamedPoset, CliError> {
    let doc: PosetDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in doc.elements.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(CliError::Parse {
                line: 0,
                message: format!("duplicate element {name:?}"),
            });
        }
    }
    let mut covers = Vec::with_capacity(doc.covers.len());
    for (lo, hi) in &doc.covers {
        let find = |name: &String| {
            index.get(name.as_str()).copied().ok_or_else(|| CliError::Parse {
                line: 0,
                message: format!("cover references unknown element {name:?}"),
            })
        };
        covers.push((find(lo)?, find(hi)?));
    }
    let poset = Poset::from_covers(doc.elements.len(), &covers)?
        .with_labels(doc.elements.clone())?;
    Ok(NamedPoset {
        name: doc.name,
        poset: Arc::new(poset),
    })
}

/// Plain format: the element count on the first significant line, then
/// one `lower upper` cover per line. Blank lines and `#` comments are
/// skipped.
fn parse_text(text: &str) -> Result<NamedPoset, CliError> {
    let mut n: Option<usize> = None;
    let mut covers = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        match n {
            None => {
                n = Some(line.parse().map_err(|_| CliError::Parse {
                    line: lineno,
                    message: format!("expected the element count, found {line:?}"),
                })?);
            }
            Some(_) => {
                let mut parts = line.split_whitespace();
                let (a, b) = (parts.next(), parts.next());
                match (a, b, parts.next()) {
                    (Some(a), Some(b), None) => {
                        let parse = |s: &str| {
                            s.parse::<usize>().map_err(|_| CliError::Parse {
                                line: lineno,
                                message: format!("expected an element index, found {s:?}"),
                            })
                        };
                        covers.push((parse(a)?, parse(b)?));
                    }
                    _ => {
                        return Err(CliError::Parse {
                            line: lineno,
                            message: "expected exactly two indices".into(),
                        })
                    }
                }
            }
        }
    }
    let n = n.ok_or(CliError::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    Ok(NamedPoset {
        name: None,
        poset: Arc::new(Poset::from_covers(n, &covers)?),
    })
}

/// Parses `numer/denom` (or a plain integer) into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s.trim()).map_err(|e| CliError::Usage(format!("bad rational {s:?}: {e}")))
}

/// Parses a comma-separated tuple of rationals.
pub fn parse_rat_tuple(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',').map(parse_rat).collect()
}
