use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::diagram::Presentation;

pub const BUNDLED_KNOTS: &str = include_str!("../../data/knots_le9.tsv");
pub const BUNDLED_BRAIDS: &str = include_str!("../../data/braids_le9.tsv");
pub const BUNDLED_EXTRAS: &str = include_str!("../../data/extras.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    pub presentation: Presentation,
    /// Crossings in the given presentation.
    pub crossings: usize,
}

impl TableEntry {
    pub fn new(name: impl Into<String>, presentation: Presentation) -> Self {
        TableEntry {
            name: name.into(),
            crossings: presentation.crossing_count(),
            presentation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read table: {0}")]
    Io(#[from] std::io::Error),
    #[error("{} bad line(s); first: {}", .0.len(), .0[0])]
    Lines(Vec<LineError>),
}

/// Parses `name<TAB>presentation` lines; blank lines and `#` comments are
/// skipped. Every bad line is reported, not just the first.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, TableError> {
    let mut entries: Vec<TableEntry> = Vec::new();
    let mut errors = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim_end_matches('\r');
        if t.trim().is_empty() || t.trim_start().starts_with('#') {
            continue;
        }
        let Some((name, pres)) = t.split_once('\t') else {
            errors.push(LineError {
                line,
                message: "expected name<TAB>presentation".into(),
            });
            continue;
        };
        let name = name.trim();
        if name.is_empty() {
            errors.push(LineError {
                line,
                message: "empty name".into(),
            });
            continue;
        }
        match Presentation::parse(pres) {
            Ok(p) => {
                if let Some(first) = seen.insert(name.to_string(), line) {
                    errors.push(LineError {
                        line,
                        message: format!("duplicate name '{name}' (first on line {first})"),
                    });
                } else {
                    entries.push(TableEntry::new(name, p));
                }
            }
            Err(e) => errors.push(LineError {
                line,
                message: e.to_string(),
            }),
        }
    }
    if errors.is_empty() {
        Ok(entries)
    } else {
        Err(TableError::Lines(errors))
    }
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<TableEntry>, TableError> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// Knots up to nine crossings as PD codes (plus the unknot).
pub fn bundled_table() -> Vec<TableEntry> {
    parse_table(BUNDLED_KNOTS).expect("bundled table parses")
}

/// The same knots as braid words.
pub fn bundled_braids() -> Vec<TableEntry> {
    parse_table(BUNDLED_BRAIDS).expect("bundled table parses")
}

/// Extra presentations: a mutant pair, 5_1 with its classical-bracket twin,
/// a twelve-crossing knot and alternative trefoil/figure-eight words.
pub fn bundled_extras() -> Vec<TableEntry> {
    parse_table(BUNDLED_EXTRAS).expect("bundled table parses")
}
