//! Line-oriented JSON cache of invariant records.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::InvariantRecord;
use crate::error::Result;

type Key = (String, String, String);

fn key_of(r: &InvariantRecord) -> Key {
    (
        r.name.clone(),
        r.presentation.clone(),
        r.fingerprint.clone(),
    )
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: HashMap<Key, InvariantRecord>,
    warnings: Vec<String>,
}

impl Cache {
    /// Reads `path` if it exists; unreadable lines are skipped with a
    /// warning.
    pub fn open(path: impl AsRef<Path>) -> Result<Cache> {
        let path = path.as_ref().to_path_buf();
        let mut records = HashMap::new();
        let mut warnings = Vec::new();
        if path.exists() {
            let f = std::fs::File::open(&path)?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<InvariantRecord>(&line) {
                    Ok(r) => {
                        records.insert(key_of(&r), r);
                    }
                    Err(e) => {
                        let w = format!(
                            "{}:{}: skipping corrupt cache line ({e})",
                            path.display(),
                            i + 1
                        );
                        log::warn!("{w}");
                        warnings.push(w);
                    }
                }
            }
        }
        Ok(Cache {
            path,
            records,
            warnings,
        })
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn lookup(
        &self,
        name: &str,
        presentation: &str,
        fingerprint: &str,
    ) -> Option<&InvariantRecord> {
        self.records.get(&(
            name.to_string(),
            presentation.to_string(),
            fingerprint.to_string(),
        ))
    }

    /// Appends one record to the file and the in-memory index.
    pub fn store(&mut self, r: &InvariantRecord) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(r).expect("record serializes");
        writeln!(f, "{line}")?;
        self.records.insert(key_of(r), r.clone());
        Ok(())
    }
}
