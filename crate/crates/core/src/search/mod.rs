//! Search over knot tables for pairs with equal classical bracket but
//! different three-variable ambient value.

mod cache;
mod table;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use cache::Cache;
pub use table::{
    bundled_braids, bundled_extras, bundled_table, load_table, parse_table, LineError, TableEntry,
    TableError, BUNDLED_BRAIDS, BUNDLED_EXTRAS, BUNDLED_KNOTS,
};

use crate::bracket3::{ambient3_from_raw, classical_from_raw, curl_factors, raw_bracket, Engine};
use crate::classical::{kauffman_bracket, normalize_by_writhe, Laurent};
use crate::error::Result;
use crate::quotient::{ideal, normal_form, specialize_classical};
use crate::statesum::DEFAULT_STATE_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub name: String,
    pub presentation: String,
    pub crossings: usize,
    pub writhe: i64,
    pub bracket: String,
    pub f_invariant: String,
    pub ambient3: String,
    pub engine: Engine,
    pub fingerprint: String,
}

/// Short digest of every convention a record depends on; changing any of
/// them invalidates cached records.
pub fn convention_fingerprint() -> &'static str {
    static FP: OnceLock<String> = OnceLock::new();
    FP.get_or_init(|| {
        let fi = ideal();
        let text = format!(
            "state-sum=unnormalized;A=(0,1)(2,3);B=(0,3)(1,2);f+={};f-={};basis={}|{}|{};order=lex-a-b-d",
            curl_factors().f_plus,
            curl_factors().f_minus,
            fi.q1,
            fi.q2,
            fi.q3
        );
        hex::encode(&Sha256::digest(text.as_bytes())[..8])
    })
}

pub fn compute_record(e: &TableEntry, engine: Engine) -> Result<InvariantRecord> {
    let raw = raw_bracket(&e.presentation, engine)?;
    let w = e.presentation.writhe();
    let bracket = classical_from_raw(&raw)?;
    Ok(InvariantRecord {
        name: e.name.clone(),
        presentation: e.presentation.to_string(),
        crossings: e.crossings,
        writhe: w,
        f_invariant: normalize_by_writhe(&bracket, w).to_string(),
        bracket: bracket.to_string(),
        ambient3: ambient3_from_raw(&raw, w).to_string(),
        engine,
        fingerprint: convention_fingerprint().to_string(),
    })
}

/// `specialize(NF(raw)) = circle · classical`, with the classical side from
/// the independent classical state sum. `None` when the entry is too large
/// for the classical state sum.
pub fn specialization_consistent(e: &TableEntry, engine: Engine) -> Result<Option<bool>> {
    let d = e.presentation.diagram();
    if d.crossing_count() > DEFAULT_STATE_CAP {
        return Ok(None);
    }
    let nf = normal_form(&raw_bracket(&e.presentation, engine)?);
    let lhs = specialize_classical(nf.representative());
    let rhs = &Laurent::loop_value() * &kauffman_bracket(&d)?;
    Ok(Some(lhs == rhs))
}

/// Groups record names by exact `f_invariant` text; names sorted within
/// each group.
pub fn bucket_by_classical(records: &[InvariantRecord]) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for r in records {
        out.entry(r.f_invariant.clone())
            .or_default()
            .push(r.name.clone());
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

pub fn bucket_digest(key: &str) -> String {
    hex::encode(&Sha256::digest(key.as_bytes())[..8])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "SAME")]
    Same,
    /// Reproduced by the second engine.
    #[serde(rename = "DIFFERENT")]
    Different,
    /// The second engine could not be run (size caps).
    #[serde(rename = "DIFFERENT-UNCONFIRMED")]
    Unconfirmed,
    /// The engines disagree: a bug, not a finding.
    #[serde(rename = "ENGINE-MISMATCH")]
    EngineMismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Same => "SAME",
            Verdict::Different => "DIFFERENT",
            Verdict::Unconfirmed => "DIFFERENT-UNCONFIRMED",
            Verdict::EngineMismatch => "ENGINE-MISMATCH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub name1: String,
    pub name2: String,
    pub bucket: String,
    pub verdict: Verdict,
    pub engines: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub fingerprint: String,
    pub engine: Engine,
    pub entries: usize,
    pub buckets: usize,
    pub comparisons: usize,
    pub witnesses: Vec<ScanRow>,
    pub specialization_checked: usize,
    pub specialization_failures: Vec<String>,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name1,name2,bucket,verdict,engines\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.name1,
                r.name2,
                r.bucket,
                r.verdict.as_str(),
                r.engines
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per comparison plus a summary header.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "entries {}  buckets {}  comparisons {}  witnesses {}  specialization {}/{} ok  fingerprint {}\n",
            self.entries,
            self.buckets,
            self.comparisons,
            self.witnesses.len(),
            self.specialization_checked - self.specialization_failures.len(),
            self.specialization_checked,
            self.fingerprint
        );
        s.push_str("name1\tname2\tbucket\tverdict\tengines\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.name1,
                r.name2,
                r.bucket,
                r.verdict.as_str(),
                r.engines
            ));
        }
        s
    }

    pub fn consistent(&self) -> bool {
        self.specialization_failures.is_empty()
            && self
                .rows
                .iter()
                .all(|r| r.verdict != Verdict::EngineMismatch)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub engine: Engine,
    pub max_crossings: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            engine: Engine::Tl,
            max_crossings: None,
        }
    }
}

/// Computes (or fetches) records, buckets them by classical invariant and
/// compares the ambient values pairwise inside each bucket.
pub fn conjecture_scan(
    entries: &[TableEntry],
    opts: ScanOptions,
    mut cache: Option<&mut Cache>,
) -> Result<ScanReport> {
    let mut selected: Vec<&TableEntry> = entries
        .iter()
        .filter(|e| opts.max_crossings.is_none_or(|m| e.crossings <= m))
        .collect();
    selected.sort_by(|a, b| a.name.cmp(&b.name));
    if let Some(w) = selected.windows(2).find(|w| w[0].name == w[1].name) {
        return Err(crate::error::Error::Inconsistent(format!(
            "duplicate table name '{}'",
            w[0].name
        )));
    }
    let fp = convention_fingerprint();

    let cached: Vec<Option<InvariantRecord>> = selected
        .iter()
        .map(|e| {
            cache
                .as_ref()
                .and_then(|c| c.lookup(&e.name, &e.presentation.to_string(), fp).cloned())
        })
        .collect();
    let computed: Vec<Result<InvariantRecord>> = selected
        .par_iter()
        .zip(cached.into_par_iter())
        .map(|(e, hit)| match hit {
            Some(r) => Ok(r),
            None => compute_record(e, opts.engine),
        })
        .collect();
    let mut records = Vec::with_capacity(computed.len());
    for (e, r) in selected.iter().zip(computed) {
        let r = r?;
        if let Some(c) = cache.as_deref_mut() {
            if c.lookup(&e.name, &r.presentation, fp).is_none() {
                c.store(&r)?;
            }
        }
        records.push(r);
    }

    let checks: Vec<(String, Option<bool>)> = selected
        .par_iter()
        .map(|e| Ok((e.name.clone(), specialization_consistent(e, opts.engine)?)))
        .collect::<Result<_>>()?;
    let specialization_checked = checks.iter().filter(|(_, c)| c.is_some()).count();
    let specialization_failures: Vec<String> = checks
        .into_iter()
        .filter(|(_, c)| *c == Some(false))
        .map(|(n, _)| n)
        .collect();

    let by_name: BTreeMap<&str, (&TableEntry, &InvariantRecord)> = selected
        .iter()
        .zip(&records)
        .map(|(e, r)| (e.name.as_str(), (*e, r)))
        .collect();
    let buckets = bucket_by_classical(&records);
    let mut rows = Vec::new();
    for (key, names) in &buckets {
        let digest = bucket_digest(key);
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let (e1, r1) = by_name[names[i].as_str()];
                let (e2, r2) = by_name[names[j].as_str()];
                let (verdict, engines) = if r1.ambient3 == r2.ambient3 {
                    (Verdict::Same, opts.engine.to_string())
                } else {
                    confirm(e1, e2, r1, r2, opts.engine.other())?
                };
                rows.push(ScanRow {
                    name1: names[i].clone(),
                    name2: names[j].clone(),
                    bucket: digest.clone(),
                    verdict,
                    engines,
                });
            }
        }
    }
    let witnesses: Vec<ScanRow> = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Different)
        .cloned()
        .collect();
    for w in &witnesses {
        log::warn!(
            "WITNESS CANDIDATE: {} and {} share the classical bracket but differ in the ambient value",
            w.name1,
            w.name2
        );
    }
    Ok(ScanReport {
        fingerprint: fp.to_string(),
        engine: opts.engine,
        entries: records.len(),
        buckets: buckets.len(),
        comparisons: rows.len(),
        witnesses,
        specialization_checked,
        specialization_failures,
        rows,
    })
}

/// Recomputes both ambient values with the second engine.
fn confirm(
    e1: &TableEntry,
    e2: &TableEntry,
    r1: &InvariantRecord,
    r2: &InvariantRecord,
    second: Engine,
) -> Result<(Verdict, String)> {
    let engines = format!("{}+{}", r1.engine, second);
    let again = |e: &TableEntry| match compute_record(e, second) {
        Ok(r) => Ok(Some(r.ambient3)),
        Err(crate::error::Error::Capacity { .. }) => Ok(None),
        Err(x) => Err(x),
    };
    match (again(e1)?, again(e2)?) {
        (Some(a1), Some(a2)) => {
            if a1 == r1.ambient3 && a2 == r2.ambient3 {
                Ok((Verdict::Different, engines))
            } else {
                Ok((Verdict::EngineMismatch, engines))
            }
        }
        _ => Ok((Verdict::Unconfirmed, r1.engine.to_string())),
    }
}
