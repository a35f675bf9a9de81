use std::io::Write;

use qbracket::bracket3::Engine;
use qbracket::search::{
    bucket_by_classical, bundled_extras, bundled_table, compute_record, conjecture_scan,
    convention_fingerprint, load_table, Cache, InvariantRecord, ScanOptions, TableError, Verdict,
};

fn scan_entries() -> Vec<qbracket::search::TableEntry> {
    let mut all = bundled_table();
    all.extend(bundled_extras());
    all
}

#[test]
fn load_table_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tsv");
    std::fs::write(&path, "3_1\tbraid:2:1,1,1\nbad\tbraid:2:5\n").unwrap();
    match load_table(&path) {
        Err(TableError::Lines(e)) => {
            assert_eq!(e.len(), 1);
            assert_eq!(e[0].line, 2);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        load_table(dir.path().join("missing")),
        Err(TableError::Io(_))
    ));
}

#[test]
fn mutants_share_a_bucket() {
    let recs: Vec<InvariantRecord> = bundled_extras()
        .iter()
        .filter(|e| e.name.starts_with("K11"))
        .map(|e| compute_record(e, Engine::Tl).unwrap())
        .collect();
    let b = bucket_by_classical(&recs);
    assert_eq!(b.len(), 1, "{b:?}");
}

#[test]
fn scan_is_deterministic_and_consistent() {
    let entries = scan_entries();
    let r1 = conjecture_scan(&entries, ScanOptions::default(), None).unwrap();
    let mut reversed = entries.clone();
    reversed.reverse();
    let r2 = conjecture_scan(&reversed, ScanOptions::default(), None).unwrap();
    assert_eq!(r1.to_json(), r2.to_json());
    assert_eq!(r1.to_csv(), r2.to_csv());
    assert!(r1.consistent());
    assert_eq!(r1.entries, entries.len());
    assert!(r1.comparisons > 0);
    for row in &r1.rows {
        assert_ne!(row.verdict, Verdict::EngineMismatch);
    }
    assert!(r1
        .to_csv()
        .starts_with("name1,name2,bucket,verdict,engines\n"));
}

#[test]
fn max_crossings_filter() {
    let opts = ScanOptions {
        max_crossings: Some(5),
        ..ScanOptions::default()
    };
    let r = conjecture_scan(&bundled_table(), opts, None).unwrap();
    // 0_1, 3_1, 4_1, 5_1, 5_2
    assert_eq!(r.entries, 5);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let entries: Vec<_> = bundled_table().into_iter().take(6).collect();

    let mut cache = Cache::open(&path).unwrap();
    assert!(cache.is_empty());
    let r1 = conjecture_scan(&entries, ScanOptions::default(), Some(&mut cache)).unwrap();
    assert_eq!(cache.len(), 6);

    let rec = compute_record(&entries[2], Engine::Tl).unwrap();
    let hit = cache
        .lookup(&rec.name, &rec.presentation, convention_fingerprint())
        .unwrap();
    assert_eq!(hit, &rec);
    assert!(cache.lookup(&rec.name, &rec.presentation, "0000").is_none());

    // corrupt line is skipped, the rest is still served
    {
        let mut f = std::fs::OpenOptions::new()
            .append(true)
            .open(&path)
            .unwrap();
        writeln!(f, "{{not json").unwrap();
    }
    let mut reopened = Cache::open(&path).unwrap();
    assert_eq!(reopened.len(), 6);
    assert_eq!(reopened.warnings().len(), 1);

    // partial cache: only the new entries get appended
    let more: Vec<_> = bundled_table().into_iter().take(8).collect();
    let before = std::fs::read_to_string(&path).unwrap().lines().count();
    let r2 = conjecture_scan(&more, ScanOptions::default(), Some(&mut reopened)).unwrap();
    let after = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(after - before, 2);
    assert_eq!(r2.entries, 8);
    assert_eq!(r1.fingerprint, r2.fingerprint);

    // cached and fresh scans produce the same report
    let fresh = conjecture_scan(&more, ScanOptions::default(), None).unwrap();
    assert_eq!(fresh.to_json(), r2.to_json());
}
