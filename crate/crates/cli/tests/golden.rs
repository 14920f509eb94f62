//! Set `UPDATE_GOLDEN=1` to regenerate the golden report.

mod common;

use std::path::PathBuf;

use common::corpus_report;

#[test]
fn corpus_report_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let actual = corpus_report(2, dir.path());
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/corpus.json");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&golden).expect("golden file; run with UPDATE_GOLDEN=1");
    assert!(actual == expected, "report differs from {}", golden.display());
}

#[test]
fn job_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(corpus_report(1, dir.path()), corpus_report(8, dir.path()));
}
