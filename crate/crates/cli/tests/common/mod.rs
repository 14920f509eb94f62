#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

pub fn nicerec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nicerec"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Runs the corpus and returns the JSON report with wall times removed.
pub fn corpus_report(jobs: usize, dir: &std::path::Path) -> String {
    let out = dir.join(format!("report-{jobs}.json"));
    let o = nicerec(&[
        "run",
        corpus().to_str().unwrap(),
        "--jobs",
        &jobs.to_string(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    nicerec_cli::report::strip_wall_time(&mut v);
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}
