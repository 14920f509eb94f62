//! Scenario discovery and the parallel batch run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use nicerec_core::Limits;
use rayon::prelude::*;

use crate::certificate::CertificateFile;
use crate::exec::{execute, Context};
use crate::report::{Report, RunReport};
use crate::scenario::{load_scenario, LoadedScenario, SCHEMA_VERSION};
use crate::InputError;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    pub cap: Option<u64>,
    pub seed: u64,
    /// Directory receiving `<id>.cert.json` for scenarios that produce one.
    pub emit_certificate: Option<PathBuf>,
}

/// `*.json` files under the given paths (one level deep for directories),
/// sorted and deduplicated.
pub fn collect_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, InputError> {
    let mut out = Vec::new();
    for p in paths {
        let err = |e: std::io::Error| InputError {
            file: p.display().to_string(),
            message: e.to_string(),
        };
        if p.is_dir() {
            for entry in std::fs::read_dir(p).map_err(err)? {
                let path = entry.map_err(err)?.path();
                if path.is_file() && path.extension().is_some_and(|e| e == "json") {
                    out.push(path);
                }
            }
        } else if p.exists() {
            out.push(p.clone());
        } else {
            return Err(InputError {
                file: p.display().to_string(),
                message: "no such file or directory".into(),
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn load_all(paths: &[PathBuf]) -> Result<Vec<LoadedScenario>, InputError> {
    let files = collect_files(paths)?;
    let mut seen: BTreeMap<String, PathBuf> = BTreeMap::new();
    let mut out = Vec::new();
    for f in files {
        let sc = load_scenario(&f)?;
        if let Some(prev) = seen.insert(sc.scenario.id.clone(), f.clone()) {
            return Err(sc.error(format!("duplicate id {:?} (also in {})", sc.scenario.id, prev.display())));
        }
        out.push(sc);
    }
    Ok(out)
}

fn run_one(sc: &LoadedScenario, ctx: &Context, cert_dir: Option<&Path>) -> Result<Report, InputError> {
    let start = Instant::now();
    let outcome = execute(sc, ctx)?;
    let wall_time_ms = start.elapsed().as_millis() as u64;
    if let (Some(dir), Some(cert)) = (cert_dir, outcome.certificate) {
        write_certificate(dir, &sc.scenario.id, cert).map_err(|e| sc.error(e))?;
    }
    Ok(Report {
        id: sc.scenario.id.clone(),
        kind: sc.scenario.kind,
        file: sc.file_name(),
        holds: outcome.holds,
        result: outcome.result,
        wall_time_ms,
        lines: outcome.lines,
    })
}

fn write_certificate(dir: &Path, id: &str, certificate: crate::certificate::Certificate) -> Result<(), String> {
    let file = CertificateFile {
        schema_version: SCHEMA_VERSION,
        scenario: id.to_string(),
        certificate,
    };
    let path = dir.join(format!("{id}.cert.json"));
    let mut text = serde_json::to_string_pretty(&file).map_err(|e| e.to_string())?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| format!("writing {}: {e}", path.display()))
}

/// Loads and runs every scenario. An `Err` means exit code 2.
pub fn run(paths: &[PathBuf], opts: &RunOptions) -> Result<RunReport, InputError> {
    let scenarios = load_all(paths)?;
    let mut limits = Limits::default();
    if let Some(cap) = opts.cap {
        limits = limits.with_sweep_cap(cap);
    }
    let ctx = Context { limits, seed: opts.seed };
    if let Some(dir) = &opts.emit_certificate {
        std::fs::create_dir_all(dir).map_err(|e| InputError {
            file: dir.display().to_string(),
            message: e.to_string(),
        })?;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| InputError {
        file: "--jobs".into(),
        message: e.to_string(),
    })?;
    let dir = opts.emit_certificate.as_deref();
    let results: Vec<Result<Report, InputError>> =
        pool.install(|| scenarios.par_iter().map(|sc| run_one(sc, &ctx, dir)).collect());
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport::new(reports))
}

pub fn exit_code(report: &RunReport) -> i32 {
    if report.all_hold {
        0
    } else {
        1
    }
}
