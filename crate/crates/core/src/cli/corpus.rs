//! Golden-file regression runner.
//!
//! Each `NAME.job.json` in a directory is run and its report (minus
//! `wall_time_ms`) is compared byte for byte with `NAME.expected.json`.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};
use similar::TextDiff;

use super::job::run_job_text;

pub const JOB_SUFFIX: &str = ".job.json";
pub const EXPECTED_SUFFIX: &str = ".expected.json";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Unified diff, expected first.
    Mismatch(String),
    MissingGolden,
    Blessed,
    /// The job or its golden could not be read or written.
    Io(String),
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub exit_code: i32,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusSummary {
    pub cases: Vec<CaseResult>,
}

impl CorpusSummary {
    pub fn failures(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Mismatch(_) | Outcome::MissingGolden | Outcome::Io(_)))
            .count()
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.outcome == Outcome::Pass).count()
    }

    pub fn to_value(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                let status = match &c.outcome {
                    Outcome::Pass => "pass",
                    Outcome::Mismatch(_) => "mismatch",
                    Outcome::MissingGolden => "missing_golden",
                    Outcome::Blessed => "blessed",
                    Outcome::Io(_) => "io_error",
                };
                json!({ "name": c.name, "status": status, "exit_code": c.exit_code })
            })
            .collect();
        json!({
            "total": self.cases.len(),
            "passed": self.passed(),
            "failed": self.failures(),
            "cases": cases,
        })
    }
}

/// Job files of a directory, sorted by name.
pub fn discover(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut jobs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.ends_with(JOB_SUFFIX))
        {
            jobs.push(path);
        }
    }
    jobs.sort();
    Ok(jobs)
}

fn case_name(job: &Path) -> String {
    let file = job.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    file.strip_suffix(JOB_SUFFIX).unwrap_or(file).to_string()
}

fn run_case(job: &Path, bless: bool) -> CaseResult {
    let name = case_name(job);
    let (exit_code, outcome) = match fs::read_to_string(job) {
        Ok(text) => {
            let report = run_job_text(&text, job.parent()).deterministic();
            let golden = job.with_file_name(format!("{name}{EXPECTED_SUFFIX}"));
            (report.exit_code, compare(&name, &golden, &report.to_pretty(), bless))
        }
        Err(e) => (1, Outcome::Io(format!("{}: {e}", job.display()))),
    };
    CaseResult {
        name,
        exit_code,
        outcome,
    }
}

fn compare(name: &str, golden: &Path, actual: &str, bless: bool) -> Outcome {
    if bless {
        return match fs::write(golden, actual) {
            Ok(()) => Outcome::Blessed,
            Err(e) => Outcome::Io(format!("{}: {e}", golden.display())),
        };
    }
    match fs::read_to_string(golden) {
        Ok(expected) if expected == actual => Outcome::Pass,
        Ok(expected) => Outcome::Mismatch(
            TextDiff::from_lines(&expected, actual)
                .unified_diff()
                .header(&format!("{name}{EXPECTED_SUFFIX}"), "actual")
                .to_string(),
        ),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Outcome::MissingGolden,
        Err(e) => Outcome::Io(format!("{}: {e}", golden.display())),
    }
}

/// Runs every job in `dir` on `threads` workers. With `bless` the goldens
/// are rewritten instead of compared.
pub fn run_corpus(dir: &Path, threads: usize, bless: bool) -> Result<CorpusSummary, String> {
    let jobs = discover(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let cases = pool.install(|| jobs.par_iter().map(|j| run_case(j, bless)).collect());
    Ok(CorpusSummary { cases })
}
