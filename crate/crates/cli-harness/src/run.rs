use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{RunConfig, STRUCTURAL};
use crate::error::HarnessError;
use crate::report::{emit_report, CheckRecord, Format, SuiteReport};
use crate::suites::{cases, run_cases, SUITES};

/// Suites re-run by [`run_all`] to confirm byte-identical output.
pub const DETERMINISM_PROBES: [&str; 3] = ["charged-core", "torus-plancherel", "mellin-roundtrip"];

pub fn run_suite(name: &str, config: &RunConfig) -> Result<SuiteReport, HarnessError> {
    let list = cases(name, config).ok_or_else(|| HarnessError::UnknownSuite(name.to_string()))?;
    let checks = run_cases(name, list, config);
    Ok(SuiteReport::new(name, checks, config.echo()))
}

#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub suite: String,
    pub checks: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub wall_clock: Duration,
}

#[derive(Debug, Clone)]
pub struct AllRun {
    pub reports: Vec<SuiteReport>,
    pub summary: Vec<SummaryRow>,
    pub warnings: Vec<String>,
}

impl AllRun {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn total_checks(&self) -> usize {
        self.reports.iter().map(|r| r.checks.len()).sum()
    }

    pub fn summary_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<24} {:>7} {:>9} {:>14} {:>10}", "suite", "checks", "failures", "max deviation", "time (s)");
        for r in &self.summary {
            let _ = writeln!(
                s,
                "{:<24} {:>7} {:>9} {:>14.3e} {:>10.2}",
                r.suite,
                r.checks,
                r.failures,
                r.max_deviation,
                r.wall_clock.as_secs_f64()
            );
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "{}", if self.pass() { "all checks passed" } else { "FAILED" });
        s
    }
}

fn timed(name: &str, config: &RunConfig) -> Result<(SuiteReport, Duration), HarnessError> {
    let start = Instant::now();
    let r = run_suite(name, config)?;
    Ok((r, start.elapsed()))
}

/// Re-runs the probe suites and compares their serialized bytes with the
/// first run.
fn determinism_report(first: &[SuiteReport], config: &RunConfig) -> Result<SuiteReport, HarnessError> {
    let probes: Vec<&SuiteReport> = first
        .iter()
        .filter(|r| DETERMINISM_PROBES.contains(&r.suite.as_str()) && !r.checks.is_empty())
        .collect();
    let checks = probes
        .par_iter()
        .map(|r| -> Result<CheckRecord, HarnessError> {
            let again = run_suite(&r.suite, config)?;
            let mut mismatches = 0usize;
            for format in [Format::Json, Format::Csv] {
                if emit_report(r, format)? != emit_report(&again, format)? {
                    mismatches += 1;
                }
            }
            let id = format!("{}.rerun_bytes", r.suite);
            let inputs = format!("JSON and CSV of a second {} run with seed {}", r.suite, config.seed);
            let zero = Complex64::new(0.0, 0.0);
            Ok(CheckRecord::new(id, inputs, zero, Complex64::new(mismatches as f64, 0.0), mismatches as f64, STRUCTURAL))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new("determinism", checks, config.echo()))
}

/// Runs every suite concurrently, then the determinism probes.
pub fn run_all(config: &RunConfig) -> Result<AllRun, HarnessError> {
    let results = SUITES.par_iter().map(|name| timed(name, config)).collect::<Result<Vec<_>, _>>()?;
    let mut warnings = Vec::new();
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for (r, t) in results {
        summary.push(SummaryRow {
            suite: r.suite.clone(),
            checks: r.checks.len(),
            failures: r.failures().count(),
            max_deviation: r.max_deviation(),
            wall_clock: t,
        });
        reports.push(r);
    }
    let start = Instant::now();
    let det = determinism_report(&reports, config)?;
    summary.push(SummaryRow {
        suite: det.suite.clone(),
        checks: det.checks.len(),
        failures: det.failures().count(),
        max_deviation: det.max_deviation(),
        wall_clock: start.elapsed(),
    });
    reports.push(det);
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    if total == 0 {
        warnings.push("corpus selection is empty: no checks were run".to_string());
    }
    Ok(AllRun { reports, summary, warnings })
}
