//! Verification harness: suites of numerical checks over the workspace
//! crates, deterministic JSON/CSV reports and the `regspec` command line.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod suites;

pub use config::{CorpusSelection, RunConfig, CONFIG_ENV};
pub use error::HarnessError;
pub use report::{emit_report, emit_reports, parse_reports, write_output, CheckRecord, Format, SuiteReport};
pub use run::{run_all, run_suite, AllRun, SummaryRow, DETERMINISM_PROBES};
pub use suites::SUITES;
